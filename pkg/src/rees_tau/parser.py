"""Recursive-descent parser for polynomial text.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Division is only allowed by a nonzero constant, so that printed rational
coefficients such as ``3/2*x`` read back.  Implicit multiplication
(``2x``, ``x y``) is a syntax error.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polyring import MultiPoly, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start, text)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {want}, got {got}", tok[2], self.text)
        self.i += 1
        return tok

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolySyntaxError("division only by a nonzero constant", pos, self.text)
                c = rhs.coefficient((0,) * self.ring.ngens)
                acc = acc.scale(self.ring.field.inv(c))
        if self.peek()[0] in ("int", "name", "("):
            raise PolySyntaxError("implicit multiplication is not allowed", self.peek()[2], self.text)
        return acc

    def unary(self) -> MultiPoly:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            tok = self.peek()
            if tok[0] != "int":
                raise PolySyntaxError("exponent must be a nonnegative integer", tok[2], self.text)
            self.take()
            base = base ** int(tok[1])
            if self.peek()[0] == "^":
                raise PolySyntaxError("chained exponents need parentheses", self.peek()[2], self.text)
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(Fraction(int(val)))
        if kind == "name":
            self.take()
            if val not in self.ring.vars:
                raise PolySyntaxError(f"unknown variable {val!r}", pos, self.text)
            return self.ring.gen(val)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        got = "end of input" if kind == "end" else repr(val)
        raise PolySyntaxError(f"unexpected {got}", pos, self.text)


def parse_poly(text: str, ring: Ring) -> MultiPoly:
    p = _Parser(text, ring)
    out = p.expr()
    p.take("end")
    return out
