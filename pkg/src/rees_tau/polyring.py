"""Sparse multivariate polynomials over Q and prime fields F_p.

A polynomial is a map from exponent tuples to nonzero field elements.
Elements of Q are ``Fraction``; elements of F_p are ints in ``[0, p)``.
Values are never mutated after construction.

Hasse-Schmidt derivatives are the divided-power operators: ``hasse(f, a)``
is the coefficient of ``T^a`` in ``f(x + T)``, which in characteristic p
differs from ``|a|``-fold ordinary differentiation divided by ``a!``
(the latter is not even defined there).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

DEGREE_CAP = 2**31 - 1
INFINITY = math.inf

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p < 0:
            raise ValueError("characteristic must be 0 or a prime")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p > 0

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.p else "Q"

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int or Fraction into the field."""
        if self.p:
            if isinstance(x, Fraction):
                den = x.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"denominator {x.denominator} vanishes in {self.name}")
                return x.numerator * pow(den, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def elements(self) -> range:
        if not self.p:
            raise ValueError("Q has no finite element list")
        return range(self.p)

    def format(self, c) -> str:
        if self.p:
            return str(c)
        c = Fraction(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def binomial(self, n: int, k: int):
        """``C(n, k)`` reduced into the field (Lucas' theorem mod p)."""
        if k < 0 or k > n:
            return self.zero
        if not self.p:
            return Fraction(math.comb(n, k))
        p = self.p
        out = 1
        while n or k:
            ni, ki = n % p, k % p
            if ki > ni:
                return 0
            out = out * math.comb(ni, ki) % p
            n //= p
            k //= p
        return out


@dataclass(frozen=True)
class Ring:
    """Polynomial ring ``field[vars]`` with an optional distinguished variable Z."""

    field: FieldSpec
    vars: tuple[str, ...]
    z_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for v in self.vars:
            if not _NAME.match(v):
                raise ValueError(f"bad variable name {v!r}")
        if self.z_index is not None and not 0 <= self.z_index < len(self.vars):
            raise ValueError(f"z_index {self.z_index} out of range")

    @property
    def ngens(self) -> int:
        return len(self.vars)

    @property
    def z_var(self) -> str | None:
        return None if self.z_index is None else self.vars[self.z_index]

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def with_z(self, name: str | None) -> "Ring":
        return Ring(self.field, self.vars, None if name is None else self.index(name))

    def base_ring(self) -> "Ring":
        """The ring S with Z forgotten (the target of the projection)."""
        if self.z_index is None:
            raise ValueError("ring has no distinguished variable")
        return Ring(self.field, self.vars[: self.z_index] + self.vars[self.z_index + 1 :])

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.ngens: c})

    def gen(self, name: str | int) -> "MultiPoly":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.ngens
        e[i] = 1
        return MultiPoly(self, {tuple(e): 1})

    def gens(self) -> list["MultiPoly"]:
        return [self.gen(i) for i in range(self.ngens)]

    def monomial(self, exp: Sequence[int], c=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exp): c})

    def parse(self, text: str) -> "MultiPoly":
        from .parser import parse_poly

        return parse_poly(text, self)

    def __str__(self) -> str:
        z = f", Z={self.z_var}" if self.z_index is not None else ""
        return f"{self.field.name}[{','.join(self.vars)}]{z}"


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree ``degree``, in descending lex order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomials_up_to(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(degree + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


multi_indices = monomials_of_degree


def glex_key(exp: tuple[int, ...]):
    """Sort key putting larger monomials (graded lex) first."""
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """An immutable polynomial in canonical sparse form."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: Ring, terms: Mapping | Iterable = ()):
        field = ring.field
        n = ring.ngens
        t: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has wrong length for {ring}")
            for k in e:
                if k < 0 or k > DEGREE_CAP:
                    raise ValueError(f"exponent {k} outside [0, {DEGREE_CAP}]")
            c = field(c) + t.get(e, field.zero)
            c = field.norm(c)
            if c:
                t[e] = c
            else:
                t.pop(e, None)
        self.ring = ring
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, t: dict) -> "MultiPoly":
        # trusted constructor: t already canonical
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._t = t
        obj._hash = None
        return obj

    # -- basic protocol -------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._t.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self.ring}, {self})"

    def __str__(self) -> str:
        return format_poly(self)

    def __len__(self) -> int:
        return len(self._t)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.ring.field.norm
        t = dict(self._t)
        for e, c in other._t.items():
            v = norm(t.get(e, 0) + c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return MultiPoly._raw(self.ring, {e: norm(-c) for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        norm = self.ring.field.norm
        t: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.ring, {e: v for e, c in t.items() if (v := norm(c))})

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return MultiPoly._raw(self.ring, {e: f.norm(v * c) for e, v in self._t.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self) -> "MultiPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self._t:
            return self
        return self.scale(self.ring.field.inv(self._t[self.leading_exponent()]))

    # -- structure --------------------------------------------------------
    def exponents(self) -> list[tuple[int, ...]]:
        return sorted(self._t, key=glex_key)

    def leading_exponent(self) -> tuple[int, ...]:
        return min(self._t, key=glex_key)

    def coefficient(self, exp: Sequence[int]):
        return self._t.get(tuple(exp), self.ring.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._t), default=-1)

    def order(self):
        """Order at the origin: the least total degree, INFINITY for zero."""
        return min((sum(e) for e in self._t), default=INFINITY)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._t}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._t)

    def homogeneous_part(self, n: int) -> "MultiPoly":
        return MultiPoly._raw(self.ring, {e: c for e, c in self._t.items() if sum(e) == n})

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._t), default=-1)

    def involves(self, i: int) -> bool:
        return any(e[i] for e in self._t)

    def evaluate(self, point: Sequence):
        f = self.ring.field
        pt = [f(c) for c in point]
        if len(pt) != self.ring.ngens:
            raise ValueError("point has wrong dimension")
        total = f.zero
        for e, c in self._t.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total = f.norm(total + v)
        return total

    def coefficients_in(self, i: int, target: Ring) -> list["MultiPoly"]:
        """Coefficients of ``f`` as a polynomial in variable ``i``, lowest power first.

        The coefficients live in ``target``, which must be this ring with
        variable ``i`` removed.
        """
        out: dict[int, dict] = {}
        for e, c in self._t.items():
            out.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        deg = max(out, default=-1)
        return [MultiPoly._raw(target, out.get(k, {})) for k in range(deg + 1)]


# -- operations ---------------------------------------------------------------


def order_at_origin(f: MultiPoly):
    return f.order()


def initial_form(f: MultiPoly, n: int) -> MultiPoly:
    """Degree-``n`` part of ``f``; zero when the order of ``f`` exceeds ``n``.

    Raises ValueError when ``ord(f) < n``: then ``f W^n`` would violate the
    weight contract at the origin.
    """
    if f.order() < n:
        raise ValueError(f"order {f.order()} of {f} is below the weight {n}")
    return f.homogeneous_part(n)


def hasse_derivative(f: MultiPoly, alpha: Sequence[int]) -> MultiPoly:
    """Coefficient of ``T^alpha`` in ``f(x + T)``."""
    alpha = tuple(alpha)
    if len(alpha) != f.ring.ngens:
        raise ValueError("multi-index has wrong length")
    field = f.ring.field
    if not any(alpha):
        return f
    t: dict = {}
    for e, c in f._t.items():
        if any(a > k for a, k in zip(alpha, e)):
            continue
        b = c
        for k, a in zip(e, alpha):
            if a:
                b = field.norm(b * field.binomial(k, a))
                if not b:
                    break
        if b:
            t[tuple(k - a for k, a in zip(e, alpha))] = b
    return MultiPoly._raw(f.ring, t)


def hasse_in(f: MultiPoly, i: int, e: int) -> MultiPoly:
    """``Delta^(e)`` along variable ``i`` only."""
    alpha = [0] * f.ring.ngens
    alpha[i] = e
    return hasse_derivative(f, alpha)


def substitute(f: MultiPoly, mapping: Mapping[str, MultiPoly], target: Ring | None = None) -> MultiPoly:
    """Replace variables of ``f`` by polynomials of ``target``.

    Variables not in ``mapping`` are sent to the variable of the same name
    in ``target``; it is an error if there is none.
    """
    if target is None:
        rings = {g.ring for g in mapping.values()}
        target = rings.pop() if len(rings) == 1 else f.ring
    if target.field != f.ring.field:
        raise ValueError("substitution across different coefficient fields")
    images = []
    for v in f.ring.vars:
        if v in mapping:
            img = mapping[v]
            if img.ring != target:
                raise ValueError(f"image of {v} lives in {img.ring}, not {target}")
        else:
            if v not in target.vars:
                raise ValueError(f"variable {v} has no image in {target}")
            img = target.gen(v)
        images.append(img)
    unknown = set(mapping) - set(f.ring.vars)
    if unknown:
        raise KeyError(f"unknown variables in substitution: {sorted(unknown)}")
    powers: list[dict[int, MultiPoly]] = [{0: target.one()} for _ in images]

    def power(i: int, k: int) -> MultiPoly:
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i] if k - 1 in cache else images[i] ** k
        return cache[k]

    result = target.zero()
    for e, c in f._t.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def translate(f: MultiPoly, point: Sequence) -> MultiPoly:
    """``f(x + point)``: moves ``point`` to the origin."""
    if len(point) != f.ring.ngens:
        raise ValueError("point has wrong dimension")
    R = f.ring
    mapping = {v: R.gen(v) + R.const(c) for v, c in zip(R.vars, point) if R.field(c)}
    return substitute(f, mapping, R) if mapping else f


def frobenius_root(g: MultiPoly, e: int) -> MultiPoly:
    """The linear form ``l`` with ``l^(p^e) == g`` for an additive form ``g``."""
    R = g.ring
    p = R.field.p
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e > 0 and not p:
        raise ValueError("Frobenius roots with e > 0 need positive characteristic")
    q = p**e if e else 1
    t = {}
    for exp, c in g._t.items():
        nz = [i for i, k in enumerate(exp) if k]
        if len(nz) != 1 or exp[nz[0]] != q:
            raise ValueError(f"{g} is not additive of degree {q}")
        u = [0] * R.ngens
        u[nz[0]] = 1
        # every element of F_p is its own p-th root
        t[tuple(u)] = c
    ell = MultiPoly._raw(R, t)
    if ell**q != g:
        raise ValueError(f"{g} is not the {q}-th power of a linear form")
    return ell


# -- printing -----------------------------------------------------------------


def _format_monomial(vars: Sequence[str], e: Sequence[int]) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(f: MultiPoly) -> str:
    """Deterministic text form: graded-lex descending terms."""
    if not f._t:
        return "0"
    field = f.ring.field
    out = []
    for i, e in enumerate(f.exponents()):
        c = f._t[e]
        neg = False
        if not field.p and c < 0:
            neg, c = True, -c
        mono = _format_monomial(f.ring.vars, e)
        cs = field.format(c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def iter_points(field: FieldSpec, d: int) -> Iterator[tuple[int, ...]]:
    """All points of ``F_p^d`` in lexicographic order."""
    return itertools.product(field.elements(), repeat=d)
