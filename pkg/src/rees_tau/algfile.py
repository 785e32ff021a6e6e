"""Reader and writer for algebra description files.

Format (UTF-8, one directive per line, ``#`` starts a comment)::

    field F3            # or: field Q
    vars x,y,z
    z-var z             # optional: the distinguished variable
    gen 2 z^2 + x*z + x^2
    gen 1 x

``field`` and ``vars`` must come before the first ``gen``.  Each ``gen``
line is a positive integer weight followed by a polynomial in the
declared variables.  Zero generators are dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .parser import PolySyntaxError, parse_poly
from .polyring import FieldSpec, Ring, format_poly
from .rees import ReesAlgebra, WeightedElem


class AlgFileError(ValueError):
    def __init__(self, msg: str, line: int, source: str = "<text>"):
        super().__init__(f"{source}:{line}: {msg}")
        self.line = line


@dataclass(frozen=True)
class AlgFile:
    algebra: ReesAlgebra
    source: str


_FIELD = re.compile(r"(?:Q|F(\d+))\Z")


def parse_field(text: str) -> FieldSpec:
    m = _FIELD.match(text.strip())
    if not m:
        raise ValueError(f"field must be Q or F<p>, got {text.strip()!r}")
    return FieldSpec(int(m.group(1))) if m.group(1) else FieldSpec(0)


def parse_alg(text: str, source: str = "<text>") -> AlgFile:
    fld = None
    names = None
    zname = None
    ring = None
    gens: list[WeightedElem] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "field":
                if fld is not None:
                    raise ValueError("field declared twice")
                fld = parse_field(rest)
            elif key == "vars":
                if names is not None:
                    raise ValueError("vars declared twice")
                names = tuple(v.strip() for v in rest.split(","))
                if not rest or any(not v for v in names):
                    raise ValueError("empty variable name")
            elif key == "z-var":
                if zname is not None:
                    raise ValueError("z-var declared twice")
                zname = rest
            elif key == "gen":
                if fld is None or names is None:
                    raise ValueError("gen before field and vars")
                if ring is None:
                    ring = Ring(fld, names)
                    if zname is not None:
                        ring = ring.with_z(zname)
                w, _, poly = rest.partition(" ")
                if not w.isdigit() or int(w) < 1:
                    raise ValueError(f"weight must be a positive integer, got {w!r}")
                f = parse_poly(poly, ring)
                if not f.is_zero():
                    gens.append(WeightedElem(f, int(w)))
            else:
                raise ValueError(f"unknown directive {key!r}")
        except (PolySyntaxError, ValueError, KeyError) as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
            raise AlgFileError(msg, lineno, source) from None
    if fld is None:
        raise AlgFileError("missing field line", 0, source)
    if names is None:
        raise AlgFileError("missing vars line", 0, source)
    if ring is None:
        try:
            ring = Ring(fld, names)
            if zname is not None:
                ring = ring.with_z(zname)
        except (ValueError, KeyError) as exc:
            raise AlgFileError(str(exc), 0, source) from None
    return AlgFile(ReesAlgebra(ring, tuple(gens)), source)


def load_alg(path: str | Path) -> AlgFile:
    p = Path(path)
    return parse_alg(p.read_text(encoding="utf-8"), str(p))


def dump_alg(g: ReesAlgebra) -> str:
    R = g.ring
    lines = [f"field {R.field.name}", "vars " + ",".join(R.vars)]
    if R.z_var is not None:
        lines.append(f"z-var {R.z_var}")
    lines += [f"gen {x.n} {format_poly(x.f)}" for x in g.gens]
    return "\n".join(lines) + "\n"
