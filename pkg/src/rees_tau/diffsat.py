"""Absolute and Z-relative differential saturation.

A single pass suffices: for a generator ``f W^n`` the algebra generated by
all ``Delta^a(f) W^{n-|a|}`` with ``|a| < n`` is already closed, since
``Delta^b Delta^a = C(a+b, a) Delta^{a+b}``.
"""

from __future__ import annotations

import logging

from .polyring import hasse_derivative, multi_indices
from .rees import ReesAlgebra, WeightedElem, graded_piece, ideal_contains_truncated

log = logging.getLogger(__name__)


def _z_index(g: ReesAlgebra, z: str | None) -> int:
    if z is not None:
        return g.ring.index(z)
    if g.ring.z_index is None:
        raise ValueError("no distinguished variable declared")
    return g.ring.z_index


def derivative_indices(d: int, k: int, z: int | None = None) -> list[tuple[int, ...]]:
    """Multi-indices of order ``k``; only powers of the ``z`` direction when given."""
    if z is None:
        return multi_indices(d, k)
    a = [0] * d
    a[z] = k
    return [tuple(a)]


def _saturate(g: ReesAlgebra, z: int | None, flag: str) -> ReesAlgebra:
    d = g.ring.ngens
    gens = list(g.gens)
    # skip scalar multiples of an existing generator of the same weight
    keys = {(x.f.monic(), x.n) for x in gens}
    for x in g.gens:
        for k in range(1, x.n):
            for a in derivative_indices(d, k, z):
                h = hasse_derivative(x.f, a)
                if h.is_zero():
                    continue
                key = (h.monic(), x.n - k)
                if key in keys:
                    continue
                keys.add(key)
                gens.append(WeightedElem(h, x.n - k))
    return ReesAlgebra(g.ring, tuple(gens), flag)


def diff_saturate(g: ReesAlgebra) -> ReesAlgebra:
    """Add ``Delta^a(f_i) W^{n_i-|a|}`` for ``1 <= |a| <= n_i - 1``."""
    return _saturate(g, None, "absolute")


def rel_diff_saturate(g: ReesAlgebra, z: str | None = None) -> ReesAlgebra:
    """Saturate only along the fibre direction Z."""
    out = _saturate(g, _z_index(g, z), "relative")
    if g.saturation == "absolute":
        return ReesAlgebra(out.ring, out.gens, "absolute")
    return out


def is_diff_closed(g: ReesAlgebra, mode: str = "absolute", degree_bound: int = 8) -> bool:
    """Bounded check that every ``Delta^a(f_i)`` lies in ``I_{n_i-|a|}``.

    Never reports True wrongly; may report False when a membership
    certificate needs multipliers above ``degree_bound``.
    """
    if mode not in ("absolute", "relative"):
        raise ValueError(f"bad mode {mode!r}")
    z = _z_index(g, None) if mode == "relative" else None
    d = g.ring.ngens
    pieces: dict[int, list] = {}
    for x in g.gens:
        for k in range(1, x.n):
            w = x.n - k
            for a in derivative_indices(d, k, z):
                h = hasse_derivative(x.f, a)
                if h.is_zero():
                    continue
                if w not in pieces:
                    pieces[w] = list(graded_piece(g, w).gens)
                if not ideal_contains_truncated(pieces[w], h, degree_bound):
                    log.info("Delta^%s(%s) not certified in I_%d below degree %d", a, x.f, w, degree_bound)
                    return False
    return True
