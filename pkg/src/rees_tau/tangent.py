"""Tangent cones, ridges and the tau-invariant at a rational point.

The ridge of a diff-closed homogeneous ideal is read off degree by degree:
for each ``q = p^e`` the degree-``q`` slice of the ideal is intersected
with the span of ``X_1^q, ..., X_d^q``; every additive form found there is
``l^q`` for a linear form ``l``.  tau is the rank of all such ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import Echelon, nullspace
from .polyring import MultiPoly, Ring, frobenius_root, hasse_derivative, monomials_of_degree, multi_indices
from .rees import MonomialIndex, PreconditionError, ReesAlgebra, degree_slice, sort_polys


@dataclass(frozen=True)
class HomIdeal:
    ring: Ring
    gens: tuple[MultiPoly, ...] = ()
    diff_closed: bool = False

    def __post_init__(self):
        gens = []
        for g in self.gens:
            if g.ring != self.ring:
                raise ValueError("generator in the wrong ring")
            if not g.is_homogeneous():
                raise ValueError(f"{g} is not homogeneous")
            if not g.is_zero() and g not in gens:
                gens.append(g)
        object.__setattr__(self, "gens", tuple(gens))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree() for g in self.gens)


@dataclass(frozen=True)
class Ridge:
    ring: Ring
    components: tuple[tuple[MultiPoly, int], ...]
    tau: int
    L_basis: tuple[tuple, ...]

    def additive_generators(self) -> list[MultiPoly]:
        p = self.ring.field.p
        return [ell ** (p**e if e else 1) for ell, e in self.components]


def initial_ideal(g: ReesAlgebra, point: Sequence | None = None) -> HomIdeal:
    """``<In_{n_i}(f_i)>`` at ``point`` (default the origin)."""
    if point is not None:
        g = g.translated(point)
    forms = []
    for x in g.gens:
        o = x.f.order()
        if o < x.n:
            raise PreconditionError(f"generator {x} has order {o} below its weight at the point")
        if o == x.n:
            forms.append(x.f.homogeneous_part(x.n))
    return HomIdeal(g.ring, tuple(forms))


def _linear_basis(polys: list[MultiPoly], ring: Ring) -> list[MultiPoly]:
    # same-degree forms only; returns a basis of their span
    index = MonomialIndex()
    ech = Echelon(ring.field)
    for f in polys:
        ech.add(index.vec(f))
    return [index.poly(ring, r) for r in ech.reduced_rows()]


def _closure(I: HomIdeal, max_degree: int | None = None) -> list[MultiPoly]:
    by_deg: dict[int, list[MultiPoly]] = {}
    for g in I.gens:
        by_deg.setdefault(g.degree(), []).append(g)
    d = I.ring.ngens
    out = list(I.gens)
    seen = set(out)
    for n in sorted(by_deg):
        # derivatives are linear, so a basis of each degree suffices
        base = by_deg[n] if len(by_deg[n]) <= 1 else _linear_basis(by_deg[n], I.ring)
        for k in range(1, n):
            if max_degree is not None and n - k > max_degree:
                continue
            for a in multi_indices(d, k):
                for g in base:
                    h = hasse_derivative(g, a)
                    if not h.is_zero() and h not in seen:
                        seen.add(h)
                        out.append(h)
    return out


def diff_close_hom_ideal(I: HomIdeal) -> HomIdeal:
    """Smallest extension closed under ``Delta^a`` of order below each degree."""
    return HomIdeal(I.ring, tuple(_closure(I)), diff_closed=True)


def _unit(d: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(d))


def _coeff_vector(ell: MultiPoly) -> dict:
    return {e.index(1): c for e, c in ell.terms.items()}


def _levels(ring: Ring, max_deg: int) -> list[tuple[int, int]]:
    p = ring.field.p
    out = [(0, 1)]
    if p:
        e, q = 1, p
        while q <= max_deg:
            out.append((e, q))
            e, q = e + 1, q * p
    return out


def ridge(I: HomIdeal) -> Ridge:
    """Additive generators ``(l, e)`` of a diff-closed ideal, tau and ``L``."""
    if not I.diff_closed:
        raise PreconditionError("ridge needs a diff-closed ideal (call diff_close_hom_ideal)")
    ring = I.ring
    d = ring.ngens
    field = ring.field
    lin = Echelon(field)
    comps: list[tuple[MultiPoly, int]] = []
    max_deg = max(I.degrees, default=0)
    for e, q in _levels(ring, max_deg):
        if len(lin) == d:
            break
        mons = monomials_of_degree(d, q)
        powers = [tuple(q * k for k in _unit(d, j)) for j in range(d)]
        # additive monomials last, so rows pivoting there are purely additive
        index = MonomialIndex([m for m in mons if m not in powers] + powers)
        first_additive = len(mons) - d
        ech = degree_slice(I.gens, q, ring, index)
        for row in ech.reduced_rows():
            if min(row) < first_additive:
                continue
            additive = index.poly(ring, row)
            ell = frobenius_root(additive, e) if e else additive
            r = lin.reduce(_coeff_vector(ell))
            if not r:
                continue
            lin.add(r)
            comps.append((MultiPoly(ring, {_unit(d, j): v for j, v in r.items()}).monic(), e))
    rows = [_coeff_vector(ell) for ell, _ in comps]
    L = nullspace(rows, d, field)
    tau = len(comps)
    if tau != d - len(L):
        raise AssertionError("rank and null space disagree")
    return Ridge(ring, tuple(comps), tau, tuple(tuple(v) for v in L))


@dataclass(frozen=True)
class TauComputation:
    initial: HomIdeal
    closure: HomIdeal
    ridge: Ridge

    @property
    def tau(self) -> int:
        return self.ridge.tau


def tau_details(g: ReesAlgebra, point: Sequence | None = None, *, full_closure: bool = True) -> TauComputation:
    I = initial_ideal(g, point)
    if full_closure:
        C = diff_close_hom_ideal(I)
    else:
        # only degrees that can host additive forms matter for the ridge
        top = max((q for _, q in _levels(I.ring, max(I.degrees, default=0))), default=1)
        C = HomIdeal(I.ring, tuple(_closure(I, top)), diff_closed=True)
    return TauComputation(I, C, ridge(C))


def tau(g: ReesAlgebra, point: Sequence | None = None) -> int:
    return tau_details(g, point, full_closure=False).tau


@dataclass(frozen=True)
class Transversality:
    cone_transversal: bool
    line_in_ridge: bool


def is_transversal(g: ReesAlgebra, z: str | None = None, point: Sequence | None = None) -> Transversality:
    """Does the Z-axis meet the tangent cone only at the origin?

    Also reports whether the Z-direction lies in the vertex space ``L``.
    """
    ring = g.ring
    zi = ring.index(z) if z is not None else ring.z_index
    if zi is None:
        raise ValueError("no distinguished variable declared")
    if point is not None:
        g = g.translated(point)
    ez = tuple(1 if i == zi else 0 for i in range(ring.ngens))
    cone = False
    for x in g.gens:
        if x.f.order() == x.n and x.f.homogeneous_part(x.n).evaluate(ez):
            cone = True
            break
    try:
        r = tau_details(g, full_closure=False).ridge
        in_ridge = all(not ell.evaluate(ez) for ell, _ in r.components)
    except PreconditionError:
        in_ridge = False
    return Transversality(cone, in_ridge)


def closure_generators_sorted(C: HomIdeal) -> list[MultiPoly]:
    return sort_polys(C.gens)
