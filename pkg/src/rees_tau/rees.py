"""Rees algebras presented by weighted generators ``f_i W^{n_i}``.

The algebra ``O[f_1 W^{n_1}, ..., f_s W^{n_s}]`` over a polynomial ring
has graded pieces ``I_N`` generated by the products ``prod f_i^{a_i}``
with ``sum a_i n_i == N``.  Homogeneous ideal membership is decided by
linear algebra in a single degree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .linalg import Echelon, rref_mod_p
from .polyring import (
    MultiPoly,
    Ring,
    glex_key,
    hasse_derivative,
    initial_form,
    iter_points,
    monomials_of_degree,
    monomials_up_to,
    multi_indices,
    translate,
)

MAX_ENUMERATION = 10**6


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


@dataclass(frozen=True)
class WeightedElem:
    f: MultiPoly
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"weight must be a positive integer, got {self.n!r}")
        if self.f.is_zero():
            raise ValueError("zero generator")

    def __str__(self) -> str:
        return f"({self.f})*W^{self.n}"


@dataclass(frozen=True)
class ReesAlgebra:
    ring: Ring
    gens: tuple[WeightedElem, ...] = ()
    saturation: str = "none"

    def __post_init__(self):
        if self.saturation not in ("none", "relative", "absolute"):
            raise ValueError(f"bad saturation flag {self.saturation!r}")
        seen = set()
        uniq = []
        for g in self.gens:
            if g.f.ring != self.ring:
                raise ValueError(f"generator {g} lives in {g.f.ring}, not {self.ring}")
            key = (g.f, g.n)
            if key not in seen:
                seen.add(key)
                uniq.append(g)
        object.__setattr__(self, "gens", tuple(uniq))

    @classmethod
    def from_pairs(cls, ring: Ring, pairs: Iterable, saturation: str = "none") -> "ReesAlgebra":
        """Build from ``(poly or text, weight)`` pairs, dropping zero polynomials."""
        gens = []
        for f, n in pairs:
            if isinstance(f, str):
                f = ring.parse(f)
            if not f.is_zero():
                gens.append(WeightedElem(f, n))
        return cls(ring, tuple(gens), saturation)

    @property
    def weights(self) -> list[int]:
        return [g.n for g in self.gens]

    def lcm_weights(self) -> int:
        return reduce(math.lcm, self.weights, 1)

    def with_gens(self, gens: Iterable[WeightedElem], saturation: str | None = None) -> "ReesAlgebra":
        return ReesAlgebra(self.ring, tuple(gens), self.saturation if saturation is None else saturation)

    def translated(self, point: Sequence) -> "ReesAlgebra":
        """The same algebra with ``point`` moved to the origin."""
        if point is None or not any(self.ring.field(c) for c in point):
            return self
        return ReesAlgebra.from_pairs(self.ring, [(translate(g.f, point), g.n) for g in self.gens], self.saturation)

    def __str__(self) -> str:
        return f"{self.ring.field.name}[{','.join(self.ring.vars)}][" + ", ".join(map(str, self.gens)) + "]"


@dataclass(frozen=True)
class PolyIdeal:
    ring: Ring
    gens: tuple[MultiPoly, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        for g in self.gens:
            if g.ring != self.ring:
                raise ValueError("ideal generator in the wrong ring")


# -- algebra operations -------------------------------------------------------


def odot(g1: ReesAlgebra, g2: ReesAlgebra) -> ReesAlgebra:
    """Smallest Rees algebra containing both: the union of generator lists."""
    if g1.ring != g2.ring:
        raise ValueError(f"ring mismatch: {g1.ring} vs {g2.ring}")
    return ReesAlgebra(g1.ring, g1.gens + g2.gens)


def weight_solutions(weights: Sequence[int], N: int) -> list[tuple[int, ...]]:
    """All nonnegative ``a`` with ``sum a_i w_i == N``."""
    out = []

    def rec(i: int, left: int, acc: list):
        if i == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        for a in range(left // weights[i] + 1):
            acc.append(a)
            rec(i + 1, left - a * weights[i], acc)
            acc.pop()

    rec(0, N, [])
    return out


def graded_piece(g: ReesAlgebra, N: int) -> PolyIdeal:
    """Generators of ``I_N``: products of total weight exactly ``N``."""
    if N < 1:
        raise ValueError("N must be positive")
    fs = [x.f for x in g.gens]
    prods = []
    seen = set()
    for a in weight_solutions(g.weights, N):
        p = g.ring.one()
        for f, k in zip(fs, a):
            if k:
                p = p * f**k
        if not p.is_zero() and p not in seen:
            seen.add(p)
            prods.append(p)
    return PolyIdeal(g.ring, tuple(prods))


def veronese(g: ReesAlgebra, N: int) -> ReesAlgebra:
    """The Rees ring ``O[I_N W^N]``; needs ``N`` divisible by every weight."""
    bad = [n for n in g.weights if N % n]
    if bad:
        raise PreconditionError(f"N={N} is not a multiple of the weights {bad}")
    return ReesAlgebra.from_pairs(g.ring, [(p, N) for p in graded_piece(g, N).gens])


# -- singular locus -------------------------------------------------------------


def in_sing_locus(g: ReesAlgebra, point: Sequence) -> bool:
    if len(point) != g.ring.ngens:
        raise ValueError(f"point {tuple(point)} has wrong dimension for {g.ring}")
    return all(translate(x.f, point).order() >= x.n for x in g.gens)


def _vanishing_conditions(g: ReesAlgebra) -> list[MultiPoly]:
    # ord_c(f) >= n  iff  every Hasse derivative of order < n vanishes at c
    conds = []
    d = g.ring.ngens
    for x in g.gens:
        for k in range(x.n):
            for a in multi_indices(d, k):
                h = hasse_derivative(x.f, a)
                if not h.is_zero():
                    conds.append(h)
    return conds


def enumerate_sing(g: ReesAlgebra) -> list[tuple[int, ...]]:
    """All F_p-rational points of ``Sing(g)``, sorted lexicographically.

    Uses the Taylor criterion: the order at ``c`` is at least ``n`` iff all
    Hasse derivatives of order below ``n`` vanish at ``c``.
    """
    F = g.ring.field
    if not F.is_finite:
        raise PreconditionError("enumeration needs a finite field")
    d = g.ring.ngens
    if F.p**d > MAX_ENUMERATION:
        raise PreconditionError(f"search space {F.p}^{d} exceeds {MAX_ENUMERATION}")
    conds = _vanishing_conditions(g)
    return [pt for pt in iter_points(F, d) if all(not h.evaluate(pt) for h in conds)]


# -- ideal membership ---------------------------------------------------------


class MonomialIndex:
    """Column numbering for monomials; earlier columns are pivot candidates first."""

    def __init__(self, monomials: Iterable[tuple[int, ...]] = ()):
        self.col: dict[tuple[int, ...], int] = {}
        self.mono: list[tuple[int, ...]] = []
        for m in monomials:
            self.add(m)

    def add(self, m: tuple[int, ...]) -> int:
        c = self.col.get(m)
        if c is None:
            c = self.col[m] = len(self.mono)
            self.mono.append(m)
        return c

    def vec(self, f: MultiPoly) -> dict:
        return {self.add(e): c for e, c in f.terms.items()}

    def poly(self, ring: Ring, row: dict) -> MultiPoly:
        return MultiPoly(ring, {self.mono[k]: v for k, v in row.items()})


def _check_homogeneous(*polys: MultiPoly):
    for p in polys:
        if not p.is_homogeneous():
            raise ValueError(f"{p} is not homogeneous")


def shift(f: MultiPoly, m: tuple[int, ...]) -> MultiPoly:
    """``x^m * f`` without going through general multiplication."""
    return MultiPoly._raw(f.ring, {tuple(a + b for a, b in zip(e, m)): c for e, c in f.terms.items()})


def degree_slice(gens: Iterable[MultiPoly], D: int, ring: Ring, index: MonomialIndex | None = None) -> Echelon:
    """Echelon basis of the degree-``D`` part of the ideal spanned by homogeneous ``gens``.

    Built incrementally: the slice in degree ``k+1`` is spanned by the
    variables times the slice in degree ``k`` plus the generators of degree
    ``k+1``.  This keeps the row count near the slice dimension.
    """
    index = index or MonomialIndex(monomials_of_degree(ring.ngens, D))
    last = Echelon(ring.field)
    for k, _, ech in _slice_chain(gens, D, ring, index):
        last = ech if k == D else last
    return last


def degree_slices(gens: Iterable[MultiPoly], D: int, ring: Ring) -> dict[int, tuple[MonomialIndex, Echelon]]:
    """Every slice of degree ``<= D`` from a single incremental pass."""
    out = {k: (MonomialIndex(monomials_of_degree(ring.ngens, k)), Echelon(ring.field)) for k in range(D + 1)}
    for k, idx, ech in _slice_chain(gens, D, ring, None):
        out[k] = (idx, ech)
    return out


def _slice_chain(gens, D: int, ring: Ring, index: MonomialIndex | None):
    # yields (k, column index, echelon) for each degree from the lowest generator degree up to D
    gens = [g for g in gens if not g.is_zero()]
    _check_homogeneous(*gens)
    by_deg: dict[int, list[MultiPoly]] = {}
    for g in gens:
        if g.degree() <= D:
            by_deg.setdefault(g.degree(), []).append(g)
    if not by_deg:
        return
    d = ring.ngens
    chain = _chain_mod_p if ring.field.is_finite else _chain_exact
    yield from chain(by_deg, D, ring, index, d)


def _local_index(d: int, k: int, D: int, index: MonomialIndex | None) -> MonomialIndex:
    return index if (k == D and index is not None) else MonomialIndex(monomials_of_degree(d, k))


def _chain_exact(by_deg, D, ring, index, d):
    units = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
    cur: list[MultiPoly] = []
    for k in range(min(by_deg), D + 1):
        local = _local_index(d, k, D, index)
        ech = Echelon(ring.field)
        for f in cur:
            for u in units:
                ech.add(local.vec(shift(f, u)))
        for g in by_deg.get(k, []):
            ech.add(local.vec(g))
        yield k, local, ech
        cur = [local.poly(ring, r) for r in ech.rows.values()]


def _chain_mod_p(by_deg, D, ring, index, d):
    # same recursion with dense numpy rows over F_p
    p = ring.field.p
    cur = np.zeros((0, 0), dtype=np.int64)
    prev_mons: list = []
    for k in range(min(by_deg), D + 1):
        local = _local_index(d, k, D, index)
        mons = local.mono
        col = local.col
        blocks = []
        if cur.shape[0]:
            for j in range(d):
                target = [col[m[:j] + (m[j] + 1,) + m[j + 1 :]] for m in prev_mons]
                b = np.zeros((cur.shape[0], len(mons)), dtype=np.int64)
                b[:, target] = cur
                blocks.append(b)
        new = by_deg.get(k, [])
        if new:
            b = np.zeros((len(new), len(mons)), dtype=np.int64)
            for i, g in enumerate(new):
                for e, c in g.terms.items():
                    b[i, col[e]] = c
            blocks.append(b)
        cur = rref_mod_p(np.vstack(blocks), p) if blocks else np.zeros((0, len(mons)), dtype=np.int64)
        prev_mons = list(mons)
        ech = Echelon(ring.field)
        for row in cur:
            nz = np.nonzero(row)[0]
            ech.rows[int(nz[0])] = {int(c): int(row[c]) for c in nz}
        yield k, local, ech


def ideal_contains(I: PolyIdeal, h: MultiPoly) -> bool:
    """Exact membership of a homogeneous ``h`` in a homogeneous ideal."""
    _check_homogeneous(h, *I.gens)
    if h.is_zero():
        return True
    D = h.degree()
    index = MonomialIndex(monomials_of_degree(I.ring.ngens, D))
    ech = degree_slice(I.gens, D, I.ring, index)
    return ech.contains(index.vec(h))


def radical_contains(I: PolyIdeal, h: MultiPoly, k_max: int = 6) -> bool:
    """One-sided certificate: some ``h^k`` with ``k <= k_max`` lies in ``I``."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    p = h.ring.one()
    for _ in range(k_max):
        p = p * h
        if ideal_contains(I, p):
            return True
    return False


def ideal_contains_truncated(gens: Sequence[MultiPoly], h: MultiPoly, degree_bound: int) -> bool:
    """Sound but incomplete membership for non-homogeneous polynomials.

    Looks for ``h = sum m_j g_j`` with monomial multipliers such that every
    ``m_j g_j`` has degree at most ``degree_bound``.  A False answer means
    no certificate exists below the bound.
    """
    if h.is_zero():
        return True
    if h.degree() > degree_bound:
        return False
    ring = h.ring
    d = ring.ngens
    index = MonomialIndex()
    ech = Echelon(ring.field)
    for g in gens:
        if g.is_zero() or g.degree() > degree_bound:
            continue
        for m in monomials_up_to(d, degree_bound - g.degree()):
            ech.add(index.vec(shift(g, m)))
    return ech.contains(index.vec(h))


# -- integral equivalence (desk scale) -----------------------------------------


@dataclass(frozen=True)
class EquivVerdict:
    verdict: str  # consistent-with-equivalence | refuted | inconclusive
    evidence: tuple[str, ...] = ()

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent-with-equivalence"


def initial_piece(g: ReesAlgebra, N: int) -> list[MultiPoly]:
    """Nonzero ``In_N`` of the generators of ``I_N`` (origin assumed in Sing)."""
    out = []
    for p in graded_piece(g, N).gens:
        q = initial_form(p, N)
        if not q.is_zero() and q not in out:
            out.append(q)
    return out


def _witness_points(ring: Ring):
    F = ring.field
    d = ring.ngens
    if F.is_finite and F.p**d <= 20000:
        return iter_points(F, d)
    return itertools.product(range(-2, 3), repeat=d)


def _refute(J: Sequence[MultiPoly], h: MultiPoly):
    # a rational zero of J where h does not vanish proves h is not in rad(J)
    for pt in _witness_points(h.ring):
        if all(not q.evaluate(pt) for q in J) and h.evaluate(pt):
            return pt
    return None


def check_integral_equiv_desk(g: ReesAlgebra, g2: ReesAlgebra, N: int, k_max: int = 6) -> EquivVerdict:
    """Compare ``rad <In_N(I_N)>`` of two algebras in both directions."""
    if g.ring != g2.ring:
        raise ValueError("ring mismatch")
    for alg in (g, g2):
        bad = [n for n in alg.weights if N % n]
        if bad:
            raise PreconditionError(f"N={N} is not a multiple of the weights {bad}")
        if not in_sing_locus(alg, (0,) * alg.ring.ngens):
            raise PreconditionError("the origin is not in the singular locus")
    J1 = initial_piece(g, N)
    J2 = initial_piece(g2, N)
    evidence = []
    verdict = "consistent-with-equivalence"
    for name, src, dst in (("2->1", J2, J1), ("1->2", J1, J2)):
        I = PolyIdeal(g.ring, tuple(dst))
        for h in src:
            pt = _refute(dst, h)
            if pt is not None:
                evidence.append(f"{name}: {h} is nonzero at {pt} where the other ideal vanishes")
                verdict = "refuted"
                continue
            if radical_contains(I, h, k_max):
                evidence.append(f"{name}: {h} in radical")
            else:
                evidence.append(f"{name}: no power of {h} up to {k_max} found")
                if verdict != "refuted":
                    verdict = "inconclusive"
    return EquivVerdict(verdict, tuple(evidence))


def sort_polys(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    return sorted(polys, key=lambda f: (f.degree(), [glex_key(e) for e in f.exponents()], str(f)))
