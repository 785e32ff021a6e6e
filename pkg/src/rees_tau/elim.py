"""Elimination algebras of Rees algebras along a distinguished variable Z.

Universal invariants
--------------------
For blocks ``(n,)`` or ``(r, s)`` the universal elimination algebra is
``k[Y_i - Y_j]^G`` with ``G`` the product of symmetric groups on the
blocks.  Since ``k[Y]^G = k[block elementary symmetrics]`` in every
characteristic, a degree-``D`` invariant is a weighted-homogeneous
polynomial ``H(s)`` of degree ``D``, and translation invariance
``H(s(Y + t)) = H(s(Y))`` is a linear condition on its coefficients.  The
kernel of that condition is computed degree by degree, and new generators
are kept only modulo products of earlier ones.  No averaging over the
group is used, so nothing is divided by ``|G|``.

Specialization sends ``s_i`` to ``(-1)^i a_i`` for a monic
``Z^n + a_1 Z^{n-1} + ... + a_n``, and a generator of degree ``m`` to
weight ``m``.
"""

from __future__ import annotations

import itertools
import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import Echelon, nullspace, solve
from .polyring import FieldSpec, MultiPoly, Ring, glex_key, hasse_in, monomials_up_to, substitute
from .rees import MonomialIndex, PreconditionError, ReesAlgebra, WeightedElem, odot, shift, sort_polys, weight_solutions
from .tangent import is_transversal, tau

log = logging.getLogger(__name__)

MAX_UNIVERSAL_DEGREE = 4


# -- universal tables ----------------------------------------------------------


def _block_tuple(blocks) -> tuple[int, ...]:
    b = (blocks,) if isinstance(blocks, int) else tuple(blocks)
    if not 1 <= len(b) <= 2 or any(k < 1 for k in b):
        raise ValueError(f"blocks must be n or (r, s) with positive parts, got {blocks!r}")
    if sum(b) > MAX_UNIVERSAL_DEGREE:
        raise PreconditionError(f"total degree {sum(b)} exceeds {MAX_UNIVERSAL_DEGREE}")
    return b


def symmetric_names(blocks: Sequence[int]) -> list[str]:
    if len(blocks) == 1:
        return [f"s{i}" for i in range(1, blocks[0] + 1)]
    r, s = blocks
    return [f"v{i}" for i in range(1, r + 1)] + [f"w{i}" for i in range(1, s + 1)]


def _symbol_weights(blocks: Sequence[int]) -> list[int]:
    return [i for b in blocks for i in range(1, b + 1)]


def y_ring(blocks: Sequence[int], fld: FieldSpec) -> Ring:
    return Ring(fld, tuple(f"Y{i}" for i in range(1, sum(blocks) + 1)))


def s_ring(blocks: Sequence[int], fld: FieldSpec) -> Ring:
    return Ring(fld, tuple(symmetric_names(blocks)))


def elementary(polys: Sequence[MultiPoly], k: int) -> MultiPoly:
    """``e_k`` of a list of polynomials, by the product expansion."""
    R = polys[0].ring
    e = [R.one()] + [R.zero()] * len(polys)
    for p in polys:
        for j in range(len(polys), 0, -1):
            e[j] = e[j] + e[j - 1] * p
    return e[k] if k <= len(polys) else R.zero()


def block_symmetrics(blocks: Sequence[int], Y: Ring) -> dict[str, MultiPoly]:
    """``s_i`` (or ``v_i``, ``w_i``) as elementary symmetric polynomials in Y."""
    out = {}
    names = iter(symmetric_names(blocks))
    start = 0
    for b in blocks:
        ys = [Y.gen(start + i) for i in range(b)]
        for k in range(1, b + 1):
            out[next(names)] = elementary(ys, k)
        start += b
    return out


def weighted_monomials(weights: Sequence[int], D: int) -> list[tuple[int, ...]]:
    return weight_solutions(list(weights), D)


def _shift_images(blocks: Sequence[int], S: Ring, T: Ring) -> dict[str, MultiPoly]:
    # s_k(Y + t) = sum_j C(b - j, k - j) s_j t^(k-j) inside each block
    fld = S.field
    t = T.gen("t")
    out = {}
    names = iter(symmetric_names(blocks))
    for b in blocks:
        block_names = [next(names) for _ in range(b)]
        for k in range(1, b + 1):
            img = T.zero()
            for j in range(0, k + 1):
                c = fld.binomial(b - j, k - j)
                if not c:
                    continue
                sj = T.one() if j == 0 else T.gen(block_names[j - 1])
                img = img + (sj * t ** (k - j)).scale(c)
            out[block_names[k - 1]] = img
    return out


def _moved(m: tuple[int, ...], images: dict, T: Ring, cache: dict) -> MultiPoly:
    # image of a symmetric monomial under the shift, built from cached powers
    out = T.one()
    for (name, img), k in zip(images.items(), m):
        if k:
            key = (name, k)
            if key not in cache:
                cache[key] = img**k
            out = out * cache[key]
    return out


@dataclass(frozen=True)
class UniversalGen:
    invariant: MultiPoly  # in Y
    degree: int
    rewritten: MultiPoly  # in block symmetrics


@dataclass(frozen=True)
class UniversalElimGens:
    blocks: tuple[int, ...]
    field: FieldSpec
    y_ring: Ring
    s_ring: Ring
    gens: tuple[UniversalGen, ...]
    degree_bound: int

    @property
    def n(self) -> int:
        return sum(self.blocks)

    def degrees(self) -> list[int]:
        return [u.degree for u in self.gens]

    def verify(self) -> bool:
        """Re-expansion, group invariance and translation invariance in Y."""
        sym = block_symmetrics(self.blocks, self.y_ring)
        for u in self.gens:
            if substitute(u.rewritten, sym, self.y_ring) != u.invariant:
                return False
            if not is_group_invariant(u.invariant, self.blocks):
                return False
            if not is_translation_invariant(u.invariant):
                return False
        return True


def is_group_invariant(f: MultiPoly, blocks: Sequence[int]) -> bool:
    """Fixed by the adjacent transpositions inside each block."""
    R = f.ring
    start = 0
    for b in blocks:
        for i in range(start, start + b - 1):
            names = list(R.vars)
            names[i], names[i + 1] = names[i + 1], names[i]
            if substitute(f, {v: R.gen(w) for v, w in zip(R.vars, names)}, R) != f:
                return False
        start += b
    return True


def is_translation_invariant(f: MultiPoly) -> bool:
    """``f(Y + t) == f(Y)`` for a fresh variable ``t``."""
    R = f.ring
    T = Ring(R.field, R.vars + ("t",))
    t = T.gen("t")
    moved = substitute(f, {v: T.gen(v) + t for v in R.vars}, T)
    return moved == substitute(f, {}, T)


def _normalize(h: MultiPoly, inv: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    # Q: primitive integer coefficients in Y with positive leading term; F_p: monic
    fld = h.ring.field
    lead = inv.coefficient(min(inv.exponents(), key=glex_key))
    if fld.is_finite:
        c = fld.inv(lead)
    else:
        coeffs = [Fraction(v) for v in inv.terms.values()]
        den = math.lcm(*(q.denominator for q in coeffs))
        num = math.gcd(*(int(q * den) for q in coeffs))
        c = Fraction(den, num) * (1 if lead > 0 else -1)
    return h.scale(c), inv.scale(c)


_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def default_degree_bound(blocks: Sequence[int]) -> int:
    n = sum(blocks)
    return max(n * (n - 1), 1)


def universal_invariants(blocks, fld: FieldSpec, degree_bound: int | None = None) -> UniversalElimGens:
    """Minimal generators of ``k[Y_i - Y_j]^G`` up to ``degree_bound``.

    Results are memoized per ``(blocks, field, bound)``; the cache is safe
    for concurrent readers and inserts under a lock.
    """
    b = _block_tuple(blocks)
    bound = default_degree_bound(b) if degree_bound is None else degree_bound
    if bound < 1:
        raise ValueError("degree_bound must be at least 1")
    key = (b, fld, bound)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    result = _compute_universal(b, fld, bound)
    with _CACHE_LOCK:
        return _CACHE.setdefault(key, result)


def _compute_universal(blocks: tuple[int, ...], fld: FieldSpec, bound: int) -> UniversalElimGens:
    S = s_ring(blocks, fld)
    Y = y_ring(blocks, fld)
    T = Ring(fld, S.vars + ("t",))
    t_idx = T.ngens - 1
    images = _shift_images(blocks, S, T)
    sym = block_symmetrics(blocks, Y)
    weights = _symbol_weights(blocks)
    found: list[UniversalGen] = []
    cache: dict = {}
    p = fld.p
    checked = {1}
    if p:
        q = p
        while q <= bound:
            checked.add(q)
            q *= p
    for D in range(1, bound + 1):
        mons = weighted_monomials(weights, D)
        if not mons:
            continue
        # translation defect of each basis monomial.  The t^j coefficients
        # form an iterative Hasse-Schmidt derivation, so it is enough to kill
        # those with j = 1 (char 0) or j a power of p.
        index = MonomialIndex()
        eqs: dict[int, dict] = {}
        for j, m in enumerate(mons):
            moved = _moved(m, images, T, cache)
            for e, c in moved.terms.items():
                if e[t_idx] in checked:
                    eqs.setdefault(index.add(e), {})[j] = c
        kernel = nullspace(list(eqs.values()), len(mons), fld)
        if not kernel:
            continue
        # products of earlier generators in this degree
        col = {m: j for j, m in enumerate(mons)}
        ech = Echelon(fld)
        for a in weight_solutions([u.degree for u in found], D) if found else []:
            p = S.one()
            for u, k in zip(found, a):
                if k:
                    p = p * u.rewritten**k
            ech.add({col[e]: c for e, c in p.terms.items()})
        for v in kernel:
            vec = {j: fld(c) for j, c in enumerate(v) if c}
            if not ech.add(vec):
                continue
            h = MultiPoly(S, {mons[j]: c for j, c in vec.items()})
            inv = substitute(h, sym, Y)
            h, inv = _normalize(h, inv)
            found.append(UniversalGen(inv, D, h))
    return UniversalElimGens(blocks, fld, Y, S, tuple(found), bound)


def rewrite_in_symmetrics(inv: MultiPoly, blocks, S: Ring | None = None) -> MultiPoly:
    """Express a block-symmetric ``inv`` in the block elementary symmetrics."""
    b = tuple((blocks,) if isinstance(blocks, int) else blocks)
    Y = inv.ring
    if Y.ngens != sum(b):
        raise ValueError(f"{Y} has {Y.ngens} variables, blocks need {sum(b)}")
    S = S or s_ring(b, Y.field)
    if inv.is_zero():
        return S.zero()
    if not inv.is_homogeneous():
        raise ValueError("invariant must be homogeneous")
    sym = block_symmetrics(b, Y)
    mons = weighted_monomials(_symbol_weights(b), inv.degree())
    index = MonomialIndex()
    cols = [index.vec(substitute(S.monomial(m), sym, Y)) for m in mons]
    x = solve(cols, index.vec(inv), Y.field)
    if x is None:
        raise ValueError(f"{inv} is not invariant under the block symmetric groups")
    return MultiPoly(S, {m: c for m, c in zip(mons, x) if c})


def resultant_invariant(r: int, s: int, fld: FieldSpec) -> UniversalGen:
    """``prod (Y_i - Y_j)`` over the two blocks, rewritten in ``v, w``."""
    key = ("res", r, s, fld)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    Y = y_ring((r, s), fld)
    p = Y.one()
    for i in range(r):
        for j in range(r, r + s):
            p = p * (Y.gen(i) - Y.gen(j))
    # the block-symmetric span is free over Z, so this solve works for any (r, s)
    out = UniversalGen(p, r * s, rewrite_in_symmetrics(p, (r, s)))
    with _CACHE_LOCK:
        return _CACHE.setdefault(key, out)


# -- specialization --------------------------------------------------------------


@dataclass(frozen=True)
class EliminationAlgebra:
    algebra: ReesAlgebra  # over S, free of Z
    provenance: str  # universal-specialization | z-free-truncation
    source_weights: tuple[int, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.provenance not in ("universal-specialization", "z-free-truncation"):
            raise ValueError(f"bad provenance {self.provenance!r}")


def _spec_map(u: UniversalElimGens, coeffs: Sequence[MultiPoly]) -> dict[str, MultiPoly]:
    if len(coeffs) != u.n:
        raise ValueError(f"expected {u.n} coefficients, got {len(coeffs)}")
    names = symmetric_names(u.blocks)
    out = {}
    k = 0
    for b in u.blocks:
        for i in range(1, b + 1):
            a = coeffs[k]
            out[names[k]] = a if i % 2 == 0 else -a
            k += 1
    return out


def specialize(u: UniversalElimGens, coeffs: Sequence[MultiPoly]) -> EliminationAlgebra:
    """``s_i -> (-1)^i a_i``; each degree-``m`` generator gets weight ``m``.

    For two blocks ``coeffs`` lists ``a_1..a_r`` then ``b_1..b_s``.
    """
    if not coeffs:
        raise ValueError("no coefficients given")
    S = coeffs[0].ring
    mapping = _spec_map(u, coeffs)
    pairs = []
    dropped = 0
    for g in u.gens:
        h = substitute(g.rewritten, mapping, S)
        if h.is_zero():
            dropped += 1
        else:
            pairs.append((h, g.degree))
    notes = (f"{dropped} generators specialized to zero",) if dropped else ()
    return EliminationAlgebra(ReesAlgebra.from_pairs(S, pairs), "universal-specialization", tuple(u.blocks), notes)


# -- monic generators ------------------------------------------------------------


def _z_of(g: ReesAlgebra, z: str | None) -> int:
    if z is not None:
        return g.ring.index(z)
    if g.ring.z_index is None:
        raise PreconditionError("no distinguished variable declared")
    return g.ring.z_index


def drop_z(f: MultiPoly, zi: int, S: Ring) -> MultiPoly:
    if f.involves(zi):
        raise ValueError(f"{f} involves the distinguished variable")
    return MultiPoly._raw(S, {e[:zi] + e[zi + 1 :]: c for e, c in f.terms.items()})


def lift(h: MultiPoly, R: Ring, zi: int) -> MultiPoly:
    """Pull back an element of S along the projection."""
    return MultiPoly._raw(R, {e[:zi] + (0,) + e[zi:]: c for e, c in h.terms.items()})


def monic_coefficients(f: MultiPoly, zi: int, S: Ring) -> list[MultiPoly] | None:
    """``[a_1, ..., a_n]`` when ``f`` is a nonzero constant times a monic in Z."""
    cs = f.coefficients_in(zi, S)
    n = len(cs) - 1
    lead = cs[-1]
    if n < 1 or not lead.is_constant():
        return None
    inv = S.field.inv(lead.coefficient((0,) * S.ngens))
    return [cs[n - i].scale(inv) for i in range(1, n + 1)]


def normalize_monic(f: MultiPoly, zi: int) -> MultiPoly:
    lead = f.coefficients_in(zi, _drop_ring(f.ring, zi))[-1]
    return f.scale(f.ring.field.inv(lead.coefficient((0,) * (f.ring.ngens - 1))))


def _drop_ring(R: Ring, zi: int) -> Ring:
    return Ring(R.field, R.vars[:zi] + R.vars[zi + 1 :])


@dataclass(frozen=True)
class MonicSystem:
    """Monic generators and Z-free generators extracted from an algebra."""

    monics: tuple[WeightedElem, ...]
    zfree: tuple[MultiPoly, ...]  # in S, each paired with its weight in ``zfree_weights``
    zfree_weights: tuple[int, ...]
    notes: tuple[str, ...]


def monic_system(g: ReesAlgebra, zi: int) -> MonicSystem:
    """Split generators into Z-free ones and monic ones of Z-degree equal to the weight.

    A generator with Z-degree below its weight is replaced by ``F + f``
    for a monic ``F`` of the same weight, a product of monic generators;
    the algebra is unchanged since ``F`` is already in it.
    """
    R = g.ring
    S = _drop_ring(R, zi)
    monics: list[WeightedElem] = []
    pending: list[WeightedElem] = []
    zfree, zw, notes = [], [], []
    for x in g.gens:
        if not x.f.involves(zi):
            zfree.append(drop_z(x.f, zi, S))
            zw.append(x.n)
            continue
        deg = x.f.degree_in(zi)
        if deg > x.n:
            raise PreconditionError(f"generator {x} has Z-degree {deg} above its weight")
        if deg == x.n and monic_coefficients(x.f, zi, S) is not None:
            m = WeightedElem(normalize_monic(x.f, zi), x.n)
            if m not in monics:
                monics.append(m)
        else:
            pending.append(x)
    for x in pending:
        F = _monic_of_weight(monics, x.n, R)
        if F is None:
            raise PreconditionError(f"generator {x} is not monic in Z and no monic element of weight {x.n} is available")
        h = F + x.f
        if monic_coefficients(h, zi, S) is None:
            raise PreconditionError(f"generator {x} is not monic in Z, even after adding a monic element of weight {x.n}")
        m = WeightedElem(normalize_monic(h, zi), x.n)
        notes.append(f"replaced {x} by the monic {m}")
        if m not in monics:
            monics.append(m)
    return MonicSystem(tuple(monics), tuple(zfree), tuple(zw), tuple(notes))


def _monic_of_weight(monics: Sequence[WeightedElem], n: int, R: Ring) -> MultiPoly | None:
    for m in monics:
        if m.n == n:
            return m.f
    for a in weight_solutions([m.n for m in monics], n) if monics else []:
        p = R.one()
        for m, k in zip(monics, a):
            if k:
                p = p * m.f**k
        return p
    return None


# -- elimination algebras -----------------------------------------------------------


def elimination_algebra(
    g: ReesAlgebra,
    z: str | None = None,
    route: str = "universal",
    weight_bound: int | None = None,
    degree_bound: int = 8,
) -> EliminationAlgebra:
    """Elimination algebra of a Z-relatively saturated algebra, over S."""
    if g.saturation not in ("relative", "absolute"):
        raise PreconditionError("elimination needs a relatively saturated algebra (call rel_diff_saturate)")
    zi = _z_of(g, z)
    if route == "universal":
        return _universal_route(g, zi)
    if route == "z-free":
        wb = 2 * g.lcm_weights() if weight_bound is None else weight_bound
        return _zfree_route(g, zi, wb, degree_bound)
    raise ValueError(f"unknown route {route!r}")


def _universal_route(g: ReesAlgebra, zi: int) -> EliminationAlgebra:
    R = g.ring
    S = _drop_ring(R, zi)
    ms = monic_system(g, zi)
    pairs: list[tuple[MultiPoly, int]] = list(zip(ms.zfree, ms.zfree_weights))
    notes = list(ms.notes)
    coeffs = [monic_coefficients(m.f, zi, S) for m in ms.monics]
    for m, a in zip(ms.monics, coeffs):
        if m.n > MAX_UNIVERSAL_DEGREE:
            raise PreconditionError(f"monic generator {m} has degree {m.n} above {MAX_UNIVERSAL_DEGREE}")
        if m.n >= 2:
            pairs.extend(_spec_pairs(universal_invariants(m.n, R.field), a))
    for i in range(len(ms.monics)):
        for j in range(i + 1, len(ms.monics)):
            r, s = ms.monics[i].n, ms.monics[j].n
            a = coeffs[i] + coeffs[j]
            if r + s <= MAX_UNIVERSAL_DEGREE:
                pairs.extend(_spec_pairs(universal_invariants((r, s), R.field), a))
            else:
                # the resultant together with both single algebras has the
                # same integral closure as the pair algebra
                res = resultant_invariant(r, s, R.field)
                h = substitute(res.rewritten, _spec_map(_pair_shape(r, s, R.field), a), S)
                pairs.append((h, res.degree))
                notes.append(f"pair of degrees ({r},{s}) eliminated through the resultant")
    alg = ReesAlgebra.from_pairs(S, _dedupe_scalars(pairs))
    return EliminationAlgebra(alg, "universal-specialization", tuple(g.weights), tuple(notes))


def _dedupe_scalars(pairs: Sequence[tuple[MultiPoly, int]]) -> list[tuple[MultiPoly, int]]:
    seen = set()
    out = []
    for h, n in pairs:
        if h.is_zero():
            continue
        key = (h.monic(), n)
        if key not in seen:
            seen.add(key)
            out.append((h, n))
    return out


def _pair_shape(r: int, s: int, fld: FieldSpec) -> UniversalElimGens:
    # only blocks and n are used by _spec_map
    return UniversalElimGens((r, s), fld, y_ring((r, s), fld), s_ring((r, s), fld), (), 0)


def _spec_pairs(u: UniversalElimGens, a: Sequence[MultiPoly]) -> list[tuple[MultiPoly, int]]:
    S = a[0].ring
    mapping = _spec_map(u, a)
    out = []
    for gen in u.gens:
        h = substitute(gen.rewritten, mapping, S)
        if not h.is_zero():
            out.append((h, gen.degree))
    return out


class _Truncated:
    """A subspace of polynomials of degree at most ``D``, columns by degree descending."""

    def __init__(self, ring: Ring, D: int, index: MonomialIndex):
        self.ring = ring
        self.D = D
        self.index = index
        self.ech = Echelon(ring.field)

    def add(self, f: MultiPoly) -> bool:
        return self.ech.add(self.index.vec(f))

    def contains(self, f: MultiPoly) -> bool:
        return self.ech.contains(self.index.vec(f))

    def elements_below(self, D: int) -> list[MultiPoly]:
        # the leading column is the highest-degree monomial, so rows with a
        # low pivot span the whole intersection with degree <= D
        out = []
        for c, row in self.ech.rows.items():
            if sum(self.index.mono[c]) <= D:
                out.append(self.index.poly(self.ring, row))
        return out


def _zfree_route(g: ReesAlgebra, zi: int, weight_bound: int, D: int) -> EliminationAlgebra:
    R = g.ring
    S = _drop_ring(R, zi)
    d = R.ngens
    mons = sorted(monomials_up_to(d, D), key=glex_key)
    index = MonomialIndex(mons)
    smons = [m for m in mons if not m[zi]]
    gens = [(x.f, x.n) for x in g.gens if x.f.degree() <= D]
    spaces: dict[int, _Truncated] = {}
    full = _Truncated(R, D, index)
    for m in mons:
        full.add(R.monomial(m))
    spaces[0] = full
    # emitted generators and the truncated span of what they generate
    emitted: list[tuple[MultiPoly, int]] = []
    spans: dict[int, _Truncated] = {}
    s0 = _Truncated(R, D, index)
    for m in smons:
        s0.add(R.monomial(m))
    spans[0] = s0
    zcols = MonomialIndex([m for m in mons if m[zi]] + smons)
    first_free = len(mons) - len(smons)
    for w in range(1, weight_bound + 1):
        A = _Truncated(R, D, index)
        for f, n in gens:
            if n > w:
                continue
            for u in spaces[w - n].elements_below(D - f.degree()):
                A.add(f * u)
        spaces[w] = A
        # Z-free part of A
        ech = Echelon(R.field)
        for row in A.ech.rows.values():
            ech.add(zcols.vec(index.poly(R, row)))
        free = [zcols.poly(R, r) for r in ech.reduced_rows() if min(r) >= first_free]
        span = _Truncated(R, D, index)
        for h, n in emitted:
            if n <= w:
                for u in spans[w - n].elements_below(D - h.degree()):
                    span.add(h * u)
        for h in sort_polys(free):
            if span.contains(h):
                continue
            emitted.append((h, w))
            for m in monomials_up_to(d, D - h.degree()):
                if not m[zi]:
                    span.add(shift(h, m))
        spans[w] = span
    pairs = [(drop_z(h, zi, S), n) for h, n in emitted]
    notes = (f"weights up to {weight_bound}, degrees up to {D}",)
    return EliminationAlgebra(ReesAlgebra.from_pairs(S, pairs), "z-free-truncation", tuple(g.weights), notes)


# -- checks ------------------------------------------------------------------------


def generic_coefficients(blocks: Sequence[int], fld: FieldSpec, extra: Sequence[str] = ()) -> tuple[Ring, list[MultiPoly]]:
    names = [f"a{i}" for i in range(1, blocks[0] + 1)]
    if len(blocks) == 2:
        names += [f"b{i}" for i in range(1, blocks[1] + 1)]
    A = Ring(fld, tuple(names) + tuple(extra))
    return A, [A.gen(v) for v in names]


def _shifted_coefficients(coeffs: Sequence[MultiPoly], s: MultiPoly) -> list[MultiPoly]:
    # coefficients of f(Z + s) for monic f = Z^n + a_1 Z^(n-1) + ... + a_n
    A = s.ring
    n = len(coeffs)
    fld = A.field
    c = [A.one()] + list(coeffs)  # c[i] multiplies Z^(n-i)
    out = []
    for i in range(1, n + 1):
        # coefficient of Z^(n-i) in sum_k c[k] (Z+s)^(n-k)
        acc = A.zero()
        for k in range(0, i + 1):
            b = fld.binomial(n - k, i - k)
            if b:
                acc = acc + (c[k] * s ** (i - k)).scale(b)
        out.append(acc)
    return out


@dataclass(frozen=True)
class InvarianceReport:
    blocks: tuple[int, ...]
    field: FieldSpec
    shift_ok: tuple[bool, ...]
    scale_ok: tuple[bool, ...]

    @property
    def holds(self) -> bool:
        return all(self.shift_ok) and all(self.scale_ok)


def check_translation_invariance(u: UniversalElimGens) -> InvarianceReport:
    """Specialized generators under ``Z -> Z + s`` and ``a_i -> u^i a_i``.

    The second is the coefficient change of ``u^n f(Z/u)``; a generator of
    degree ``m`` must pick up exactly ``u^m``.
    """
    A, a = generic_coefficients(u.blocks, u.field, ("s", "u"))
    s, uu = A.gen("s"), A.gen("u")
    blocks = list(u.blocks)
    if len(blocks) == 1:
        moved = _shifted_coefficients(a, s)
    else:
        r = blocks[0]
        moved = _shifted_coefficients(a[:r], s) + _shifted_coefficients(a[r:], s)
    scaled = []
    for b in blocks:
        scaled += [uu**i for i in range(1, b + 1)]
    scaled = [x * y for x, y in zip(a, scaled)]
    base = _spec_map(u, a)
    shift_ok, scale_ok = [], []
    for gen in u.gens:
        h = substitute(gen.rewritten, base, A)
        shift_ok.append(substitute(gen.rewritten, _spec_map(u, moved), A) == h)
        scale_ok.append(substitute(gen.rewritten, _spec_map(u, scaled), A) == h * uu**gen.degree)
    return InvarianceReport(tuple(u.blocks), u.field, tuple(shift_ok), tuple(scale_ok))


@dataclass(frozen=True)
class SymmetricIdentity:
    n: int
    field: FieldSpec
    unsigned: tuple[bool, ...]  # Delta^(e) F_n == e_{n-e}(Z - Y), e = 0..n
    signed: tuple[bool, ...]  # with the factor (-1)^(n-e)

    def summary(self) -> str:
        u = "holds" if all(self.unsigned) else "fails"
        s = "holds" if all(self.signed) else "fails for " + ",".join(
            str(e) for e, ok in enumerate(self.signed) if not ok
        )
        return f"n={self.n} {self.field.name}: unsigned identity {u}; signed (-1)^(n-e) version {s}"


def symmetric_identity(n: int, fld: FieldSpec) -> SymmetricIdentity:
    """Compare ``Delta_Z^(e)(prod (Z - Y_i))`` with ``e_{n-e}(Z - Y_1, ..., Z - Y_n)``."""
    R = Ring(fld, tuple(f"Y{i}" for i in range(1, n + 1)) + ("Z",), n)
    Z = R.gen("Z")
    diffs = [Z - R.gen(i) for i in range(n)]
    F = R.one()
    for p in diffs:
        F = F * p
    unsigned, signed = [], []
    for e in range(n + 1):
        lhs = hasse_in(F, n, e)
        rhs = elementary(diffs, n - e)
        unsigned.append(lhs == rhs)
        signed.append(lhs == rhs.scale((-1) ** (n - e)))
    return SymmetricIdentity(n, fld, tuple(unsigned), tuple(signed))


def compatibility_check(r: int, s: int, fld: FieldSpec, degree_bound: int | None = None) -> bool:
    """Single-polynomial invariants of ``f_r f_s`` lie in the pair algebra.

    Works with generic block coefficients: each generator ``h`` of the
    degree-``r+s`` table, specialized to the coefficients of the product,
    must be a polynomial in the specialized pair generators.
    """
    one = universal_invariants(r + s, fld, degree_bound)
    two = universal_invariants((r, s), fld, degree_bound)
    A, ab = generic_coefficients((r, s), fld)
    a, b = ab[:r], ab[r:]
    # coefficients of the product of the two monic polynomials
    fa = [A.one()] + a
    fb = [A.one()] + b
    prod = [A.zero() for _ in range(r + s + 1)]
    for i, x in enumerate(fa):
        for j, y in enumerate(fb):
            prod[i + j] = prod[i + j] + x * y
    pair_gens = [(substitute(x.rewritten, _spec_map(two, ab), A), x.degree) for x in two.gens]
    pair_gens = [(h, m) for h, m in pair_gens if not h.is_zero()]
    for gen in one.gens:
        h = substitute(gen.rewritten, _spec_map(one, prod[1:]), A)
        if h.is_zero():
            continue
        span = Echelon(fld)
        index = MonomialIndex()
        for sol in weight_solutions([m for _, m in pair_gens], gen.degree) if pair_gens else []:
            p = A.one()
            for (q, _), k in zip(pair_gens, sol):
                if k:
                    p = p * q**k
            span.add(index.vec(p))
        if not span.contains(index.vec(h)):
            return False
    return True


# -- tau drop -------------------------------------------------------------------------


@dataclass(frozen=True)
class TauDropRecord:
    tau_g: int
    tau_r: int
    holds: bool
    mode: str
    route: str
    elimination: EliminationAlgebra = field(repr=False, compare=False)


def _universal_applies(g: ReesAlgebra, zi: int) -> bool:
    try:
        ms = monic_system(g, zi)
    except PreconditionError:
        return False
    return all(m.n <= MAX_UNIVERSAL_DEGREE for m in ms.monics)


def tau_drop_check(
    g: ReesAlgebra,
    z: str | None = None,
    mode: str = "absolute",
    route: str = "auto",
    weight_bound: int | None = None,
    degree_bound: int = 8,
) -> TauDropRecord:
    """Eliminate Z and compare tau before and after at the origin.

    ``absolute``: the drop must be exactly one.  ``relative-only``: tau of
    the elimination algebra is at most ``tau_g - 1``.
    """
    if mode not in ("absolute", "relative-only"):
        raise ValueError(f"bad mode {mode!r}")
    zi = _z_of(g, z)
    if mode == "absolute" and g.saturation != "absolute":
        raise PreconditionError("absolute mode needs a diff-saturated algebra (call diff_saturate)")
    if mode == "relative-only" and g.saturation == "none":
        raise PreconditionError("relative-only mode needs a relatively saturated algebra")
    tg = tau(g)
    if tg < 1:
        raise PreconditionError("tau is 0 at the origin")
    if not is_transversal(g, g.ring.vars[zi]).cone_transversal:
        raise PreconditionError("the projection is not transversal: the Z-axis lies in the tangent cone")
    if route == "auto":
        route = "universal" if _universal_applies(g, zi) else "z-free"
    E = elimination_algebra(g, g.ring.vars[zi], route, weight_bound, degree_bound)
    tr = tau(E.algebra) if E.algebra.ring.ngens else 0
    holds = tr == tg - 1 if mode == "absolute" else tr <= tg - 1
    return TauDropRecord(tg, tr, holds, mode, route, E)


# -- local presentation --------------------------------------------------------------


@dataclass(frozen=True)
class PresentationVerdict:
    verdict: str
    tau_g: int
    tau_rhs: int
    evidence: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent-with-equivalence"


def presentation_algebra(f: WeightedElem, E: EliminationAlgebra, R: Ring, zi: int) -> ReesAlgebra:
    """``O[f W^n, Delta_Z^(e)(f) W^(n-e)]`` together with the pulled-back elimination algebra."""
    pairs = [(f.f, f.n)] + [(hasse_in(f.f, zi, e), f.n - e) for e in range(1, f.n)]
    left = ReesAlgebra.from_pairs(R, pairs)
    right = ReesAlgebra.from_pairs(R, [(lift(x.f, R, zi), x.n) for x in E.algebra.gens])
    return odot(left, right)


def verify_local_presentation(
    g: ReesAlgebra,
    f: WeightedElem,
    z: str | None = None,
    route: str = "universal",
    k_max: int = 6,
    weight_bound: int | None = None,
    degree_bound: int = 8,
) -> PresentationVerdict:
    """Desk check that ``g`` and the presentation built from ``f`` agree."""
    from .rees import check_integral_equiv_desk

    zi = _z_of(g, z)
    R = g.ring
    if not any(x.n == f.n and x.f.monic() == f.f.monic() for x in g.gens):
        raise PreconditionError(f"{f} is not among the generators")
    if monic_coefficients(f.f, zi, _drop_ring(R, zi)) is None or f.f.degree_in(zi) != f.n:
        raise PreconditionError(f"{f} is not monic of degree {f.n} in Z")
    if f.f.order() != f.n:
        raise PreconditionError(f"{f} does not have order exactly {f.n} at the origin")
    E = elimination_algebra(g, R.vars[zi], route, weight_bound, degree_bound)
    rhs = presentation_algebra(WeightedElem(normalize_monic(f.f, zi), f.n), E, R, zi)
    tg, tr = tau(g), tau(rhs)
    N = math.lcm(g.lcm_weights(), rhs.lcm_weights())
    eq = check_integral_equiv_desk(g, rhs, N, k_max)
    verdict = eq.verdict
    ev = list(eq.evidence)
    if tg != tr:
        verdict = "refuted"
        ev.append(f"tau differs: {tg} vs {tr}")
    return PresentationVerdict(verdict, tg, tr, tuple(ev))


# -- coordinate change helper -----------------------------------------------------------


def make_transversal(f: MultiPoly, n: int, zi: int, attempts: int = 20) -> tuple[MultiPoly, tuple]:
    """Apply ``x_i -> x_i + c_i Z`` so that ``In_n(f)`` does not vanish on the Z-axis.

    Tries small deterministic coefficient vectors and returns the new
    polynomial with the coefficients used.
    """
    R = f.ring
    In = f.homogeneous_part(n)
    if In.is_zero():
        raise PreconditionError(f"{f} has no initial form of degree {n}")
    others = [i for i in range(R.ngens) if i != zi]
    Z = R.gen(zi)
    values = list(R.field.elements()) if R.field.is_finite else list(range(-3, 4))
    tried = 0
    for cs in itertools.product(values, repeat=len(others)):
        if tried >= attempts:
            break
        tried += 1
        pt = [0] * R.ngens
        for i, c in zip(others, cs):
            pt[i] = c
        pt[zi] = 1
        if In.evaluate(pt):
            mapping = {R.vars[i]: R.gen(i) + Z.scale(c) for i, c in zip(others, cs) if c}
            return (substitute(f, mapping, R) if mapping else f), tuple(cs)
    raise PreconditionError(f"no transversal direction found for {f} after {tried} attempts")
