"""Random generators and brute-force oracles shared by the tests.

The oracles deliberately avoid the package's linear algebra: they
enumerate, expand or row-reduce with their own few lines of code.
"""

import itertools
import random
from fractions import Fraction

from rees_tau.polyring import FieldSpec, MultiPoly, Ring, monomials_of_degree, monomials_up_to

VARS = ("x", "y", "z")


def ring(p: int, d: int) -> Ring:
    return Ring(FieldSpec(p), VARS[:d])


def rand_coeff(rng: random.Random, p: int):
    if p:
        return rng.randrange(p)
    return Fraction(rng.randint(-9, 9), rng.choice((1, 1, 2, 3)))


def rand_poly(rng: random.Random, R: Ring, max_deg: int, terms: int = 5) -> MultiPoly:
    mons = monomials_up_to(R.ngens, max_deg)
    return MultiPoly(R, {rng.choice(mons): rand_coeff(rng, R.field.p) for _ in range(rng.randint(0, terms))})


def rand_form(rng: random.Random, R: Ring, deg: int, terms: int = 4) -> MultiPoly:
    mons = monomials_of_degree(R.ngens, deg)
    return MultiPoly(R, {rng.choice(mons): rand_coeff(rng, R.field.p) for _ in range(rng.randint(1, terms))})


def rand_linear(rng: random.Random, R: Ring) -> MultiPoly:
    return rand_form(rng, R, 1, R.ngens)


# -- oracles -------------------------------------------------------------------------


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def hasse_oracle(f: MultiPoly, alpha) -> MultiPoly:
    """Coefficient extraction from the integer binomial expansion."""
    terms = {}
    for e, c in f.terms.items():
        if any(a > b for a, b in zip(alpha, e)):
            continue
        mult = 1
        for a, b in zip(alpha, e):
            mult *= binom(b, a)
        new = tuple(b - a for a, b in zip(alpha, e))
        terms[new] = terms.get(new, 0) + c * mult
    return MultiPoly(f.ring, terms)


def rank_oracle(rows, p: int) -> int:
    """Plain Gaussian elimination on dense lists, over F_p or Q (p = 0)."""
    m = [[Fraction(x) if not p else x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p) if p else 1 / m[rank][c]
        m[rank] = [(x * inv) % p if p else x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [((a - f * b) % p) if p else a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def span_oracle(vectors, p: int, cap: int | None = None):
    """Every F_p-combination of ``vectors`` as a set of tuples; None past ``cap``."""
    if not vectors:
        return set()
    zero = tuple(0 for _ in vectors[0])
    seen = {zero}
    for v in vectors:
        if tuple(v) in seen:
            continue
        grown = set(seen)
        for s in seen:
            for c in range(1, p):
                grown.add(tuple((a + c * b) % p for a, b in zip(s, v)))
        seen = grown
        if cap is not None and len(seen) > cap:
            return None
    return seen


def dense(f: MultiPoly, mons) -> tuple:
    return tuple(f.terms.get(m, 0) for m in mons)


def all_points(p: int, d: int):
    return itertools.product(range(p), repeat=d)
