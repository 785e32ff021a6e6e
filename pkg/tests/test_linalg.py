import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from helpers import rank_oracle

from rees_tau.linalg import Echelon, nullspace, rank, rref_mod_p, solve
from rees_tau.polyring import FieldSpec

Q = FieldSpec(0)


def _rand_rows(rng, n, m, p, density=0.5):
    rows = []
    for _ in range(n):
        r = {c: (rng.randrange(1, p) if p else Fraction(rng.randint(-5, 5), rng.randint(1, 3))) for c in range(m) if rng.random() < density}
        rows.append({c: v for c, v in r.items() if v})
    return rows


def _dense(rows, m):
    return [[r.get(c, 0) for c in range(m)] for r in rows]


@pytest.mark.parametrize("seed", range(20))
def test_rank_over_q_matches_sympy(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 7), rng.randint(1, 7)
    rows = _rand_rows(rng, n, m, 0)
    assert rank(rows, Q) == sympy.Matrix(_dense(rows, m)).rank()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rank_mod_p_matches_oracle(p):
    rng = random.Random(p)
    for _ in range(30):
        n, m = rng.randint(1, 8), rng.randint(1, 8)
        rows = _rand_rows(rng, n, m, p)
        assert rank(rows, FieldSpec(p)) == rank_oracle(_dense(rows, m), p)
        dense = rref_mod_p(np.array(_dense(rows, m), dtype=np.int64).reshape(n, m), p)
        assert dense.shape[0] == rank_oracle(_dense(rows, m), p)


@pytest.mark.parametrize("p", [0, 2, 3])
def test_nullspace_is_a_complement(p):
    rng = random.Random(10 + p)
    fld = FieldSpec(p)
    for _ in range(30):
        n, m = rng.randint(0, 6), rng.randint(1, 6)
        rows = _rand_rows(rng, n, m, p)
        ns = nullspace(rows, m, fld)
        assert len(ns) == m - rank(rows, fld)
        for v in ns:
            for r in rows:
                assert fld.norm(sum(c * v[k] for k, c in r.items())) == 0
        assert rank([{k: x for k, x in enumerate(v) if x} for v in ns], fld) == len(ns)


def test_echelon_contains_and_solve():
    e = Echelon(Q, [{0: 1, 1: 1}, {1: 2}])
    assert len(e) == 2
    assert e.contains({0: 3})
    assert not e.add({0: 5, 1: 5})
    cols = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(2)}]
    x = solve(cols, {0: Fraction(3), 1: Fraction(7)}, Q)
    assert x == [3, 2]
    assert solve(cols, {2: Fraction(1)}, Q) is None


def test_rref_mod_p_is_reduced():
    m = np.array([[2, 4, 1], [1, 2, 2], [0, 0, 3]])
    r = rref_mod_p(m, 5)
    assert r.tolist() == [[1, 2, 0], [0, 0, 1]]
