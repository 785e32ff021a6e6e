import random

import pytest
from helpers import all_points, rand_form, ring
from hypothesis import given
from hypothesis import strategies as st

from rees_tau.diffsat import diff_saturate
from rees_tau.polyring import FieldSpec, Ring, order_at_origin
from rees_tau.rees import (
    PolyIdeal,
    PreconditionError,
    ReesAlgebra,
    check_integral_equiv_desk,
    degree_slices,
    enumerate_sing,
    graded_piece,
    ideal_contains,
    ideal_contains_truncated,
    in_sing_locus,
    odot,
    radical_contains,
    veronese,
    weight_solutions,
)

Q_XY = Ring(FieldSpec(0), ("x", "y"))
Q_X = Ring(FieldSpec(0), ("x",))


def alg(R, *pairs):
    return ReesAlgebra.from_pairs(R, pairs)


def gen_set(g):
    return {(x.f, x.n) for x in g.gens}


# -- odot, graded pieces, Veronese ---------------------------------------------------------


def test_odot_examples():
    a, b = alg(Q_XY, ("x", 1)), alg(Q_XY, ("y", 2))
    assert gen_set(odot(a, b)) == gen_set(alg(Q_XY, ("x", 1), ("y", 2)))
    g = alg(Q_XY, ("x^2 + y", 2), ("x", 1))
    assert gen_set(odot(g, g)) == gen_set(g)
    assert len(odot(a, a).gens) == 1
    with pytest.raises(ValueError):
        odot(a, alg(Q_X, ("x", 1)))


def test_weight_solutions():
    assert sorted(weight_solutions([1, 2], 2)) == [(0, 1), (2, 0)]
    assert weight_solutions([2], 3) == []
    assert weight_solutions([], 0) == [()]


def test_graded_piece_examples():
    g = alg(Q_XY, ("x", 1), ("y^2", 2))
    assert set(graded_piece(g, 2).gens) == {Q_XY.parse("x^2"), Q_XY.parse("y^2")}
    f = alg(Q_XY, ("x^3 + y^2", 2))
    assert graded_piece(f, 3).gens == ()
    assert graded_piece(f, 4).gens == (Q_XY.parse("(x^3 + y^2)^2"),)


def test_veronese_examples():
    g = alg(Q_XY, ("x", 1), ("y^2", 2))
    assert gen_set(veronese(g, 2)) == {(Q_XY.parse("x^2"), 2), (Q_XY.parse("y^2"), 2)}
    f = alg(Q_XY, ("x^3 + y^2", 2))
    assert gen_set(veronese(f, 2)) == gen_set(f)
    assert gen_set(veronese(alg(Q_X, ("x", 1)), 3)) == {(Q_X.parse("x^3"), 3)}
    with pytest.raises(PreconditionError):
        veronese(f, 3)


# -- singular locus ----------------------------------------------------------------------


def test_in_sing_locus_examples():
    g = alg(Q_X, ("x^2", 2))
    assert in_sing_locus(g, (0,))
    assert not in_sing_locus(g, (1,))
    with pytest.raises(ValueError):
        in_sing_locus(g, (0, 0))


def test_enumerate_sing_examples():
    R = Ring(FieldSpec(5), ("x", "z"))
    assert enumerate_sing(alg(R, ("z^2 - x^3", 2))) == [(0, 0)]
    assert enumerate_sing(alg(Ring(FieldSpec(3), ("x",)), ("x^2", 2))) == [(0,)]
    assert enumerate_sing(alg(R, ("1", 1))) == []
    R2 = Ring(FieldSpec(2), ("x", "y"))
    assert enumerate_sing(alg(R2, ("x*y", 1))) == [(0, 0), (0, 1), (1, 0)]


def test_enumerate_sing_preconditions():
    with pytest.raises(PreconditionError):
        enumerate_sing(alg(Q_X, ("x", 1)))
    big = Ring(FieldSpec(101), ("a", "b", "c", "d"))
    with pytest.raises(PreconditionError):
        enumerate_sing(alg(big, ("a", 1)))


def _sing_by_orders(g):
    # independent: translate and read off orders
    from rees_tau.polyring import translate

    F = g.ring.field
    return [pt for pt in all_points(F.p, g.ring.ngens) if all(order_at_origin(translate(x.f, pt)) >= x.n for x in g.gens)]


@st.composite
def finite_algebras(draw, p=None, d=None):
    p = draw(st.sampled_from([2, 3, 5])) if p is None else p
    d = draw(st.integers(1, 2)) if d is None else d
    R = ring(p, d)
    rng = random.Random(draw(st.integers(0, 10**6)))
    pairs = []
    for _ in range(draw(st.integers(1, 3))):
        f = rand_form(rng, R, rng.randint(1, 3)) + rand_form(rng, R, rng.randint(1, 4))
        if not f.is_zero():
            pairs.append((f, rng.randint(1, 3)))
    return ReesAlgebra.from_pairs(R, pairs)


@given(finite_algebras())
def test_sing_taylor_criterion_matches_orders(g):
    assert enumerate_sing(g) == _sing_by_orders(g)


@given(st.data())
def test_sing_of_odot_is_intersection(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    d = data.draw(st.integers(1, 2))
    g1 = data.draw(finite_algebras(p, d))
    g2 = data.draw(finite_algebras(p, d))
    assert set(enumerate_sing(odot(g1, g2))) == set(enumerate_sing(g1)) & set(enumerate_sing(g2))


@given(finite_algebras())
def test_sing_of_veronese(g):
    N = g.lcm_weights()
    for k in (1, 2):
        if N * k <= 6:
            assert enumerate_sing(veronese(g, N * k)) == enumerate_sing(g)


@given(finite_algebras())
def test_sing_unchanged_by_saturation(g):
    assert enumerate_sing(diff_saturate(g)) == enumerate_sing(g)


@given(finite_algebras())
def test_origin_criterion_is_generatorwise(g):
    origin = (0,) * g.ring.ngens
    assert in_sing_locus(g, origin) == all(order_at_origin(x.f) >= x.n for x in g.gens)


def test_sing_of_suite_veronese(suite):
    for m in suite:
        g = m.algebra
        if g.ring.field.p and g.ring.field.p ** g.ring.ngens <= 3**6:
            assert enumerate_sing(veronese(g, g.lcm_weights())) == enumerate_sing(g), m.name


# -- membership -------------------------------------------------------------------------


def test_ideal_contains_examples():
    I = PolyIdeal(Q_XY, (Q_XY.parse("x^2"), Q_XY.parse("y^2")))
    assert ideal_contains(I, Q_XY.parse("x^2*y"))
    assert not ideal_contains(I, Q_XY.parse("x*y"))
    assert ideal_contains(PolyIdeal(Q_XY, ()), Q_XY.zero())
    with pytest.raises(ValueError):
        ideal_contains(I, Q_XY.parse("x^2 + x"))


def test_ideal_contains_needs_the_right_combination():
    # x*y*(x - y) = y*(x^2 - x*y) is in <x^2 - x*y, y^3> while x*y^2 is not
    I = PolyIdeal(Q_XY, (Q_XY.parse("x^2 - x*y"), Q_XY.parse("y^3")))
    assert ideal_contains(I, Q_XY.parse("x^2*y - x*y^2"))
    assert not ideal_contains(I, Q_XY.parse("x*y^2"))


def test_radical_examples():
    I = PolyIdeal(Q_XY, (Q_XY.parse("x^2"),))
    assert radical_contains(I, Q_XY.parse("x"), 2)
    J = PolyIdeal(Q_XY, (Q_XY.parse("x^2"), Q_XY.parse("y^2")))
    assert radical_contains(J, Q_XY.parse("x + y"), 3)
    assert not radical_contains(J, Q_XY.parse("x + y"), 2)
    K = PolyIdeal(Q_XY, (Q_XY.parse("x*y"),))
    assert not radical_contains(K, Q_XY.parse("x"), 5)
    with pytest.raises(ValueError):
        radical_contains(K, Q_XY.parse("x"), 0)


def test_truncated_membership():
    gens = [Q_XY.parse("x - y^2")]
    assert ideal_contains_truncated(gens, Q_XY.parse("x^2 - y^4"), 4)
    assert not ideal_contains_truncated(gens, Q_XY.parse("x"), 4)


@pytest.mark.parametrize("p", [0, 3])
def test_degree_slices_agree_with_single_slices(p):
    from rees_tau.rees import degree_slice

    rng = random.Random(p)
    for _ in range(10):
        R = ring(p, 3)
        gens = [rand_form(rng, R, rng.randint(1, 3)) for _ in range(2)]
        gens = [g for g in gens if g]
        allk = degree_slices(gens, 5, R)
        for k in range(6):
            assert len(allk[k][1]) == len(degree_slice(gens, k, R))


# -- desk-scale integral equivalence -------------------------------------------------------


def test_integral_equiv_examples():
    g = alg(Q_X, ("x^2", 2))
    g2 = alg(Q_X, ("x^2", 2), ("x^3", 3))
    assert check_integral_equiv_desk(g, g2, 6).verdict == "consistent-with-equivalence"
    a, b = alg(Q_XY, ("x", 1)), alg(Q_XY, ("y", 1))
    assert check_integral_equiv_desk(a, b, 1).verdict == "refuted"
    with pytest.raises(PreconditionError):
        check_integral_equiv_desk(g, g2, 4)


def test_integral_equiv_with_veronese_on_suite(suite):
    for m in suite:
        g = m.algebra
        N = g.lcm_weights()
        assert check_integral_equiv_desk(g, veronese(g, N), N).consistent, m.name
