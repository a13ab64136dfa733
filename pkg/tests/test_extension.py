import random

import pytest
from hypothesis import given, settings, strategies as st

from metator.errors import NotIntegral, SupportViolation
from metator.extension import (AdelePoint, ExtElement, Extension, RationalTorusPoint, center_test,
                               check_B, choose_B, random_point)
from metator.fields import GF
from metator.lattice import sharp_sublattice, validate_form
from metator.symbols import LocalElement, RationalFunction, infinite_place, point_place

F5 = GF(5)
F17 = GF(17)
S5 = [point_place(F5, 0), point_place(F5, 1), infinite_place(F5)]


def test_choose_B():
    form = validate_form([[4, 2], [2, 6]])
    B = choose_B(form)
    assert B == ((2, 2), (0, 3))
    assert check_B(B, form)
    assert not check_B(((2, 1), (0, 3)), form)


def test_cocycle_example():
    # (t, 2) at 0: symbol 2, log base 2 is 1; reversed order gives 2^-1 = 3, log 3
    ext = Extension(F5, 4, [[1]])
    x = point_place(F5, 0)
    t = AdelePoint.monomial(x, [1])
    two = AdelePoint.from_local(x, [LocalElement.constant(F5, 2)])
    assert ext.cocycle(t, two) == 1
    assert ext.cocycle(two, t) == 3
    assert ext.commutator(ExtElement(0, t), ExtElement(0, two)) == 2


def ext_cases():
    return st.sampled_from([
        (F5, 4, [[1]]),
        (F5, 2, [[1, 1], [0, 1]]),
        (F17, 4, [[2, 2], [0, 3]]),
        (GF(7), 3, [[1, 1], [0, 1]]),
    ])


@settings(max_examples=60, deadline=None)
@given(ext_cases(), st.integers(0, 10 ** 6))
def test_group_laws(case, seed):
    k, n, B = case
    ext = Extension(k, n, B, T=3)
    rng = random.Random(seed)
    S = [point_place(k, 0), point_place(k, 1), infinite_place(k)]
    a, b, c = (ExtElement(rng.randrange(n), random_point(len(B), S, rng, 3)) for _ in range(3))
    one = ext.identity()
    assert ext.mul(one, a) == a == ext.mul(a, one)
    assert ext.mul(ext.mul(a, b), c) == ext.mul(a, ext.mul(b, c))
    assert ext.mul(a, ext.inv(a)) == one
    g1, g2, g3 = a.point, b.point, c.point
    assert (ext.cocycle(g1, g2) + ext.cocycle(g1 * g2, g3)
            - ext.cocycle(g1, g2 * g3) - ext.cocycle(g2, g3)) % n == 0


@settings(max_examples=60, deadline=None)
@given(ext_cases(), st.integers(0, 10 ** 6))
def test_commutator_three_ways(case, seed):
    k, n, B = case
    ext = Extension(k, n, B, T=3)
    rng = random.Random(seed)
    S = [point_place(k, 0), infinite_place(k)]
    a, b = (ExtElement(0, random_point(len(B), S, rng, 3)) for _ in range(2))
    c = ext.commutator(a, b)
    assert c == ext.commutator_group_law(a, b) == ext.commutator_kappa(a, b)
    assert (c + ext.commutator(b, a)) % n == 0
    assert ext.cocycle(a.point, b.point, fast=True) == ext.cocycle(a.point, b.point)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_commutator_independent_of_B(seed):
    rng = random.Random(seed)
    k = GF(7)
    S = [point_place(k, 0), infinite_place(k)]
    e1 = Extension(k, 3, [[1, 1], [0, 1]], T=2)
    e2 = Extension(k, 3, [[1, 0], [1, 1]], T=2)
    a, b = (ExtElement(0, random_point(2, S, rng, 2)) for _ in range(2))
    assert e1.commutator(a, b) == e2.commutator(a, b)


def test_splittings():
    ext = Extension(F5, 4, [[1]])
    x = point_place(F5, 0)
    with pytest.raises(NotIntegral):
        ext.split_integral(AdelePoint.monomial(x, [1]))
    h = RationalTorusPoint((RationalFunction.constant(F5, 3),))
    rat = ext.split_rational(h, S5)
    assert rat == ext.split_integral(rat.point)
    with pytest.raises(SupportViolation):
        ext.split_rational(RationalTorusPoint((RationalFunction.linear(F5, 2),)), S5)
    with pytest.raises(SupportViolation):
        ext.split_rational(RationalTorusPoint((RationalFunction.t(F5),)), [point_place(F5, 0)])


def test_rational_splitting_is_a_homomorphism():
    # the cocycle on localized rational points is a coboundary of zero: f(h1, h2) = 0
    ext = Extension(F5, 4, [[1]])
    h1 = RationalTorusPoint((RationalFunction.t(F5),))
    h2 = RationalTorusPoint((RationalFunction.linear(F5, 1),))
    p1, p2 = ext.localize(h1, S5), ext.localize(h2, S5)
    assert ext.cocycle(p1, p2) == 0
    prod = RationalTorusPoint((RationalFunction(F5, [0, -1 % 5, 1]),))   # t (t - 1)
    assert ext.localize(prod, S5) == p1 * p2


def test_center_test():
    sharp = sharp_sublattice(validate_form([[2]]), 4)
    x = point_place(F17, 0)
    assert not center_test(AdelePoint.monomial(x, [1]), sharp)
    assert center_test(AdelePoint.monomial(x, [2]), sharp)
    ext = Extension(F17, 4, [[1]], T=2)
    rng = random.Random(5)
    S = [x, infinite_place(F17)]
    found = 0
    for _ in range(200):
        g = random_point(1, S, rng, 2)
        if center_test(g, sharp):
            found += 1
            for _ in range(5):
                h = random_point(1, S, rng, 2)
                assert ext.commutator(ExtElement(0, g), ExtElement(0, h)) == 0
    assert found > 0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_coordinate_cocycle_matches_symbols(seed):
    from metator.hecke import LocalHecke
    from metator.cyclotomic import cyc_field, value_order
    rng = random.Random(seed)
    form = validate_form([[4, 2], [2, 6]])
    sharp = sharp_sublattice(form, 4)
    ext = Extension(F17, 4, choose_B(form), T=1)
    H = LocalHecke(form, sharp, ext, cyc_field(value_order(4, 17)), point_place(F17, 0))
    x = (0, tuple(rng.randint(-3, 3) for _ in range(2)), tuple(rng.randrange(16) for _ in range(2)))
    y = (0, tuple(rng.randint(-3, 3) for _ in range(2)), tuple(rng.randrange(16) for _ in range(2)))
    gx, gy = H.coord_element(x).point, H.coord_element(y).point
    assert H.coord_cocycle(x[1:], y[1:]) == ext.cocycle(gx, gy)
    prod = H.coord_mul(x, y)
    assert H.coord_element(prod) == ext.mul(H.coord_element(x), H.coord_element(y))
