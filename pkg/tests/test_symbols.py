import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from metator.errors import BadCharacteristic, ParseError, ZeroFunction
from metator.fields import GF, DlogTable, power_class
from metator.symbols import (LocalElement, RationalFunction, infinite_place, is_eth_power,
                             local_symbol, monic_factors, parse_place, parse_rational,
                             place_from_poly, point_place, random_polynomial, random_rational,
                             rational_localize, reciprocity_check, support, tame_symbol)

from oracles import local_data, tame_symbol_series

F5 = GF(5)


def le(k, v, *coeffs):
    return LocalElement(k, v, tuple(k.from_int(c) for c in coeffs))


@st.composite
def local_elements(draw, k=F5, T=3, vmax=3):
    v = draw(st.integers(-vmax, vmax))
    lead = draw(st.integers(1, k.size - 1))
    rest = [draw(st.integers(0, k.size - 1)) for _ in range(T - 1)]
    return LocalElement(k, v, tuple([lead] + rest))


def test_symbol_examples():
    t = le(F5, 1, 1)
    assert tame_symbol(t, t) == F5(-1)
    assert tame_symbol(le(F5, 0, 2, 1), le(F5, 0, 3)) == F5(1)
    # f = 2t^2, g = 3t: frozen from the series oracle
    assert tame_symbol_series(2, [2], 1, [3], 5) == 2
    assert tame_symbol(le(F5, 2, 2), le(F5, 1, 3)) == F5(2)


@settings(max_examples=200, deadline=None)
@given(local_elements(T=4), local_elements(T=4))
def test_symbol_matches_series_oracle(f, g):
    unit = lambda x: [c for c in x.coeffs]  # noqa: E731
    assert tame_symbol(f, g).v == tame_symbol_series(f.valuation, unit(f), g.valuation, unit(g), 5)


@settings(max_examples=500, deadline=None)
@given(local_elements(), local_elements(), local_elements())
def test_symbol_bimultiplicative_and_skew(f1, f2, g):
    assert tame_symbol(f1 * f2, g) == tame_symbol(f1, g) * tame_symbol(f2, g)
    assert tame_symbol(g, f1 * f2) == tame_symbol(g, f1) * tame_symbol(g, f2)
    assert tame_symbol(f1, g) * tame_symbol(g, f1) == F5(1)


@settings(max_examples=200, deadline=None)
@given(local_elements(T=4, vmax=3))
def test_steinberg(f):
    one = LocalElement.one(F5, f.precision)
    if f.valuation > 0:
        # 1 - f is a unit with constant term 1
        coeffs = [0] * f.precision
        coeffs[0] = 1
        for i, c in enumerate(f.coeffs):
            if f.valuation + i < f.precision:
                coeffs[f.valuation + i] = (coeffs[f.valuation + i] - c) % 5
        assert tame_symbol(f, LocalElement(F5, 0, tuple(coeffs))) == F5(1)
    elif f.valuation == 0 and f.lc != 1:
        g = LocalElement(F5, 0, tuple((o - c) % 5 for o, c in zip(one.coeffs, f.coeffs)))
        assert tame_symbol(f, g) == F5(1)


@settings(max_examples=100, deadline=None)
@given(local_elements(T=4), local_elements(T=4), st.integers(1, 4))
def test_truncation_stability(f, g, T):
    assert tame_symbol(f, g) == tame_symbol(f.truncate(T), g.truncate(T))


def test_localize_examples():
    t = RationalFunction.t(F5)
    zero, inf = point_place(F5, 0), infinite_place(F5)
    at0 = rational_localize(t, zero)
    assert (at0.valuation, at0.coeffs) == (1, (1, 0, 0, 0))
    atinf = rational_localize(t, inf)
    assert (atinf.valuation, atinf.coeffs) == (-1, (1, 0, 0, 0))
    h = parse_rational("(t-1)/t^2", F5)
    loc = rational_localize(h, zero)
    assert local_data([4, 1], [0, 0, 1], 0, 5) == (-2, 4)
    assert (loc.valuation, loc.coeffs) == (-2, (4, 1, 0, 0))
    with pytest.raises(ZeroFunction):
        rational_localize(RationalFunction(F5, [0]), zero)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_localize_leading_data_matches_oracle(seed):
    rng = random.Random(seed)
    h = random_rational(F5, rng, 3)
    if h.is_zero():
        return
    for a in [0, 1, 2, 3, 4, None]:
        x = infinite_place(F5) if a is None else point_place(F5, a)
        loc = rational_localize(h, x, 2)
        assert (loc.valuation, loc.lc) == local_data(list(h.num), list(h.den), a, 5)


def test_reciprocity_examples():
    t = RationalFunction.t(F5)
    prod, local = reciprocity_check(t, RationalFunction.linear(F5, 1))
    by_label = {x.label(): v for x, v in local.items()}
    # frozen from local_data + tame_symbol_series at 0, 1 and infinity
    assert by_label == {"0": F5(4), "1": F5(1), "inf": F5(4)}
    assert prod == F5(1)
    prod, local = reciprocity_check(RationalFunction.constant(F5, 2), RationalFunction.constant(F5, 3))
    assert prod == F5(1) and all(v == F5(1) for v in local.values())


@pytest.mark.parametrize("q", [5, 7, 9, 13])
def test_reciprocity_random_monic(q):
    k = GF(3, 2) if q == 9 else GF(q)
    rng = random.Random(q)
    for _ in range(60):
        f = RationalFunction(k, random_polynomial(k, rng, 4, monic=True))
        g = RationalFunction(k, random_polynomial(k, rng, 4, monic=True))
        assert reciprocity_check(f, g)[0].v == k.one


def test_reciprocity_with_higher_degree_places():
    # t^2 + 2 is irreducible over F_5, giving a degree-2 place
    f = RationalFunction(F5, [2, 0, 1])
    g = RationalFunction(F5, [1, 1], [3, 0, 1])   # (t+1)/(t^2+3)
    prod, local = reciprocity_check(f, g)
    assert any(x.degree == 2 for x in local)
    assert prod == F5(1)


def test_is_eth_power_examples():
    assert is_eth_power(le(F5, 2, 1), 2)
    assert not is_eth_power(le(F5, 1, 1), 2)
    # 2 is a non-square mod 5
    assert power_class(F5(2), 2, DlogTable(F5)) == 1
    assert not is_eth_power(le(F5, 0, 2, 2), 2)
    with pytest.raises(BadCharacteristic):
        is_eth_power(le(F5, 0, 1), 5)


@settings(max_examples=100, deadline=None)
@given(local_elements(T=3), st.sampled_from([1, 2, 4]))
def test_power_is_power(f, e):
    assert is_eth_power(f ** e, e)


def test_is_eth_power_bruteforce():
    """Compare against all e-th powers of elements with |v| <= 2 at precision 2."""
    elements = [LocalElement(F5, v, (a, b)) for v in range(-2, 3) for a in range(1, 5) for b in range(5)]
    for e in (2, 4):
        powers = set()
        for x in itertools.product(range(-1, 2), range(1, 5), range(5)):
            y = LocalElement(F5, x[0], (x[1], x[2])) ** e
            powers.add((y.valuation, y.coeffs))
        for f in elements:
            if abs(f.valuation) <= e:
                assert is_eth_power(f, e) == ((f.valuation, f.coeffs) in powers), (f, e)


def test_parse_rational():
    h = parse_rational("(t^2 + 3)/(2*t - 1)", F5)
    # den is made monic: 2t - 1 = 2(t - 3)
    assert h == RationalFunction(F5, [3, 0, 1], [4, 2])
    assert parse_rational("t", F5) == RationalFunction.t(F5)
    for bad in ["t +", "1/(5*t)", "t/2.5", "sin(t)"]:
        with pytest.raises(ParseError):
            parse_rational(bad, F5)


def test_places_and_support():
    assert parse_place(F5, "inf").is_infinite
    x = place_from_poly(F5, [2, 0, 1])
    assert x.degree == 2
    with pytest.raises(ValueError):
        place_from_poly(F5, [4, 0, 1])   # t^2 - 1 factors
    h = RationalFunction(F5, [4, 0, 1], [0, 1])
    assert {p.label() for p in support(h)} == {"0", "1", "4", "inf"}
    assert sorted(len(p) - 1 for p in monic_factors(F5, [0, 0, 2, 0, 1])) == [1, 2]


def test_local_symbol_reads_leading_data_only():
    f = parse_rational("t*(t+1)", F5)
    g = parse_rational("t^3 - 2", F5)
    x = point_place(F5, 0)
    assert local_symbol(f, g, x) == tame_symbol(rational_localize(f, x, 6), rational_localize(g, x, 6))
