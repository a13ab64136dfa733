import random

import pytest
from hypothesis import given, settings, strategies as st

from metator.errors import NotEven, NotSymmetric
from metator.lattice import (determinant, e_values, in_sharp_bruteforce, mat_mul, quotient_coords,
                             residual_pairing, sharp_sublattice, smith_dual_bases, smith_form,
                             transpose, validate_form)

from oracles import determinantal_divisors, sharp_members


def even_forms(max_rank=3, bound=6):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_rank))
        M = [[0] * r for _ in range(r)]
        for i in range(r):
            M[i][i] = 2 * draw(st.integers(-bound, bound))
            for j in range(i + 1, r):
                M[i][j] = M[j][i] = draw(st.integers(-bound, bound))
        return M
    return build()


def test_validate_form_examples():
    assert validate_form([[2]]).matrix == ((2,),)
    assert validate_form([[2, 1], [1, 2]]).rank == 2
    with pytest.raises(NotEven):
        validate_form([[1]])
    with pytest.raises(NotSymmetric):
        validate_form([[2, 1], [0, 2]])


def test_smith_examples():
    assert smith_dual_bases(validate_form([[2]])).d == [2]
    assert smith_dual_bases(validate_form([[0]])).d == [0]
    # gcd of entries 1, determinant 3
    assert smith_dual_bases(validate_form([[2, 1], [1, 2]])).d == determinantal_divisors([[2, 1], [1, 2]]) == [1, 3]


@settings(max_examples=80, deadline=None)
@given(even_forms())
def test_dual_bases_diagonalize(M):
    form = validate_form(M)
    pair = smith_dual_bases(form)
    D = mat_mul(mat_mul(transpose(pair.eps), M), pair.eta)
    r = form.rank
    assert all(D[i][j] == (pair.d[i] if i == j else 0) for i in range(r) for j in range(r))
    assert abs(determinant(pair.eps)) == 1 and abs(determinant(pair.eta)) == 1
    nz = [d for d in pair.d if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert pair.d == determinantal_divisors(M)


def test_smith_form_zeros_last():
    U, D, V = smith_form([[0, 0], [0, 4]])
    assert [D[0][0], D[1][1]] == [4, 0]


@pytest.mark.parametrize("n", range(1, 13))
def test_rank_one_elementary_value(n):
    sharp = sharp_sublattice(validate_form([[2]]), n)
    assert sharp.index == (n if n % 2 else n // 2)


def test_e_values_examples():
    assert e_values([2], 4) == ([2], 2)
    assert e_values([0], 7) == ([1], 1)
    es, _ = e_values([6], 4)
    scan = next(e for e in range(1, 10) if 6 * e % 4 == 0)
    assert es == [scan] == [2]


def test_sharp_examples():
    assert sharp_sublattice(validate_form([[2]]), 3).sharp_basis == [[3]]
    sh = sharp_sublattice(validate_form([[2, 1], [1, 2]]), 3)
    assert sh.e == [3, 1] and sh.index == 3
    assert sharp_sublattice(validate_form([[2, 1], [1, 2]]), 1).index == 1


@settings(max_examples=40, deadline=None)
@given(even_forms(max_rank=2, bound=4), st.integers(1, 6))
def test_sharp_membership_matches_definition(M, n):
    form = validate_form(M)
    sh = sharp_sublattice(form, n)
    members = sharp_members(M, n, 2 * n)
    for mu in members:
        assert sh.contains(mu)
    rng = random.Random(1)
    for _ in range(200):
        mu = tuple(rng.randint(-3 * n, 3 * n) for _ in range(form.rank))
        assert sh.contains(mu) == in_sharp_bruteforce(form, n, mu)


@settings(max_examples=40, deadline=None)
@given(even_forms(max_rank=3, bound=5), st.integers(1, 8))
def test_coprimality_of_elementary_values(M, n):
    sh = sharp_sublattice(validate_form(M), n)
    from math import gcd
    for d, e in zip(sh.d, sh.e):
        if d:
            assert d * e % n == 0 and gcd(e, d * e // n) == 1


def test_residual_pairing_examples():
    rp = residual_pairing(validate_form([[2]]), 4)
    assert rp.quotient == [2] and rp.beta == [[2]]
    assert rp.radical() == [(0,)]
    assert residual_pairing(validate_form([[2]]), 1).quotient == []
    rp3 = residual_pairing(validate_form([[2, 1], [1, 2]]), 3)
    assert rp3.quotient == [3] and len(rp3.radical()) == 1


@settings(max_examples=40, deadline=None)
@given(even_forms(max_rank=2, bound=4), st.integers(2, 6), st.data())
def test_residual_pairing_well_defined(M, n, data):
    form = validate_form(M)
    sh = sharp_sublattice(form, n)
    rp = residual_pairing(form, n, sh)
    r = form.rank
    mu = [data.draw(st.integers(-5, 5)) for _ in range(r)]
    nu = [data.draw(st.integers(-5, 5)) for _ in range(r)]
    a = [data.draw(st.integers(-2, 2)) for _ in range(r)]
    lam = [sum(sh.sharp_basis[i][j] * a[j] for j in range(r)) for i in range(r)]
    shifted = [x + y for x, y in zip(mu, lam)]
    assert form(mu, nu) % n == form(shifted, nu) % n
    assert quotient_coords(sh, rp, mu) == quotient_coords(sh, rp, shifted)
    assert rp.pair(quotient_coords(sh, rp, mu), quotient_coords(sh, rp, nu)) == form(mu, nu) % n
