import itertools

import pytest

from metator.cyclotomic import cyc_field, value_order
from metator.errors import NoExtension, NotSharp
from metator.hecke import (HeckeElement, LatticeCharacter, LocalCharacter, LocalHecke, extend_local,
                           group_algebra_mul, satake, satake_inverse, sharp_box, spherical_eigenvalue)
from metator.extension import Extension, choose_B
from metator.fields import GF
from metator.lattice import sharp_sublattice, validate_form
from metator.linalg import rank
from metator.symbols import point_place

from setups import session

CASES = [(17, 4, [[2]]), (7, 3, [[2, 1], [1, 2]]), (17, 4, [[4, 2], [2, 6]])]


def hecke(q, n, kappa):
    s = session(q, n, kappa)
    return s, LocalHecke(s.form, s.sharp, s.ext1, s.cyc, s.places[0])


@pytest.mark.parametrize("case", CASES)
def test_h_exists_matches_sharp(case):
    s, H = hecke(*case)
    r = s.form.rank
    for lam in itertools.product(range(-4, 5), repeat=r):
        assert H.h_exists(lam) == s.sharp.contains(lam)


def test_convolution_examples():
    s, H = hecke(17, 4, [[2]])
    h2, h4 = H.basis((2,)), H.basis((4,))
    assert H.convolve(h2, h2) == h4
    unit = H.basis((0,))
    assert H.convolve(unit, h2) == h2 == H.convolve(h2, unit)
    h_2 = H.basis((-2,))
    assert H.convolve(H.convolve(h2, h4), h_2) == H.convolve(h2, H.convolve(h4, h_2))
    assert H.convolve(h2, h4) == H.convolve(h4, h2)
    assert H.support_rigid((2,), (-4,), radius=2)
    with pytest.raises(NotSharp):
        H.basis((1,))


@pytest.mark.parametrize("case", CASES)
def test_satake_round_trip(case):
    s, H = hecke(*case)
    box = sharp_box(s.sharp, 1)
    a = HeckeElement({box[0]: s.cyc.one(), box[-1]: s.cyc.zeta_power(1)})
    b = HeckeElement({box[1]: s.cyc.zeta_power(2)})
    assert satake_inverse(satake(a)) == a
    assert satake(H.convolve(a, b)) == group_algebra_mul(satake(a), satake(b))


def test_spherical_eigenvalue_examples():
    s, H = hecke(17, 4, [[2]])
    assert s.cyc.N == 16
    chi = LocalCharacter(16, (4,))   # chi(2) = zeta_4 = z^4
    assert spherical_eigenvalue((0,), chi, s.sharp, s.cyc) == s.cyc.one()
    assert spherical_eigenvalue((2,), chi, s.sharp, s.cyc) == s.cyc.zeta_power(-4)
    assert spherical_eigenvalue((4,), chi, s.sharp, s.cyc) == s.cyc.zeta_power(-8)
    with pytest.raises(NotSharp):
        spherical_eigenvalue((1,), chi, s.sharp, s.cyc)
    chibar = extend_local(chi, s.sharp)
    assert chibar.values == (2,)
    for lam in [(2,), (-2,), (4,)]:
        assert H.spherical_eigenvalue_model(lam, chibar) == spherical_eigenvalue(lam, chi, s.sharp, s.cyc)
    with pytest.raises(NoExtension):
        extend_local(LocalCharacter(16, (3,)), s.sharp)


@pytest.mark.parametrize("case", CASES[:2])
def test_path_model_matches_box_model(case):
    s, H = hecke(*case)
    chi = LocalCharacter(s.cyc.N, tuple(ei % s.cyc.N for ei in s.sharp.e))
    chibar = extend_local(chi, s.sharp)
    for lam in sharp_box(s.sharp, 1):
        assert H.spherical_eigenvalue_model(lam, chibar) == H.spherical_eigenvalue_model(lam, chibar, box=max(map(abs, lam)))
        assert H.spherical_eigenvalue_model(lam, chibar) == spherical_eigenvalue(lam, chi, s.sharp, s.cyc)


@pytest.mark.parametrize("case,dim", [((17, 4, [[2]]), 2), ((5, 2, [[2]]), 1), ((7, 3, [[2, 1], [1, 2]]), 3),
                                      ((17, 4, [[4, 2], [2, 6]]), 4)])
def test_local_dimension(case, dim):
    s, H = hecke(*case)
    assert H.local_dimension() == dim
    assert H.spherical_dimension() == 1


def raw_hecke(q, n, kappa):
    """Built without the session checks, so fields failing the -1 condition are allowed."""
    form = validate_form(kappa)
    k = GF(q)
    return LocalHecke(form, sharp_sublattice(form, n), Extension(k, n, choose_B(form), T=1),
                      cyc_field(value_order(n, q)), point_place(k, 0))


@pytest.mark.parametrize("case", [(5, 4, [[2]]), (7, 3, [[2]]), (5, 2, [[2]])])
def test_induced_system_rank_matches_elimination(case):
    H = raw_hecke(*case)
    chibar = LatticeCharacter(H.cyc.N, (0,))
    for spherical in (False, True):
        sys, index = H.induced_system(chibar, box=1, spherical=spherical)
        rows = sys.matrix(H.cyc)
        assert sys.dimension() == len(index) - rank(rows, len(index), H.cyc)
