"""The eight acceptance criteria, each with its runtime limit.

Every test prints one line "ACCEPTANCE <n> PASS|FAIL ..." to the terminal
(bypassing capture) and then asserts.
"""

import itertools
import random
import time

import pytest

from metator.adelic import CosetModel
from metator.extension import (AdelePoint, ExtElement, Extension, RationalTorusPoint, random_local,
                               random_point)
from metator.fields import GF
from metator.hecke import LatticeCharacter, LocalHecke, sharp_box
from metator.heisenberg import build_model, report
from metator.lattice import in_sharp_bruteforce, residual_pairing, sharp_sublattice, validate_form
from metator.linalg import proportional
from metator.symbols import (RationalFunction, infinite_place, point_place, random_rational,
                             reciprocity_check, tame_symbol)

from setups import session


@pytest.fixture
def announce(capsys):
    def emit(number, name, ok, elapsed, limit, detail=""):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {status} {name}: {elapsed:.2f}s (limit {limit}s) {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"
        assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s"
    return emit


def test_criterion_1_reciprocity(announce):
    start = time.perf_counter()
    ok, pairs = True, 0
    for q in (5, 7, 13):
        k = GF(q)
        rng = random.Random(100 + q)
        done = 0
        while done < 200:
            f, g = random_rational(k, rng, 4), random_rational(k, rng, 4)
            if f.is_zero() or g.is_zero():
                continue
            ok &= reciprocity_check(f, g)[0].v == k.one
            done += 1
        pairs += done
    announce(1, "reciprocity", ok, time.perf_counter() - start, 5, f"pairs={pairs}")


def test_criterion_2_sharp_lattice(announce):
    start = time.perf_counter()
    ok = True
    form = validate_form([[2]])
    for n in range(1, 13):
        sh = sharp_sublattice(form, n)
        ok &= sh.e == [n if n % 2 else n // 2]
    rng = random.Random(2)
    checked = 0
    for _ in range(5):
        a, c = 2 * rng.randint(-4, 4), 2 * rng.randint(-4, 4)
        b = rng.randint(-4, 4)
        f = validate_form([[a, b], [b, c]])
        n = rng.randint(2, 6)
        sh = sharp_sublattice(f, n)
        side = 3 * n
        for mu in itertools.product(range(-(side // 2), side - side // 2), repeat=2):
            ok &= sh.contains(mu) == in_sharp_bruteforce(f, n, mu)
            checked += 1
    announce(2, "sharp sublattice", ok, time.perf_counter() - start, 10, f"box_points={checked}")


SATAKE_CASES = [(17, 4, [[2]]), (7, 3, [[2, 1], [1, 2]]), (17, 4, [[4, 2], [2, 6]])]


def test_criterion_3_satake(announce):
    start = time.perf_counter()
    ok, pairs = True, 0
    for q, n, kappa in SATAKE_CASES:
        s = session(q, n, kappa)
        H = LocalHecke(s.form, s.sharp, s.ext1, s.cyc, s.places[0])
        box = sharp_box(s.sharp, 4)
        basis = {lam: H.basis(lam) for lam in box}
        for lam in box:
            for mu in box:
                a = H.convolve_integral(basis[lam], basis[mu])
                b = H.convolve_shift(basis[lam], basis[mu])
                ok &= a == b == H.basis(tuple(x + y for x, y in zip(lam, mu)))
                pairs += 1
    announce(3, "satake", ok, time.perf_counter() - start, 10, f"pairs={pairs}")


def test_criterion_4_local_dimension(announce):
    start = time.perf_counter()
    ok = True
    dims = []
    for q, n, kappa in SATAKE_CASES + [(5, 2, [[2]])]:
        s = session(q, n, kappa)
        H = LocalHecke(s.form, s.sharp, s.ext1, s.cyc, s.places[0])
        sys, _ = H.induced_system(LatticeCharacter(s.cyc.N, (0,) * s.form.rank))
        e = 1
        for ei in s.sharp.e:
            e *= ei
        ok &= H.local_dimension() == e == sys.dimension()
        ok &= H.spherical_dimension() == 1
        dims.append(e)
    announce(4, "local dimension", ok, time.perf_counter() - start, 5, f"dims={dims}")


def test_criterion_5_theta(announce):
    start = time.perf_counter()
    s = session(17, 4, [[2]])
    m = CosetModel(s.form, s.sharp, s.ext1, s.cyc, s.places)
    chi = m.extend_character(s.default_chi())
    ok = True
    for mu in range(-6, 7):
        ok &= m.nonramified_space((mu,), chi)[0] == (1 if mu % 2 == 0 else 0)
    for mu in range(-6, 7, 2):
        dim, basis = m.nonramified_space((mu,), chi)
        th = m.theta(chi.chibar, (mu,))
        keys = sorted(th.values)
        vec = [s.cyc.zeta_power(basis[0][k]) if k in basis[0] else s.cyc.zero() for k in keys]
        c = proportional(th.vector(keys), vec)
        ok &= c is not None and not c.is_zero()
        for lam in (2, -2, 4, -4):
            for xi in range(len(m.S)):
                ok &= m.hecke_eigen_check(th, (lam,), xi, chi.chibar)
    orbits = m.orbit_count()
    ok &= orbits == 2
    announce(5, "theta on P^1", ok, time.perf_counter() - start, 30, f"orbits={orbits}")


def test_criterion_6_heisenberg(announce):
    start = time.perf_counter()
    ok = True
    rows = []
    for kappa, n in [([[2]], 4), ([[2, 1], [1, 2]], 3), ([[2, 0], [0, 2]], 4), ([[4, 2], [2, 6]], 4)]:
        rp = residual_pairing(validate_form(kappa), n)
        e = 1
        for x in rp.quotient:
            e *= x
        for g in (0, 1, 2):
            m = build_model(rp, g)
            assert m.gamma_order <= 4096
            r = report(m)
            eg = e ** g
            ok &= (r["nondegenerate"] and r["H_order"] == eg and r["irrep_dim"] == eg and r["irreducible"]
                   and r["central_irreps"] == 1 and r["multiplicity"] == eg)
            rows.append(f"{'x'.join(map(str, rp.quotient))}/g{g}:{r['irrep_dim']}")
    announce(6, "heisenberg", ok, time.perf_counter() - start, 60, " ".join(rows))


def test_criterion_7_B_independence(announce):
    start = time.perf_counter()
    ok = True
    for q, n, kappa, Bs in [(7, 3, [[2, 1], [1, 2]], ([[1, 1], [0, 1]], [[1, 0], [1, 1]])),
                            (17, 4, [[4, 2], [2, 6]], ([[2, 2], [0, 3]], [[2, 0], [2, 3]]))]:
        s = session(q, n, kappa)
        exts = [Extension(s.k, n, B, table=s.ext.table, T=1) for B in Bs]
        rng = random.Random(q)
        for _ in range(100):
            a, b = (ExtElement(0, random_point(2, s.places, rng, 1)) for _ in range(2))
            ok &= exts[0].commutator(a, b) == exts[1].commutator(a, b)
        models = [CosetModel(s.form, s.sharp, e, s.cyc, s.places) for e in exts]
        mu = tuple(s.sharp.sharp_basis[j][0] for j in range(2))
        thetas = []
        for m in models:
            chi = m.extend_character(s.default_chi())
            thetas.append(m.theta(chi.chibar, mu))
        ok &= models[0].enumerate_cosets(mu) == models[1].enumerate_cosets(mu)
        ok &= models[0].orbit_count() == models[1].orbit_count()
        ok &= ({models[0].signature(y) for y in models[0].quotient_reps(2)}
               == {models[1].signature(y) for y in models[1].quotient_reps(2)})
        keys = sorted(thetas[0].values)
        c = proportional(thetas[0].vector(keys), thetas[1].vector(keys))
        ok &= c is not None and not c.is_zero()
    announce(7, "B-independence", ok, time.perf_counter() - start, 10)


def test_criterion_8_cocycle_laws(announce):
    start = time.perf_counter()
    k = GF(17)
    ext = Extension(k, 4, [[2, 2], [0, 3]], T=2)
    S = [point_place(k, 0), point_place(k, 1), infinite_place(k)]
    rng = random.Random(8)
    one = AdelePoint.identity(2)
    samples = 500
    ok = True
    for _ in range(samples):
        a, b, c = (random_point(2, S, rng, 2) for _ in range(3))
        ok &= (ext.cocycle(a, b) + ext.cocycle(a * b, c) - ext.cocycle(a, b * c) - ext.cocycle(b, c)) % 4 == 0
        ok &= ext.cocycle(one, a) == 0 == ext.cocycle(a, one)
        f, g, h = (random_local(k, rng, 2) for _ in range(3))
        ok &= (tame_symbol(f, g) * tame_symbol(g, f)).v == k.one
        ok &= tame_symbol(f * h, g) == tame_symbol(f, g) * tame_symbol(h, g)
        A, Bq = ExtElement(0, a), ExtElement(0, b)
        ok &= ext.commutator(A, A) == 0 and (ext.commutator(A, Bq) + ext.commutator(Bq, A)) % 4 == 0
        consts = tuple(RationalFunction.constant(k, rng.randrange(1, 17)) for _ in range(2))
        rat = ext.split_rational(RationalTorusPoint(consts), S)
        ok &= rat == ext.split_integral(rat.point)
    announce(8, "cocycle laws", ok, time.perf_counter() - start, 5, f"samples={samples}")
