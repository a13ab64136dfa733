"""Global nonramified functions on P^1 in the S-truncated adelic model.

A point of the extension over S is handled in coordinates
(c, lams, vs): twist c in Z/n, and at the i-th place of S a valuation vector
lams[i] and the logarithms vs[i] (mod q - 1) of the leading coefficients.
Higher unit terms are dropped: they are e-th powers, central, invisible to
the cocycle and trivial under every character used here.

Every element z can be written (a, 1) * (0, t^D) * (0, u) with u integral;
a is its canonical twist, and right T(O)-invariant functions only see (a, D).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .cyclotomic import CycField, CycNumber
from .errors import (BoundTooSmall, InvalidCharacter, InvariantViolation, NoExtension,
                     UnsupportedSupport)
from .extension import AdelePoint, ExtElement, Extension, RationalTorusPoint, center_test
from .fields import FieldElement
from .hecke import LatticeCharacter, LocalCharacter, extend_local
from .lattice import BilinearForm, SharpData, integer_inverse
from .linalg import MonomialSystem
from .symbols import LocalElement, Place, RationalFunction

Vec = Tuple[int, ...]


@dataclass(frozen=True)
class GlobalCharacter:
    """chi on the centre (per place, on the basis e_i eps_i of Lambda-sharp) and its extension.

    ``chibar`` is None until :func:`extend_character` fills it in.
    """

    chi: Tuple[LocalCharacter, ...]
    chibar: Optional[Tuple[LatticeCharacter, ...]] = None

    def to_json(self):
        out = {"chi": [list(c.sharp_values) for c in self.chi]}
        if self.chibar is not None:
            out["chibar"] = [list(c.values) for c in self.chibar]
        return out


@dataclass
class AutomorphicFunction:
    degree: Vec
    values: Dict[Tuple[Vec, ...], CycNumber]
    chibar: Optional[Tuple[LatticeCharacter, ...]] = None

    def vector(self, keys):
        return [self.values[k] for k in keys]

    def support(self):
        return [k for k, v in self.values.items() if not v.is_zero()]


class CosetModel:
    """The quotient T(F)\\E/T(O) over a finite set S of degree-one places of P^1."""

    def __init__(self, form: BilinearForm, sharp: SharpData, ext: Extension, cyc: CycField,
                 S: Sequence[Place]):
        S = list(S)
        if not S:
            raise UnsupportedSupport("S must contain at least one place")
        if len(set(S)) != len(S):
            raise UnsupportedSupport("repeated place in S")
        if any(x.degree != 1 for x in S):
            raise UnsupportedSupport("only degree-one places are supported")
        self.form = form
        self.sharp = sharp
        self.ext = ext
        self.cyc = cyc
        self.S = S
        self.base = S[0]
        self.n = ext.n
        self.r = form.rank
        self.k = ext.k
        self.q1 = self.k.size - 1
        self.step = cyc.N // self.n
        self._zero = (0,) * self.r
        self._Einv = integer_inverse(sharp.eps)
        self._gens = self._rational_generators()

    # --- coordinates ----------------------------------------------------------
    def coord_cocycle(self, x, y):
        B, m1 = self.ext.B, self.ext._minus_one
        total = 0
        for lam, v, mu, w in zip(x[0], x[1], y[0], y[1]):
            for i in range(self.r):
                for j in range(self.r):
                    b = B[i][j]
                    if b:
                        total += b * (lam[i] * mu[j] * m1 + lam[i] * w[j] - mu[j] * v[i])
        return total % self.n

    def mul(self, x, y):
        c = (x[0] + y[0] + self.coord_cocycle(x[1:], y[1:])) % self.n
        lams = tuple(tuple(a + b for a, b in zip(l1, l2)) for l1, l2 in zip(x[1], y[1]))
        vs = tuple(tuple((a + b) % self.q1 for a, b in zip(v1, v2)) for v1, v2 in zip(x[2], y[2]))
        return c, lams, vs

    def canonical_twist(self, x):
        B = self.ext.B
        corr = 0
        for lam, v in zip(x[1], x[2]):
            corr += sum(B[i][j] * lam[i] * v[j] for i in range(self.r) for j in range(self.r))
        return (x[0] - corr) % self.n

    def pure(self, D, c=0):
        """The element (c, t^D) with trivial unit part."""
        return c, tuple(tuple(d) for d in D), tuple(self._zero for _ in self.S)

    def local_unit(self, place_idx, exps, c=0):
        vs = tuple(tuple(exps) if i == place_idx else self._zero for i in range(len(self.S)))
        return c, tuple(self._zero for _ in self.S), vs

    def to_ext(self, x) -> ExtElement:
        """The ExtElement with coordinates x (precision one), for cross-checks."""
        g = self.ext.table.generator
        comps = {}
        for p, lam, v in zip(self.S, x[1], x[2]):
            pt = AdelePoint.monomial(p, lam, 1) * AdelePoint(self.r, {p: tuple(
                _const(self.k, (g ** e).v) for e in v)})
            comps[p] = pt.comps[p]
        return ExtElement(x[0], AdelePoint(self.r, comps))

    def from_ext(self, z: ExtElement):
        lams, vs = [], []
        for p in self.S:
            comp = z.point.component(p, 1)
            lams.append(tuple(u.valuation for u in comp))
            vs.append(tuple(self.ext.table(FieldElement(self.k, u.lc)) for u in comp))
        return z.twist % self.n, tuple(lams), tuple(vs)

    def localize(self, h: RationalTorusPoint):
        """Coordinates of split_rational(h) (twist 0)."""
        pt = self.ext.localize(h, self.S)
        return self.from_ext(ExtElement(0, pt))

    # --- rational points supported on S ---------------------------------------
    def _moving_function(self, x: Place) -> RationalFunction:
        """A rational function with divisor x - base."""
        k = self.k
        b = self.base
        if x.is_infinite:
            return RationalFunction(k, [k.one], list(b.poly))
        if b.is_infinite:
            return RationalFunction(k, list(x.poly))
        return RationalFunction(k, list(x.poly), list(b.poly))

    def _rational_generators(self):
        """Generators of T(F)_S: the constant g and each moving function, in every coordinate."""
        k = self.k
        g = self.ext.table.generator
        one = RationalFunction(k, [k.one])
        funcs = [RationalFunction.constant(k, g)] + [self._moving_function(x) for x in self.S[1:]]
        gens = []
        for h in funcs:
            for j in range(self.r):
                coords = tuple(h if i == j else one for i in range(self.r))
                gens.append(self.localize(RationalTorusPoint(coords)))
        return gens

    def rational_generators(self):
        return list(self._gens)

    def rational_point(self, exps):
        """Product of generators raised to exps (coordinates, twist from the splitting)."""
        out = self.pure([self._zero] * len(self.S))
        for g, e in zip(self._gens, exps):
            if e:
                out = _coord_add(out, g, e, self.q1)
        return out

    # --- centre and signatures -----------------------------------------------------
    def eps_exps(self, v):
        """Exponent vector in the eps basis: coordinates of sum_j e_j (x) g^v_j."""
        return tuple(sum(self._Einv[i][j] * v[j] for j in range(self.r)) for i in range(self.r))

    def eps_val(self, lam):
        return self.sharp.eps_coords(lam)

    def signature(self, x):
        """Residues in the eps basis, modulo e_i-th powers, at every place of S."""
        sig = []
        for v in x[2]:
            a = self.eps_exps(v)
            sig.append(tuple(ai % ei for ai, ei in zip(a, self.sharp.e)))
        return tuple(sig)

    def in_center(self, x):
        """Coordinates lie in Z-dagger: eps-valuations and eps-residue logs divisible by e_i."""
        for lam, v in zip(x[1], x[2]):
            for a, b, ei in zip(self.eps_val(lam), self.eps_exps(v), self.sharp.e):
                if a % ei or b % ei:
                    return False
        return True

    def in_div_center(self, x):
        return all(all(s == 0 for s in sig) for sig in self.signature(x))

    def _kernel_generators(self, predicate):
        """Generators of {y in T(F)_S : predicate(y)} for a finite-index subgroup."""
        M = 1
        for ei in self.sharp.e:
            M = M * ei // _gcd(M, ei)
        out = []
        ng = len(self._gens)
        for exps in itertools.product(range(M), repeat=ng):
            y = self.rational_point(exps)
            if predicate(y):
                out.append(y)
        for i in range(ng):
            exps = [0] * ng
            exps[i] = M
            out.append(self.rational_point(exps))
        return out

    # --- characters ----------------------------------------------------------------------
    def chi_value(self, chi: GlobalCharacter, x):
        """chi on a central element in coordinates (exponent of zeta_N)."""
        total = self.canonical_twist(x) * self.step
        for c, lam in zip(chi.chi, x[1]):
            total += c(lam, self.sharp)
        return total % self.cyc.N

    def chibar_value(self, chibar, x):
        """chibar on an element of Div * Z in coordinates."""
        total = self.canonical_twist(x) * self.step
        for c, lam in zip(chibar, x[1]):
            total += c(lam)
        return total % self.cyc.N

    def validate_character(self, chi: GlobalCharacter):
        """chi must be trivial on Z and T(F) together (it is trivial on Z and T(O) by construction)."""
        if len(chi.chi) != len(self.S):
            raise InvalidCharacter("one local character per place of S is required")
        for y in self._kernel_generators(self.in_center):
            if self.chi_value(chi, y):
                raise InvalidCharacter("character is not trivial on the rational part of the centre")
        return True

    def valid_characters(self, limit=4096):
        """All chi (as restrictions to the degree-zero centre) allowed in the S-model.

        Two characters with the same values on the degree-zero centre define
        the same constraint, so only chi_x - chi_base matters; we enumerate
        those differences with chi_base = 0.
        """
        N = self.cyc.N
        others = len(self.S) - 1
        count = N ** (self.r * others)
        if count > limit:
            raise InvariantViolation("valid characters", f"{count} candidates exceed the limit")
        out = []
        zero = LocalCharacter(N, (0,) * self.r)
        for vals in itertools.product(range(N), repeat=self.r * others):
            locs = [zero] + [LocalCharacter(N, tuple(vals[i * self.r:(i + 1) * self.r])) for i in range(others)]
            chi = GlobalCharacter(tuple(locs))
            try:
                self.validate_character(chi)
            except InvalidCharacter:
                continue
            out.append(chi)
        return out

    def extend_character(self, chi: GlobalCharacter) -> GlobalCharacter:
        """Choose chibar_x on Lambda extending chi_x and satisfying the compatibility condition (C).

        (C) asks chibar to be trivial on T(F) intersected with Div * Z; it is
        checked on generators of that subgroup.
        """
        self.validate_character(chi)
        N = self.cyc.N
        per_place = []
        for c in chi.chi:
            base = extend_local(c, self.sharp)  # raises NoExtension
            options = []
            # all extensions: add characters of Lambda / Lambda-sharp with values in Z/N
            for shifts in itertools.product(*[range(ei) for ei in self.sharp.e]):
                on_eps = [s * (N // ei) for s, ei in zip(shifts, self.sharp.e)]
                extra = tuple(sum(self._Einv[i][j] * on_eps[i] for i in range(self.r)) % N
                              for j in range(self.r))
                options.append(LatticeCharacter(N, tuple((a + b) % N for a, b in zip(base.values, extra))))
            per_place.append(options)
        gens = self._kernel_generators(self.in_div_center)
        for combo in itertools.product(*per_place):
            if all(self.chibar_value(combo, y) == 0 for y in gens):
                return GlobalCharacter(chi.chi, tuple(combo))
        raise NoExtension("no extension satisfies the compatibility condition")

    # --- cosets ----------------------------------------------------------------------------
    def degree_box(self, mu, radius):
        """Valuation configurations D (one vector per place) of total degree mu in a box."""
        m = len(self.S)
        rng = range(-radius, radius + 1)
        out = []
        for free in itertools.product(itertools.product(rng, repeat=self.r), repeat=m - 1):
            last = tuple(mu[i] - sum(d[i] for d in free) for i in range(self.r))
            out.append((last,) + tuple(free))
        return out

    def enumerate_cosets(self, mu, radius=2):
        """Representatives of T(F)\\T(A)_S/T(O) of degree mu: a single one, t_base^mu.

        Completeness is checked by joining every configuration in a box to it
        through the moving functions.
        """
        configs = self.degree_box(mu, radius)
        index = {D: i for i, D in enumerate(configs)}
        parent = list(range(len(configs)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        movers = [g for g in self._gens if any(any(l) for l in g[1])]
        for D, i in index.items():
            for g in movers:
                for s in (1, -1):
                    D2 = tuple(tuple(a + s * b for a, b in zip(l1, l2)) for l1, l2 in zip(D, g[1]))
                    if D2 in index:
                        parent[find(i)] = find(index[D2])
        rep = (tuple(mu),) + tuple(self._zero for _ in self.S[1:])
        roots = {find(i) for i in range(len(configs))}
        if len(roots) != 1:
            raise InvariantViolation("coset enumeration", f"{len(roots)} classes in degree {tuple(mu)}")
        return [rep]

    # --- the nonramified space --------------------------------------------------------
    def nonramified_system(self, mu, chi: Optional[GlobalCharacter], radius=1):
        configs = self.degree_box(mu, radius)
        index = {D: i for i, D in enumerate(configs)}
        sys = MonomialSystem(len(configs), self.cyc.N)
        left = []
        for g in self._gens:
            left.append((g, 0))
            left.append((_coord_inverse(self, g), 0))
        if chi is not None:
            # degree-zero centre: t_x^lam t_base^-lam for lam in e_i eps_i, and central units
            for xi in range(1, len(self.S)):
                for i, ei in enumerate(self.sharp.e):
                    lam = tuple(self.sharp.eps[j][i] * ei for j in range(self.r))
                    for s in (1, -1):
                        D = [self._zero] * len(self.S)
                        D[xi] = tuple(s * a for a in lam)
                        D[0] = tuple(-s * a for a in lam)
                        y = self.pure(D)
                        left.append((y, self.chi_value(chi, y)))
            for pi in range(len(self.S)):
                for i, ei in enumerate(self.sharp.e):
                    exps = tuple(ei * self.sharp.eps[j][i] % self.q1 for j in range(self.r))
                    left.append((self.local_unit(pi, exps), 0))
        for D, idx in index.items():
            z = self.pure(D)
            for y, chi_y in left:
                w = self.mul(y, z)
                if w[1] in index:
                    # f(w) = chi(y) f(z) and f(w) = zeta(a) x_{D'}
                    sys.relate(index[w[1]], idx, chi_y - self.canonical_twist(w) * self.step)
        return sys, configs

    def nonramified_space(self, mu, chi: Optional[GlobalCharacter], radius=1, validate=True):
        """(dimension, basis) of the degree-mu nonramified functions; chi=None drops the centre constraint."""
        if chi is not None and validate:
            self.validate_character(chi)
        sys, configs = self.nonramified_system(mu, chi, radius)
        basis = []
        for vec in sys.basis():
            basis.append({configs[i]: e for i, e in vec.items()})
        return len(basis), basis

    # --- theta function -------------------------------------------------------------------
    def phi(self, chibar, x) -> CycNumber:
        """The spherical vector with phi(1) = 1: zeta(a) * prod_x chibar_x(lam_x)."""
        return self.cyc.zeta_power(self.chibar_value(chibar, x))

    def quotient_reps(self, bound):
        """Representatives of T(F)_S modulo Div * Z, found by exhausting exponents up to bound.

        Raises BoundTooSmall if the set of classes found at bound - 1 differs.
        """
        def collect(b):
            reps = {}
            ng = len(self._gens)
            for exps in itertools.product(range(-b, b + 1), repeat=ng):
                y = self.rational_point(exps)
                sig = self.signature(y)
                if sig not in reps:
                    reps[sig] = y
            return reps

        if bound < 1:
            raise BoundTooSmall("bound must be at least 1")
        prev = collect(bound - 1)
        cur = collect(bound)
        if set(prev) != set(cur):
            raise BoundTooSmall(f"classes still growing at bound {bound}")
        return [cur[s] for s in sorted(cur)]

    def theta_value(self, chibar, z, reps) -> CycNumber:
        total = self.cyc.zero()
        for y in reps:
            total = total + self.phi(chibar, self.mul(y, z))
        return total

    def theta(self, chibar, mu, bound=2, radius=1) -> AutomorphicFunction:
        reps = self.quotient_reps(bound)
        values = {}
        for D in self.degree_box(mu, radius):
            values[D] = self.theta_value(chibar, self.pure(D), reps)
        return AutomorphicFunction(tuple(mu), values, tuple(chibar))

    def hecke_eigen_check(self, theta: AutomorphicFunction, lam, place_idx, chibar, bound=2) -> bool:
        """(theta * h_lam)(z) = theta(z (t_x^lam)^-1) equals chi_x(lam)^-1 theta(z) on every rep."""
        if theta.chibar is None:
            raise ValueError("theta carries no character")
        reps = self.quotient_reps(bound)
        local = LocalCharacter.restrict(chibar[place_idx], self.sharp)
        eig = self.cyc.zeta_power(-local(lam, self.sharp))
        D = [self._zero] * len(self.S)
        D[place_idx] = tuple(lam)
        inv = _coord_inverse(self, self.pure(D))
        for Dz, val in theta.values.items():
            w = self.mul(self.pure(Dz), inv)
            lhs = self.theta_value(theta.chibar, w, reps)
            if lhs != eig * val:
                return False
        return True

    # --- orbits of the centre -------------------------------------------------------------------
    def orbit_count(self, mu=None, radius=2):
        """Number of centre orbits on T(F)\\E/T(O) meeting degrees in a box around mu."""
        mu = tuple(mu) if mu is not None else self._zero
        degrees = [tuple(m + o for m, o in zip(mu, off))
                   for off in itertools.product(range(-radius, radius + 1), repeat=self.r)]
        # each degree is a single T(F)-class; the centre moves degrees by Lambda-sharp
        # via t_x^{e_i eps_i}, which we first confirm to be central
        translators = []
        for i, ei in enumerate(self.sharp.e):
            lam = tuple(self.sharp.eps[j][i] * ei for j in range(self.r))
            D = [self._zero] * len(self.S)
            D[0] = lam
            y = self.pure(D)
            if not center_test(self.to_ext(y).point, self.sharp):
                raise InvariantViolation("orbit count", "translating element is not central")
            probes = list(self._gens)
            for b in range(self.r):
                unit = tuple(int(a == b) for a in range(self.r))
                probes.append(self.pure([unit] + [self._zero] * (len(self.S) - 1)))
                probes.append(self.local_unit(0, unit))
            for g in probes:
                if (self.coord_cocycle(y[1:], g[1:]) - self.coord_cocycle(g[1:], y[1:])) % self.n:
                    raise InvariantViolation("orbit count", "translating element does not commute")
            translators.append(lam)
        index = {d: i for i, d in enumerate(degrees)}
        parent = list(range(len(degrees)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for d, i in index.items():
            for lam in translators:
                d2 = tuple(a + b for a, b in zip(d, lam))
                if d2 in index:
                    parent[find(i)] = find(index[d2])
        labels = {}
        for d, i in index.items():
            a = self.sharp.eps_coords(d)
            labels.setdefault(find(i), set()).add(tuple(x % e for x, e in zip(a, self.sharp.e)))
        if any(len(v) != 1 for v in labels.values()):
            raise InvariantViolation("orbit count", "an orbit mixes classes modulo Lambda-sharp")
        return len({next(iter(v)) for v in labels.values()})


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _const(k, raw):
    return LocalElement.constant(k, raw, 1)


def _coord_add(x, g, e, q1):
    """x * g^e for a twist-free rational generator g (T(F) splits, so twists stay 0)."""
    lams = tuple(tuple(a + e * b for a, b in zip(l1, l2)) for l1, l2 in zip(x[1], g[1]))
    vs = tuple(tuple((a + e * b) % q1 for a, b in zip(v1, v2)) for v1, v2 in zip(x[2], g[2]))
    return 0, lams, vs


def _coord_inverse(model: CosetModel, x):
    lams = tuple(tuple(-a for a in l) for l in x[1])
    vs = tuple(tuple((-a) % model.q1 for a in v) for v in x[2])
    y = (0, lams, vs)
    c = (-x[0] - model.coord_cocycle(x[1:], y[1:])) % model.n
    return c, lams, vs
