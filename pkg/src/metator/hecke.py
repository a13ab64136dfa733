"""Local nonramified Hecke algebra at a degree-one place, and the induced model pi_x.

Hecke elements are finitely supported maps lambda -> CycNumber recording
sum c_lambda h_lambda, where h_lambda is the function supported on the coset
of the section element (0, t_x^lambda) with value 1 there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .cyclotomic import CycField, CycNumber, zeta_value
from .errors import InvariantViolation, NoExtension, NotSharp
from .extension import AdelePoint, ExtElement, Extension
from .fields import FieldElement, power_class
from .lattice import BilinearForm, SharpData, integer_inverse, mat_vec
from .linalg import MonomialSystem
from .symbols import LocalElement, Place

Vec = Tuple[int, ...]


# --- characters -------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeCharacter:
    """Homomorphism Lambda -> Z/N, stored by its values on the standard basis."""

    N: int
    values: Tuple[int, ...]

    def __call__(self, lam):
        return sum(a * v for a, v in zip(lam, self.values)) % self.N


@dataclass(frozen=True)
class LocalCharacter:
    """chi_x: Lambda-sharp -> Z/N, stored on the basis e_i eps_i."""

    N: int
    sharp_values: Tuple[int, ...]

    def __call__(self, lam, sharp: SharpData):
        a = sharp.eps_coords(lam)
        total = 0
        for ai, ei, v in zip(a, sharp.e, self.sharp_values):
            if ai % ei:
                raise NotSharp(f"{tuple(lam)} is not in the sharp sublattice")
            total += (ai // ei) * v
        return total % self.N

    @staticmethod
    def restrict(chibar: LatticeCharacter, sharp: SharpData):
        vals = []
        for i, ei in enumerate(sharp.e):
            col = [sharp.eps[r][i] * ei for r in range(sharp.rank)]
            vals.append(chibar(col))
        return LocalCharacter(chibar.N, tuple(vals))


def extend_local(chi: LocalCharacter, sharp: SharpData) -> LatticeCharacter:
    """An extension of chi_x from Lambda-sharp to Lambda with values in Z/N.

    Exists iff e_i divides chi(e_i eps_i) in Z/N; the smallest such root is used.
    """
    N = chi.N
    on_eps = []
    for v, ei in zip(chi.sharp_values, sharp.e):
        if v % ei:
            raise NoExtension(f"{v} is not divisible by {ei} in Z/{N}")
        on_eps.append(v // ei)
    Einv = integer_inverse(sharp.eps)
    r = sharp.rank
    std = tuple(sum(Einv[i][j] * on_eps[i] for i in range(r)) % N for j in range(r))
    return LatticeCharacter(N, std)


# --- Hecke algebra ----------------------------------------------------------------------

@dataclass
class HeckeElement:
    coeffs: Dict[Vec, CycNumber] = field(default_factory=dict)

    def clean(self):
        return HeckeElement({k: v for k, v in self.coeffs.items() if not v.is_zero()})

    def __eq__(self, other):
        a, b = self.clean().coeffs, other.clean().coeffs
        return a.keys() == b.keys() and all(a[k] == b[k] for k in a)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return HeckeElement(out).clean()

    def scale(self, c):
        return HeckeElement({k: v * c for k, v in self.coeffs.items()}).clean()


class LocalHecke:
    """Hecke algebra and induced representation at one degree-one place x."""

    def __init__(self, form: BilinearForm, sharp: SharpData, ext: Extension, cyc: CycField,
                 place: Place, T: int = 1):
        self.form = form
        self.sharp = sharp
        self.ext = ext
        self.cyc = cyc
        self.place = place
        self.n = ext.n
        self.r = form.rank
        self.T = T
        self.k = ext.k

    # section and evaluation helpers
    def section(self, lam) -> ExtElement:
        return ExtElement(0, AdelePoint.monomial(self.place, lam, self.T))

    def canonical(self, z: ExtElement):
        """Write z = (a, 1) * (0, t^lam) * (0, u) with u integral; return (a, lam, u)."""
        comps = z.point.component(self.place, self.T)
        lam = tuple(c.valuation for c in comps)
        D = AdelePoint.monomial(self.place, lam, self.T)
        u = D.inverse() * z.point
        a = (z.twist - self.ext.cocycle(D, u)) % self.n
        return a, lam, u

    def zeta(self, c):
        return zeta_value(c, self.n, self.cyc)

    def evaluate(self, h: HeckeElement, z: ExtElement) -> CycNumber:
        """h(z) for h = sum c_lam h_lam: zeta(a) * c_lam on the coset of t^lam."""
        a, lam, _ = self.canonical(z)
        c = h.coeffs.get(lam)
        if c is None:
            return self.cyc.zero()
        return self.zeta(a) * c

    # operations
    def h_exists(self, lam) -> bool:
        """For a generator u of k* and each basis mu, u^(-kappa(mu, lam)) must be an n-th power."""
        u = self.ext.table.generator
        for j in range(self.r):
            mu = [int(i == j) for i in range(self.r)]
            val = u ** (-self.form(mu, lam))
            if power_class(val, self.n, self.ext.table) != 0:
                return False
        return True

    def basis(self, lam) -> HeckeElement:
        lam = tuple(lam)
        if not self.h_exists(lam):
            raise NotSharp(f"{lam} is not in the sharp sublattice")
        return HeckeElement({lam: self.cyc.one()})

    def convolve_shift(self, h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
        out: Dict[Vec, CycNumber] = {}
        for a, c1 in h1.coeffs.items():
            for b, c2 in h2.coeffs.items():
                key = tuple(x + y for x, y in zip(a, b))
                prod = c1 * c2
                out[key] = out[key] + prod if key in out else prod
        return HeckeElement(out).clean()

    def convolve_integral(self, h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
        """(h1 * h2)(t^nu) = sum over cosets u = t^alpha of h1(u) h2(t^nu u^-1).

        The integral over T(F_x) reduces to a sum over t^alpha T(O_x), each
        coset of volume one, and the integrand is constant on a coset.
        """
        targets = {tuple(x + y for x, y in zip(a, b)) for a in h1.coeffs for b in h2.coeffs}
        out = {}
        for nu in targets:
            z = self.section(nu)
            total = self.cyc.zero()
            for alpha, c1 in h1.coeffs.items():
                u = self.section(alpha)
                w = self.ext.mul(z, self.ext.inv(u))
                total = total + self.evaluate(HeckeElement({alpha: c1}), u) * self.evaluate(h2, w)
            # value at t^nu is the coefficient of h_nu since h_nu(t^nu) = 1
            out[nu] = total
        return HeckeElement(out).clean()

    def convolve(self, h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
        a = self.convolve_integral(h1, h2)
        b = self.convolve_shift(h1, h2)
        if a != b:
            raise InvariantViolation("convolution", "integral model and shift rule disagree")
        return a

    def support_rigid(self, lam, mu, radius=1) -> bool:
        """The integral model of h_lam * h_mu vanishes on every other coset nearby."""
        h = HeckeElement({tuple(lam): self.cyc.one()})
        g = HeckeElement({tuple(mu): self.cyc.one()})
        target = tuple(x + y for x, y in zip(lam, mu))
        for off in itertools.product(range(-radius, radius + 1), repeat=self.r):
            nu = tuple(t + o for t, o in zip(target, off))
            z = self.section(nu)
            total = self.cyc.zero()
            for alpha, c1 in h.coeffs.items():
                u = self.section(alpha)
                total = total + c1 * self.evaluate(g, self.ext.mul(z, self.ext.inv(u)))
            if (nu == target) == total.is_zero():
                return False
        return True

    # --- the induced representation pi_x -------------------------------------------
    # Bulk systems work in coordinates: (c, lam, v) stands for (c, t^lam * g^v)
    # with g the fixed generator of k* and v an exponent vector mod q - 1.
    # The cocycle below is the tame-symbol formula read off valuations and
    # logarithms of leading coefficients; tests compare it with ext.cocycle.
    def coord_cocycle(self, x, y):
        (lam, v), (mu, w) = x, y
        B, m1 = self.ext.B, self.ext._minus_one
        total = 0
        for i in range(self.r):
            for j in range(self.r):
                if B[i][j]:
                    total += B[i][j] * (lam[i] * mu[j] * m1 + lam[i] * w[j] - mu[j] * v[i])
        return total % self.n

    def coord_mul(self, x, y):
        q1 = self.k.size - 1
        c = (x[0] + y[0] + self.coord_cocycle(x[1:], y[1:])) % self.n
        lam = tuple(a + b for a, b in zip(x[1], y[1]))
        v = tuple((a + b) % q1 for a, b in zip(x[2], y[2]))
        return c, lam, v

    def coord_canonical_twist(self, x):
        """a with x = (a, 1) (0, t^lam) (0, g^v)."""
        zero = (0,) * self.r
        return (x[0] - self.coord_cocycle((x[1], zero), (zero, x[2]))) % self.n

    def coord_element(self, x) -> ExtElement:
        """The ExtElement with coordinates x (for cross-checks)."""
        D = AdelePoint.monomial(self.place, x[1], self.T)
        return ExtElement(x[0], D * AdelePoint.from_local(self.place, self._unit_point(x[2])))

    def induced_system(self, chibar: LatticeCharacter, box: int = 1, spherical=False, lams=None):
        """Monomial system for pi_x on unknowns h((0, t^lam)(0, v)), lam in a box, v in T(k).

        ``lams`` replaces the box by an explicit list of valuations; relations
        leaving that set are dropped, so only values inside one connected
        component are determined.
        """
        q1 = self.k.size - 1
        r = self.r
        zero = (0,) * r
        if lams is None:
            lams = list(itertools.product(range(-box, box + 1), repeat=r))
        units = list(itertools.product(range(q1), repeat=r))
        index = {(lam, v): i for i, (lam, v) in enumerate(itertools.product(lams, units))}
        N = self.cyc.N
        sys = MonomialSystem(len(index), N)
        step = N // self.n
        basis = [tuple(int(i == j) for i in range(r)) for j in range(r)]
        left = [((0, b, zero), chibar(b)) for b in basis]
        left += [((0, tuple(-x for x in b), zero), chibar(tuple(-x for x in b))) for b in basis]
        # central units: eps_i (x) g^(e_i), trivial under chi
        eps = self.sharp.eps
        for i, ei in enumerate(self.sharp.e):
            left.append(((0, zero, tuple(ei * eps[j][i] % q1 for j in range(r))), 0))
        right = [(0, zero, b) for b in basis] if spherical else []
        for (lam, v), idx in index.items():
            z = self.coord_mul((0, lam, zero), (0, zero, v))
            for y, chi_y in left:
                w = self.coord_mul(y, z)
                key = (w[1], w[2])
                if key in index:
                    # h(w) = chi(y) h(z) and h(w) = zeta(a) x_key
                    sys.relate(index[key], idx, chi_y - self.coord_canonical_twist(w) * step)
            for u in right:
                w = self.coord_mul(z, u)
                sys.relate(index[(w[1], w[2])], idx, -self.coord_canonical_twist(w) * step)
        return sys, index

    def _unit_point(self, exps):
        """Constant point of T(k) whose i-th coordinate is g^exps[i]."""
        g = self.ext.table.generator
        return tuple(LocalElement.constant(self.k, (g ** e).v, self.T) for e in exps)

    def _decompose(self, w: ExtElement):
        """Canonical coordinates (a, lam, v) of an ExtElement, via the generic group law."""
        a, lam, u = self.canonical(w)
        v = tuple(self.ext.table(FieldElement(self.k, c.lc)) for c in u.component(self.place, self.T))
        return a, lam, v

    def local_dimension(self, chibar: LatticeCharacter = None, box: int = 1) -> int:
        """dim pi_x, cross-checked against the rank of the induced-model system."""
        expected = self.sharp.index
        chibar = chibar or LatticeCharacter(self.cyc.N, (0,) * self.r)
        sys, _ = self.induced_system(chibar, box)
        # functions are determined by their values on the box centre (lam = 0)
        if sys.dimension() != expected:
            raise InvariantViolation("local dimension", f"model gives {sys.dimension()}, expected {expected}")
        return expected

    def spherical_dimension(self, chibar: LatticeCharacter = None, box: int = 1) -> int:
        chibar = chibar or LatticeCharacter(self.cyc.N, (0,) * self.r)
        sys, _ = self.induced_system(chibar, box, spherical=True)
        return sys.dimension()

    def spherical_vector(self, chibar: LatticeCharacter, box: int = 1):
        sys, index = self.induced_system(chibar, box, spherical=True)
        basis = sys.basis()
        if len(basis) != 1:
            raise InvariantViolation("spherical vector", f"space has dimension {len(basis)}")
        vec = basis[0]
        origin = index[((0,) * self.r, (0,) * self.r)]
        shift = vec[origin]
        # normalise so that h(1) = 1
        return {key: (vec[i] - shift) % self.cyc.N for key, i in index.items() if i in vec}

    def spherical_eigenvalue_model(self, lam, chibar: LatticeCharacter, box: int = None) -> CycNumber:
        """Eigenvalue of h_lam on the spherical vector, read off the induced model.

        (phi * h_lam)(1) = phi((t^lam)^-1), and phi(1) = 1.  By default the
        system is built on a lattice path from 0 to -lam, which determines the
        ratio of the two values; pass ``box`` to use a full box instead.
        """
        w = self.ext.inv(self.section(lam))
        a, lam2, v2 = self._decompose(w)
        if box is not None:
            vec = self.spherical_vector(chibar, box)
            return self.zeta(a) * self.cyc.zeta_power(vec[(lam2, v2)])
        path = [tuple(0 for _ in lam2)]
        cur = list(path[0])
        for i, target in enumerate(lam2):
            while cur[i] != target:
                cur[i] += 1 if target > cur[i] else -1
                path.append(tuple(cur))
        sys, index = self.induced_system(chibar, spherical=True, lams=path)
        origin = index[(path[0], path[0])]
        goal = index[(lam2, v2)]
        if sys.find(origin) != sys.find(goal) or sys.find(origin) in sys.dead:
            raise InvariantViolation("spherical vector", "path does not determine the value")
        exp = (sys._exp(goal) - sys._exp(origin)) % self.cyc.N
        return self.zeta(a) * self.cyc.zeta_power(exp)


def spherical_eigenvalue(lam, chi: LocalCharacter, sharp: SharpData, cyc: CycField) -> CycNumber:
    """chi_x(lam)^-1, the value of the Satake character on h_lam."""
    if not sharp.contains(lam):
        raise NotSharp(f"{tuple(lam)} is not in the sharp sublattice")
    return cyc.zeta_power(-chi(lam, sharp))


def satake(h: HeckeElement) -> Dict[Vec, CycNumber]:
    """Image in the group algebra of Lambda-sharp: h_lam -> [lam]."""
    return {k: v for k, v in h.coeffs.items() if not v.is_zero()}


def satake_inverse(element: Dict[Vec, CycNumber]) -> HeckeElement:
    return HeckeElement(dict(element)).clean()


def group_algebra_mul(a: Dict[Vec, CycNumber], b: Dict[Vec, CycNumber]):
    out = {}
    for x, c in a.items():
        for y, d in b.items():
            key = tuple(i + j for i, j in zip(x, y))
            out[key] = out[key] + c * d if key in out else c * d
    return {k: v for k, v in out.items() if not v.is_zero()}


def sharp_box(sharp: SharpData, radius: int) -> List[Vec]:
    """Vectors sum a_i e_i eps_i with |a_i| <= radius."""
    out = []
    for a in itertools.product(range(-radius, radius + 1), repeat=sharp.rank):
        out.append(tuple(mat_vec(sharp.sharp_basis, a)))
    return out
