"""The central extension of the S-truncated adelic torus by Z/n.

Elements are pairs (twist, point) with the group law
(c1, g1)(c2, g2) = (c1 + c2 + f(g1, g2), g1 g2), where f is the bilinear
tame-symbol cocycle attached to a matrix B with B + B^t = kappa.  Points only
record components at finitely many degree-one places; elsewhere they are the
identity, which is harmless because the cocycle vanishes on integral pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from .errors import NotIntegral, SupportViolation
from .fields import DlogTable, FieldElement, power_class
from .lattice import BilinearForm, SharpData, integer_inverse
from .symbols import (DEFAULT_PRECISION, LocalElement, Place, RationalFunction, is_eth_power,
                      monic_factors, rational_localize, tame_symbol)


def choose_B(form: BilinearForm):
    """Upper-triangular B with B + B^t = kappa."""
    r = form.rank
    K = form.matrix
    return tuple(tuple(K[i][i] // 2 if i == j else (K[i][j] if i < j else 0) for j in range(r))
                 for i in range(r))


def check_B(B, form: BilinearForm):
    r = form.rank
    return all(B[i][j] + B[j][i] == form.matrix[i][j] for i in range(r) for j in range(r))


class AdelePoint:
    """Finitely supported point of T(A): place -> tuple of r LocalElements."""

    __slots__ = ("r", "comps")

    def __init__(self, r, comps: Dict[Place, Tuple[LocalElement, ...]]):
        self.r = r
        self.comps = {x: tuple(c) for x, c in comps.items()}
        for c in self.comps.values():
            if len(c) != r:
                raise ValueError("component has wrong rank")

    @property
    def support(self):
        return sorted(self.comps, key=Place.sort_key)

    def component(self, x, T=DEFAULT_PRECISION):
        if x in self.comps:
            return self.comps[x]
        one = LocalElement.one(x.residue_field, T)
        return (one,) * self.r

    def __mul__(self, other):
        out = {}
        for x in set(self.comps) | set(other.comps):
            a, b = self.component(x), other.component(x)
            out[x] = tuple(u * v for u, v in zip(a, b))
        return AdelePoint(self.r, out)

    def inverse(self):
        return AdelePoint(self.r, {x: tuple(u.inverse() for u in c) for x, c in self.comps.items()})

    def __pow__(self, e):
        return AdelePoint(self.r, {x: tuple(u ** e for u in c) for x, c in self.comps.items()})

    def valuations(self, x):
        return tuple(u.valuation for u in self.component(x))

    def is_integral(self):
        return all(u.valuation == 0 for c in self.comps.values() for u in c)

    def is_identity(self):
        return all(u.is_one() for c in self.comps.values() for u in c)

    def __eq__(self, other):
        if not isinstance(other, AdelePoint):
            return NotImplemented
        for x in set(self.comps) | set(other.comps):
            a, b = self.comps.get(x), other.comps.get(x)
            if a is None or b is None:
                # a missing component is the identity at any precision
                if not all(u.is_one() for u in (a or b)):
                    return False
            elif a != b:
                return False
        return True

    def __hash__(self):
        items = tuple(sorted(((x.sort_key(), c) for x, c in self.comps.items()
                              if not all(u.is_one() for u in c)), key=lambda t: t[0]))
        return hash(items)

    @staticmethod
    def identity(r):
        return AdelePoint(r, {})

    @staticmethod
    def monomial(x: Place, lam: Sequence[int], T=DEFAULT_PRECISION):
        """t_x^lam: uniformizer at x raised to the cocharacter lam."""
        F = x.residue_field
        return AdelePoint(len(lam), {x: tuple(LocalElement.uniformizer(F, T) ** l for l in lam)})

    @staticmethod
    def from_local(x: Place, comps: Sequence[LocalElement]):
        return AdelePoint(len(comps), {x: tuple(comps)})

    def render(self):
        return [{"place": x.label(), "valuations": list(self.valuations(x)),
                 "unit_prefix": [u.render()["unit"] for u in self.comps[x]]}
                for x in self.support]

    def __repr__(self):
        return f"AdelePoint({self.render()})"


@dataclass(frozen=True)
class ExtElement:
    twist: int
    point: AdelePoint

    def render(self):
        return {"twist": self.twist, "point": self.point.render()}


@dataclass(frozen=True)
class RationalTorusPoint:
    coords: Tuple[RationalFunction, ...]


class Extension:
    """The cocycle model (Z/n x T(A)_S)_f for a fixed B."""

    def __init__(self, k, n, B, table: DlogTable = None, T=DEFAULT_PRECISION):
        if (k.size - 1) % n:
            raise ValueError(f"{n} does not divide q - 1")
        self.k = k
        self.n = n
        self.B = tuple(tuple(row) for row in B)
        self.r = len(B)
        self.table = table or DlogTable(k)
        self.T = T
        self._minus_one = power_class(FieldElement(k, k.neg(k.one)), n, self.table)

    # --- symbols and the cocycle ------------------------------------------------
    def symbol_class(self, f: LocalElement, g: LocalElement) -> int:
        return power_class(tame_symbol(f, g), self.n, self.table)

    def symbol_class_fast(self, f: LocalElement, g: LocalElement) -> int:
        """Same value, read off from valuations and leading-coefficient logs."""
        L = self.table
        vf, vg = f.valuation, g.valuation
        c = vf * vg * self._minus_one + vf * L(FieldElement(self.k, g.lc)) - vg * L(FieldElement(self.k, f.lc))
        return c % self.n

    def pairing(self, M, g1: AdelePoint, g2: AdelePoint, fast=False) -> int:
        """sum over places and i, j of M_ij * class((g1_i, g2_j)_x)."""
        sym = self.symbol_class_fast if fast else self.symbol_class
        total = 0
        for x in set(g1.comps) & set(g2.comps):
            a, b = g1.comps[x], g2.comps[x]
            for i in range(self.r):
                for j in range(self.r):
                    if M[i][j]:
                        total += M[i][j] * sym(a[i], b[j])
        return total % self.n

    def cocycle(self, g1: AdelePoint, g2: AdelePoint, fast=False) -> int:
        return self.pairing(self.B, g1, g2, fast)

    # --- group law ------------------------------------------------------------
    def identity(self):
        return ExtElement(0, AdelePoint.identity(self.r))

    def element(self, twist, point):
        return ExtElement(twist % self.n, point)

    def mul(self, a: ExtElement, b: ExtElement, fast=False) -> ExtElement:
        c = a.twist + b.twist + self.cocycle(a.point, b.point, fast)
        return ExtElement(c % self.n, a.point * b.point)

    def inv(self, a: ExtElement, fast=False) -> ExtElement:
        gi = a.point.inverse()
        return ExtElement((-a.twist - self.cocycle(a.point, gi, fast)) % self.n, gi)

    def commutator(self, a: ExtElement, b: ExtElement) -> int:
        """Twist of a b a^-1 b^-1, which equals f(g1, g2) - f(g2, g1)."""
        return (self.cocycle(a.point, b.point) - self.cocycle(b.point, a.point)) % self.n

    def commutator_group_law(self, a: ExtElement, b: ExtElement) -> int:
        c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
        return c.twist

    def commutator_kappa(self, a: ExtElement, b: ExtElement) -> int:
        kappa = [[self.B[i][j] + self.B[j][i] for j in range(self.r)] for i in range(self.r)]
        return self.pairing(kappa, a.point, b.point)

    # --- splittings -----------------------------------------------------------
    def split_integral(self, t: AdelePoint) -> ExtElement:
        if not t.is_integral():
            raise NotIntegral("point has a nonzero valuation")
        return ExtElement(0, t)

    def localize(self, h: RationalTorusPoint, S: Sequence[Place]) -> AdelePoint:
        S = list(S)
        for coord in h.coords:
            for poly in set(monic_factors(coord.k, coord.num)) | set(monic_factors(coord.k, coord.den)):
                if Place(coord.k, poly) not in S:
                    raise SupportViolation(f"{coord} has a zero or pole outside S")
            if len(coord.num) != len(coord.den) and not any(x.is_infinite for x in S):
                raise SupportViolation(f"{coord} has a zero or pole at infinity, outside S")
        return AdelePoint(self.r, {x: tuple(rational_localize(c, x, self.T) for c in h.coords) for x in S})

    def split_rational(self, h: RationalTorusPoint, S: Sequence[Place]) -> ExtElement:
        return ExtElement(0, self.localize(h, S))


def center_test(g: AdelePoint, sharp: SharpData) -> bool:
    """g lies in Z-dagger: in eps coordinates, the i-th entry is an e_i-th power at every place."""
    for comps in g.comps.values():
        for h, ei in zip(eps_coordinates(comps, sharp), sharp.e):
            if ei > 1 and not is_eth_power(h, ei):
                return False
    return True


def eps_coordinates(g_x: Sequence[LocalElement], sharp: SharpData):
    """Components of a local point in the (eps_i) basis."""
    Einv = integer_inverse(sharp.eps)
    out = []
    for i in range(len(g_x)):
        h = LocalElement.one(g_x[0].field, g_x[0].precision)
        for j, u in enumerate(g_x):
            if Einv[i][j]:
                h = h * (u ** Einv[i][j])
        out.append(h)
    return out


def random_local(k, rng, T=DEFAULT_PRECISION, vrange=3) -> LocalElement:
    """Random element of k((s)) with valuation in [-vrange, vrange]."""
    coeffs = [rng.randrange(1, k.size)] + [rng.randrange(k.size) for _ in range(T - 1)]
    return LocalElement(k, rng.randint(-vrange, vrange), tuple(coeffs))


def random_point(r, places: Sequence[Place], rng, T=DEFAULT_PRECISION, vrange=3) -> AdelePoint:
    return AdelePoint(r, {x: tuple(random_local(x.residue_field, rng, T, vrange) for _ in range(r))
                          for x in places})
