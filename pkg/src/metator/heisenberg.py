"""Finite Heisenberg groups built from the residual pairing on Lambda / Lambda-sharp.

The genus-g model takes Q = Lambda / Lambda-sharp (as a product of cyclic
groups Z/e_i) and the group Q^{2g} of pairs (u, v), each a g-tuple of
elements of Q.  The pairing is
    omega((u, v), (u', v')) = sum_i beta(u_i, v'_i) - beta(v_i, u'_i)   (mod n)
and Gamma = Z/n x Q^{2g} with cocycle B'((u, v), (u', v')) = sum_i beta(u_i, v'_i).

Representations are monomial: a matrix is stored as a permutation together
with exponents of zeta_n, so that commutant and equivariance questions reduce
to MonomialSystem.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .cyclotomic import CycNumber, cyc_field
from .errors import InvariantViolation, NotExtending, TooLarge
from .lattice import ResidualPairing
from .linalg import MonomialSystem, nullspace

MAX_ORDER = 4096

Elem = Tuple[int, ...]   # flattened (u_1..u_g, v_1..v_g), each block one entry per factor of Q


@dataclass(frozen=True)
class H1Model:
    g: int
    n: int
    Q: Tuple[int, ...]                    # invariant factors of Q (all > 1)
    beta: Tuple[Tuple[int, ...], ...]     # Gram table on the generators of Q, values mod n
    upper: bool = True                    # which polarization the group law uses

    @property
    def k(self):
        return len(self.Q)

    @property
    def order(self):
        out = 1
        for e in self.Q:
            out *= e
        return out ** (2 * self.g)

    @property
    def gamma_order(self):
        return self.n * self.order

    def moduli(self):
        return self.Q * (2 * self.g)

    def elements(self) -> List[Elem]:
        return list(itertools.product(*[range(e) for e in self.moduli()]))

    def split(self, h: Elem):
        k, g = self.k, self.g
        u = [h[i * k:(i + 1) * k] for i in range(g)]
        v = [h[(g + i) * k:(g + i + 1) * k] for i in range(g)]
        return u, v

    def b(self, x, y):
        return sum(x[i] * self.beta[i][j] * y[j] for i in range(self.k) for j in range(self.k))

    def omega(self, h1: Elem, h2: Elem) -> int:
        u1, v1 = self.split(h1)
        u2, v2 = self.split(h2)
        return sum(self.b(a, d) - self.b(c, b) for a, c, b, d in zip(u1, v1, u2, v2)) % self.n

    def cocycle(self, h1: Elem, h2: Elem) -> int:
        u1, v1 = self.split(h1)
        u2, v2 = self.split(h2)
        if self.upper:
            return sum(self.b(a, d) for a, d in zip(u1, v2)) % self.n
        return -sum(self.b(c, b) for c, b in zip(v1, u2)) % self.n

    def add(self, h1: Elem, h2: Elem) -> Elem:
        return tuple((a + b) % m for a, b, m in zip(h1, h2, self.moduli()))

    def neg(self, h: Elem) -> Elem:
        return tuple((-a) % m for a, m in zip(h, self.moduli()))

    def zero(self) -> Elem:
        return (0,) * (2 * self.g * self.k)

    # Gamma
    def mul(self, x, y):
        return (x[0] + y[0] + self.cocycle(x[1], y[1])) % self.n, self.add(x[1], y[1])

    def inv(self, x):
        h = self.neg(x[1])
        return (-x[0] - self.cocycle(x[1], h)) % self.n, h

    def commutator(self, x, y) -> int:
        c = self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
        assert c[1] == self.zero()
        return c[0]

    def generators(self):
        """Central generator and unit vectors of Q^{2g}."""
        gens = [(1 % self.n, self.zero())]
        for i in range(2 * self.g * self.k):
            h = [0] * (2 * self.g * self.k)
            h[i] = 1
            gens.append((0, tuple(h)))
        return gens

    def polarization_shift(self, h: Elem) -> int:
        """s(h) = sum beta(u_i, v_i); (c, h) -> (c - s(h), h) maps the upper law to the lower one."""
        u, v = self.split(h)
        return sum(self.b(a, c) for a, c in zip(u, v)) % self.n

    def other_polarization(self) -> "H1Model":
        return H1Model(self.g, self.n, self.Q, self.beta, not self.upper)


@dataclass(frozen=True)
class IsotropicSubgroup:
    generators: Tuple[Elem, ...]
    elements: Tuple[Elem, ...]

    @property
    def order(self):
        return len(self.elements)


@dataclass
class GammaRep:
    """Monomial representation: generator -> (perm, exps) with g e_a = zeta^exps[a] e_perm[a]."""

    dimension: int
    n: int
    matrices: Dict[Tuple[int, Elem], Tuple[Tuple[int, ...], Tuple[int, ...]]]
    act: Callable
    model: H1Model

    def character(self, x) -> CycNumber:
        perm, exps = self.act(x)
        cyc = cyc_field(self.n)
        counts: Dict[int, int] = {}
        for a in range(self.dimension):
            if perm[a] == a:
                counts[exps[a]] = counts.get(exps[a], 0) + 1
        return cyc.from_exponents(counts)

    def dense(self, x):
        cyc = cyc_field(self.n)
        perm, exps = self.act(x)
        M = [[cyc.zero() for _ in range(self.dimension)] for _ in range(self.dimension)]
        for a in range(self.dimension):
            M[perm[a]][a] = cyc.zeta_power(exps[a])
        return M


def _check_size(order):
    if order > MAX_ORDER:
        raise TooLarge(f"|Gamma| = {order} exceeds {MAX_ORDER}")


def build_model(residual: ResidualPairing, g: int, beta=None) -> H1Model:
    """The genus-g model on Q^{2g}; ``beta`` overrides the residual pairing (negative controls)."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    Q = tuple(residual.quotient)
    table = beta if beta is not None else residual.beta
    model = H1Model(g, residual.n, Q, tuple(tuple(r) for r in table))
    _check_size(model.gamma_order)
    if beta is None:
        for x in model.elements()[:64]:
            for y in model.elements()[:64]:
                if model.commutator((0, x), (0, y)) != model.omega(x, y):
                    raise InvariantViolation("commutator", "group law does not reproduce omega")
    return model


def radical(model: H1Model) -> List[Elem]:
    els = model.elements()
    return [h for h in els if all(model.omega(h, y) == 0 for y in els)]


def check_nondegenerate(model: H1Model) -> bool:
    """omega has trivial radical, i.e. h -> omega(h, -) is a bijection onto the characters."""
    return len(radical(model)) == 1


def maximal_isotropic(model: H1Model, second=False) -> IsotropicSubgroup:
    """The Lagrangian {(u, 0)} (or {(0, v)} with ``second``), checked isotropic and maximal."""
    k, g = model.k, model.g
    offset = g * k if second else 0
    gens = []
    for i in range(g * k):
        h = [0] * (2 * g * k)
        h[offset + i] = 1
        gens.append(tuple(h))
    els = []
    for h in model.elements():
        block = h[g * k:] if not second else h[:g * k]
        if not any(block):
            els.append(h)
    for a in els:
        for b in els:
            if model.omega(a, b):
                raise InvariantViolation("isotropic subgroup", "omega does not vanish")
    members = set(els)
    for h in model.elements():
        if h not in members and all(model.omega(h, a) == 0 for a in els):
            raise InvariantViolation("isotropic subgroup", "not maximal")
    return IsotropicSubgroup(tuple(gens), tuple(els))


def splits_over(model: H1Model, H: IsotropicSubgroup) -> bool:
    """Whether the extension restricted to H admits a homomorphic section.

    H is abelian and isotropic, so lifts of its basis generators commute; the
    extension splits iff every generator h of order m has a lift (c, h) of
    order m, i.e. m c + B'(h, h) m (m - 1) / 2 = 0 is solvable mod n.
    """
    moduli = model.moduli()
    for h in H.generators:
        m = next(mod for x, mod in zip(h, moduli) if x)
        target = -model.cocycle(h, h) * m * (m - 1) // 2
        if not any((m * c - target) % model.n == 0 for c in range(model.n)):
            return False
    return True


def induced_irrep(model: H1Model, H: IsotropicSubgroup, chibar: Optional[Callable] = None,
                  central: int = 1) -> GammaRep:
    """Induce a character of Z/n x H from the preimage of H up to Gamma.

    ``chibar(c, h)`` returns an exponent of zeta_n; by default it is c * central
    on the centre and trivial on H (which is a subgroup of Gamma when the
    cocycle vanishes on it; otherwise NotExtending is raised).
    """
    n = model.n
    if chibar is None:
        chibar = lambda c, h: (central * c) % n  # noqa: E731
    for c in range(n):
        if chibar(c, model.zero()) % n != (central * c) % n:
            raise NotExtending("character does not restrict to zeta on the centre")
    Hset = set(H.elements)
    for a in H.elements:
        for b in H.elements:
            lhs = chibar(*model.mul((0, a), (0, b)))
            if (lhs - chibar(0, a) - chibar(0, b)) % n:
                raise NotExtending("character is not multiplicative on the preimage of H")
    # coset representatives: a complement of H in Q^{2g}
    reps: List[Elem] = []
    seen = set()
    for h in model.elements():
        if h in seen:
            continue
        reps.append(h)
        for a in H.elements:
            seen.add(model.add(h, a))
    index = {}
    for i, r in enumerate(reps):
        for a in H.elements:
            index[model.add(r, a)] = i
    dim = len(reps)

    def act(x):
        perm, exps = [0] * dim, [0] * dim
        for i, r in enumerate(reps):
            y = model.mul(x, (0, r))
            j = index[y[1]]
            # y = rep_j * hbar with hbar in the preimage of H
            hbar = model.mul(model.inv((0, reps[j])), y)
            assert hbar[1] in Hset
            perm[i], exps[i] = j, chibar(*hbar) % n
        return tuple(perm), tuple(exps)

    mats = {x: act(x) for x in model.generators()}
    return GammaRep(dim, n, mats, act, model)


def inner_product(model: H1Model, chi1: Callable, chi2: Callable) -> CycNumber:
    """<chi1, chi2> over Gamma, using chi(c, h) = zeta^c chi(0, h) for central-type characters."""
    cyc = cyc_field(model.n)
    total = cyc.zero()
    for c in range(model.n):
        for h in model.elements():
            x = (c, h)
            total = total + chi1(x) * chi2(x).conj()
    return total / cyc(model.gamma_order)


def is_irreducible(rep: GammaRep) -> bool:
    return inner_product(rep.model, rep.character, rep.character) == cyc_field(rep.n).one()


def commutant_dimension(rep: GammaRep) -> int:
    """dim of {X : rho(g) X = X rho(g)} for the generators, as a monomial system.

    With rho(g) e_a = zeta^l_a e_pi(a): X_{pi a, pi b} = zeta^(l_a - l_b) X_{a b}.
    """
    d = rep.dimension
    sys = MonomialSystem(d * d, rep.n)
    for perm, exps in rep.matrices.values():
        for a in range(d):
            for b in range(d):
                sys.relate(perm[a] * d + perm[b], a * d + b, exps[a] - exps[b])
    return sys.dimension()


def commutant_dimension_dense(rep: GammaRep) -> int:
    """Same dimension by Gaussian elimination on the dense equations (small cases only)."""
    d = rep.dimension
    cyc = cyc_field(rep.n)
    rows = []
    for x in rep.matrices:
        M = rep.dense(x)
        for i in range(d):
            for j in range(d):
                # (M X - X M)_{ij}
                row = [cyc.zero() for _ in range(d * d)]
                for k in range(d):
                    row[k * d + j] = row[k * d + j] + M[i][k]
                    row[i * d + k] = row[i * d + k] - M[k][j]
                rows.append(row)
    return len(nullspace(rows, d * d, cyc))


def class_counts(model: H1Model):
    """Conjugacy classes of Gamma, and the number of irreps for each central character zeta^j.

    Conjugation fixes the vector and shifts the centre by omega(y, h), so the
    class of (c, h) is c + image(omega(-, h)).  An irrep count for central
    character j is the number of classes on which that character can be
    nonzero: those h with j * omega(h, -) = 0.
    """
    els = model.elements()
    n = model.n
    classes = 0
    per_char = [0] * n
    for h in els:
        image = {model.omega(y, h) for y in els}
        classes += n // len(image)
        for j in range(n):
            if all(j * w % n == 0 for w in image):
                per_char[j] += 1
    if sum(per_char) != classes:
        raise InvariantViolation("class count", "irrep counts do not add up to the class number")
    return classes, per_char


def count_central_irreps(model: H1Model, central: int = 1) -> int:
    """Number of irreps on which Z/n acts by zeta^central."""
    _, per_char = class_counts(model)
    return per_char[central % model.n]


def decompose_big_induction(model: H1Model, rep: GammaRep, central: int = 1) -> int:
    """Multiplicity of the central irrep in the induction of zeta from the centre to Gamma.

    That induced character is |Q^{2g}| zeta^c at (c, 0) and zero elsewhere,
    so Ind = V (x) C^m with m = dim V.
    """
    cyc = cyc_field(model.n)
    zero = model.zero()

    def big(x):
        if x[1] != zero:
            return cyc.zero()
        return cyc.zeta_power(central * x[0]) * cyc(model.order)

    m = inner_product(model, big, rep.character)
    if not m.is_rational() or m.coeffs[0].denominator != 1:
        raise InvariantViolation("induction", f"non-integral multiplicity {m}")
    return int(m.coeffs[0])


def characters_agree(rep1: GammaRep, rep2: GammaRep, transport=None) -> bool:
    """chi1(x) == chi2(transport(x)) for all x in Gamma."""
    transport = transport or (lambda x: x)
    m = rep1.model
    return all(rep1.character((c, h)) == rep2.character(transport((c, h)))
               for c in range(m.n) for h in m.elements())


def polarization_transport(model: H1Model):
    """The isomorphism from the upper-law group to the lower-law group."""
    return lambda x: ((x[0] - model.polarization_shift(x[1])) % model.n, x[1])


def report(model: H1Model) -> dict:
    """Summary of the genus-g checks, as plain data."""
    out = {"genus": model.g, "Q": list(model.Q), "order_H1": model.order,
           "gamma_order": model.gamma_order}
    out["nondegenerate"] = check_nondegenerate(model)
    H = maximal_isotropic(model)
    out["H_order"] = H.order
    rep = induced_irrep(model, H)
    out["irrep_dim"] = rep.dimension
    out["irreducible"] = is_irreducible(rep)
    out["commutant_dim"] = commutant_dimension(rep)
    out["central_irreps"] = count_central_irreps(model)
    out["multiplicity"] = decompose_big_induction(model, rep)
    out["splits_over_H"] = splits_over(model, H)
    lower = model.other_polarization()
    out["polarization_independent"] = characters_agree(
        rep, induced_irrep(lower, maximal_isotropic(lower)), polarization_transport(model))
    H2 = maximal_isotropic(model, second=True)
    try:
        rep2 = induced_irrep(model, H2)
        out["second_lagrangian_agrees"] = characters_agree(rep, rep2)
    except NotExtending:
        # {(0, v)} is not a subgroup of Gamma for the upper law; use the lower law
        rep2 = induced_irrep(lower, maximal_isotropic(lower, second=True))
        out["second_lagrangian_agrees"] = characters_agree(rep, rep2, polarization_transport(model))
    out["dimension_count"] = rep.dimension ** 2 * out["central_irreps"] == model.gamma_order // model.n
    return out
