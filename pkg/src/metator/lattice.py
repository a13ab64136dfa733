"""Integer lattice data attached to an even symmetric form kappa.

Everything is plain Python ints.  Matrices are lists of rows; basis
matrices store basis vectors as columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import List, Tuple

from .errors import DegeneratePairing, NotEven, NotSymmetric

Matrix = List[List[int]]


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def transpose(A):
    return [list(col) for col in zip(*A)]


def identity(r):
    return [[int(i == j) for j in range(r)] for i in range(r)]


def column(A, j):
    return [row[j] for row in A]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def determinant(A):
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return int(det)


def integer_inverse(A):
    """Inverse of a unimodular integer matrix."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c])
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    out = [row[n:] for row in M]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


@dataclass(frozen=True)
class BilinearForm:
    rank: int
    matrix: Tuple[Tuple[int, ...], ...]

    def __call__(self, mu, nu):
        return sum(mu[i] * self.matrix[i][j] * nu[j]
                   for i in range(self.rank) for j in range(self.rank))

    def rows(self):
        return [list(r) for r in self.matrix]


def validate_form(matrix) -> BilinearForm:
    rows = [list(map(int, r)) for r in matrix]
    r = len(rows)
    if r == 0 or any(len(row) != r for row in rows):
        raise NotSymmetric("matrix must be square and nonempty")
    for i in range(r):
        for j in range(i + 1, r):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) differs from ({j},{i})")
        if rows[i][i] % 2:
            raise NotEven(f"diagonal entry {i} is odd")
    return BilinearForm(r, tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class DualPairBasis:
    eps: Matrix   # columns eps_i
    eta: Matrix   # columns eta_i
    d: List[int]


def smith_form(A):
    """Return (U, D, V) with U*A*V = D diagonal, U and V unimodular.

    Nonzero diagonal entries are positive and form a divisibility chain;
    zeros come last.
    """
    m, n = len(A), len(A[0])
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        D[dst] = [x + c * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for M in (D, V):
            for row in M:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def smith_dual_bases(form: BilinearForm) -> DualPairBasis:
    """Bases (eps_i), (eta_i) with kappa(eps_i, eta_j) = d_i if i == j else 0."""
    U, D, V = smith_form(form.rows())
    d = [D[i][i] for i in range(form.rank)]
    for i in range(len(d) - 1):
        if d[i] and d[i + 1]:
            assert d[i + 1] % d[i] == 0
    return DualPairBasis(eps=transpose(U), eta=V, d=d)


def e_values(d, n):
    """Smallest e_i > 0 with d_i * e_i in nZ, and their product."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    es = [n // gcd(di, n) if di else 1 for di in d]
    for di, ei in zip(d, es):
        if di:
            assert gcd(ei, di * ei // n) == 1
    return es, prod(es)


@dataclass(frozen=True)
class SharpData:
    n: int
    e: List[int]
    index: int
    sharp_basis: Matrix  # columns e_i * eps_i
    eps: Matrix
    eta: Matrix
    d: List[int]

    @property
    def rank(self):
        return len(self.e)

    def eps_coords(self, mu):
        """Coordinates of mu in the basis (eps_i)."""
        return mat_vec(_eps_inverse(self), mu)

    def from_eps_coords(self, a):
        return mat_vec(self.eps, a)

    def contains(self, mu):
        return all(c % ei == 0 for c, ei in zip(self.eps_coords(mu), self.e))

    def to_json(self):
        return {"n": self.n, "e": list(self.e), "index": self.index,
                "sharp_basis": [list(r) for r in self.sharp_basis]}


_INV_CACHE = {}


def _eps_inverse(sharp):
    key = tuple(map(tuple, sharp.eps))
    if key not in _INV_CACHE:
        _INV_CACHE[key] = integer_inverse(sharp.eps)
    return _INV_CACHE[key]


def sharp_sublattice(form: BilinearForm, n: int) -> SharpData:
    pair = smith_dual_bases(form)
    es, index = e_values(pair.d, n)
    r = form.rank
    basis = [[pair.eps[i][j] * es[j] for j in range(r)] for i in range(r)]
    return SharpData(n=n, e=es, index=index, sharp_basis=basis,
                     eps=pair.eps, eta=pair.eta, d=pair.d)


def in_sharp_bruteforce(form, n, mu):
    """Definition check: kappa(mu, nu) in nZ for every standard basis vector nu."""
    r = form.rank
    return all(form(mu, [int(i == j) for j in range(r)]) % n == 0 for i in range(r))


@dataclass(frozen=True)
class ResidualPairing:
    n: int
    quotient: List[int]   # invariant factors e_i > 1
    axes: List[int]       # which eps_i index each factor belongs to
    beta: List[List[int]]  # Gram table on the generators, values mod n

    def pair(self, u, v):
        """beta on coordinate vectors (one entry per quotient factor)."""
        k = len(self.quotient)
        return sum(u[i] * self.beta[i][j] * v[j] for i in range(k) for j in range(k)) % self.n

    def elements(self):
        return list(itertools.product(*[range(e) for e in self.quotient]))

    def radical(self):
        els = self.elements()
        return [u for u in els if all(self.pair(u, v) == 0 for v in els)]

    @property
    def order(self):
        return prod(self.quotient)


def residual_pairing(form: BilinearForm, n: int, sharp: SharpData = None, check=True) -> ResidualPairing:
    sharp = sharp or sharp_sublattice(form, n)
    axes = [i for i, e in enumerate(sharp.e) if e > 1]
    quotient = [sharp.e[i] for i in axes]
    eps_cols = [column(sharp.eps, i) for i in axes]
    beta = [[form(a, b) % n for b in eps_cols] for a in eps_cols]
    rp = ResidualPairing(n=n, quotient=quotient, axes=axes, beta=beta)
    if check:
        # symmetric, and well defined: e_i * beta(eps_i, -) = 0 mod n
        for i, ei in enumerate(quotient):
            for j in range(len(quotient)):
                assert beta[i][j] == beta[j][i]
                assert ei * beta[i][j] % n == 0
        rad = rp.radical()
        if len(rad) != 1:
            raise DegeneratePairing(f"radical of order {len(rad)}")
    return rp


def quotient_coords(sharp: SharpData, rp: ResidualPairing, mu):
    """Image of mu in Lambda / Lambda-sharp, in the residual pairing's coordinates."""
    a = sharp.eps_coords(mu)
    return tuple(a[i] % e for i, e in zip(rp.axes, rp.quotient))
