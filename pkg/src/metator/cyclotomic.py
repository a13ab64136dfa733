"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Numbers are coefficient vectors in the power basis 1, z, ..., z^(phi(N)-1)
where z = zeta_N.  Products are reduced with a precomputed table of the
powers z^j, 0 <= j < N.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_divexact(a, b):
    """Exact quotient of integer polynomials (lowest degree first), b monic."""
    a = list(a)
    db = len(b) - 1
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            quo[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return quo


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N):
    """Integer coefficients of Phi_N, lowest degree first."""
    if N < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


class CycField:
    def __init__(self, N):
        self.N = N
        phi = cyclotomic_polynomial(N)
        self.phi = phi
        self.dim = len(phi) - 1
        # powers[j] = coefficient vector of z^j
        powers = []
        cur = [0] * self.dim
        cur[0] = 1
        for _ in range(N):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, phi[:-1])]
        self._powers = powers

    def __eq__(self, other):
        return isinstance(other, CycField) and other.N == self.N

    def __hash__(self):
        return hash(("cyc", self.N))

    def __repr__(self):
        return f"Q(zeta_{self.N})"

    def zero(self):
        return CycNumber(self, (Fraction(0),) * self.dim)

    def one(self):
        return self.zeta_power(0)

    def __call__(self, x):
        if isinstance(x, CycNumber):
            if x.field != self:
                raise ValueError("mixing cyclotomic fields")
            return x
        v = [Fraction(0)] * self.dim
        v[0] = Fraction(x)
        return CycNumber(self, tuple(v))

    def zeta_power(self, k):
        return CycNumber(self, tuple(Fraction(c) for c in self._powers[k % self.N]))

    def from_exponents(self, coeffs):
        """Sum of c * z^k over a mapping k -> c."""
        v = [Fraction(0)] * self.dim
        for k, c in coeffs.items():
            if c:
                for i, p in enumerate(self._powers[k % self.N]):
                    if p:
                        v[i] += c * p
        return CycNumber(self, tuple(v))

    def root_of_unity_exponent(self, x):
        """k with x = z^k, or None if x is not an N-th root of unity."""
        for k in range(self.N):
            if tuple(x.coeffs) == self._powers[k]:
                return k
        return None


@lru_cache(maxsize=None)
def cyc_field(N):
    return CycField(N)


class CycNumber:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _other(self, o):
        if isinstance(o, CycNumber):
            if o.field.N != self.field.N:
                raise ValueError("mixing cyclotomic fields")
            return o
        if isinstance(o, (int, Fraction)):
            return self.field(o)
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return CycNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return CycNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return CycNumber(self.field, tuple(a * o for a in self.coeffs))
        o = self._other(o)
        if o is None:
            return NotImplemented
        F = self.field
        dim = F.dim
        acc = [Fraction(0)] * dim
        # multiply in Z[x]/(x^N - 1) first, then reduce each power once
        prod = {}
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    k = i + j
                    prod[k] = prod.get(k, 0) + a * b
        powers = F._powers
        for k, c in prod.items():
            if not c:
                continue
            if k < dim:
                acc[k] += c
                continue
            for idx, p in enumerate(powers[k % F.N]):
                if p:
                    acc[idx] += c * p
        return CycNumber(F, tuple(acc))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (columns)."""
        F = self.field
        cols = []
        for i in range(F.dim):
            basis = [Fraction(0)] * F.dim
            basis[i] = Fraction(1)
            cols.append((self * CycNumber(F, tuple(basis))).coeffs)
        return [[cols[j][i] for j in range(F.dim)] for i in range(F.dim)]

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        F = self.field
        M = self.mult_matrix()
        rhs = [Fraction(1)] + [Fraction(0)] * (F.dim - 1)
        return CycNumber(F, tuple(_solve(M, rhs)))

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return CycNumber(self.field, tuple(a / o for a in self.coeffs))
        o = self._other(o)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.field(o) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self):
        """Image under z -> z^-1 (complex conjugation)."""
        F = self.field
        return F.from_exponents({(-i) % F.N: c for i, c in enumerate(self.coeffs) if c})

    def __eq__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.N, self.coeffs))

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_json(self):
        return {"order": self.field.N,
                "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        F = cyc_field(int(data["order"]))
        coeffs = tuple(Fraction(s) for s in data["coeffs"])
        if len(coeffs) != F.dim:
            raise ValueError("coefficient vector has the wrong length")
        return cls(F, coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"


def _solve(M, rhs):
    n = len(M)
    A = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def value_order(n, q):
    """N = lcm(n, q - 1)."""
    return n * (q - 1) // gcd(n, q - 1)


def zeta_value(c, n, field):
    """The injective character Z/n -> Q(zeta_N)*, c -> zeta_N^(c N / n)."""
    if field.N % n:
        raise ValueError(f"{n} does not divide {field.N}")
    return field.zeta_power((c % n) * (field.N // n))
