"""Rational functions on P^1 over F_q, their local expansions, and the tame symbol.

A local field F_x = k(x)((s)) is modelled by truncated series: a
``LocalElement`` is s^v times a unit series of fixed length.  The tame symbol
only ever reads the valuation and the constant term of the unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .errors import BadCharacteristic, ParseError, ZeroFunction
from .fields import (FieldElement, FiniteField, ResidueField, is_irreducible,
                     pdivmod, pderiv, peval, pmul, ptrim)

DEFAULT_PRECISION = 4


# --- truncated power series over a field (raw values) -------------------------

def series_mul(F, a, b, T):
    out = [F.zero] * T
    for i, x in enumerate(a[:T]):
        if F.is_zero(x):
            continue
        for j in range(min(len(b), T - i)):
            y = b[j]
            if not F.is_zero(y):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def series_inv(F, a, T):
    if F.is_zero(a[0]):
        raise ZeroDivisionError("series with zero constant term")
    inv0 = F.inv(a[0])
    out = [inv0] + [F.zero] * (T - 1)
    for k in range(1, T):
        acc = F.zero
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = F.add(acc, F.mul(a[j], out[k - j]))
        out[k] = F.neg(F.mul(acc, inv0))
    return out


def series_pad(F, a, T):
    a = list(a[:T])
    return a + [F.zero] * (T - len(a))


# --- local field elements ---------------------------------------------------------

@dataclass(frozen=True)
class LocalElement:
    """unit * s^valuation with unit a truncated series (raw values in ``field``)."""

    field: object
    valuation: int
    coeffs: Tuple

    def __post_init__(self):
        if not self.coeffs or self.field.is_zero(self.coeffs[0]):
            raise ValueError("unit part must have nonzero constant term")

    @property
    def precision(self):
        return len(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[0]

    @property
    def residue_degree(self):
        return self.field.d if isinstance(self.field, ResidueField) else 1

    def __mul__(self, other):
        T = min(self.precision, other.precision)
        return LocalElement(self.field, self.valuation + other.valuation,
                            tuple(series_mul(self.field, self.coeffs, other.coeffs, T)))

    def inverse(self):
        return LocalElement(self.field, -self.valuation,
                            tuple(series_inv(self.field, self.coeffs, self.precision)))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = LocalElement.one(self.field, self.precision)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def truncate(self, T):
        return LocalElement(self.field, self.valuation, tuple(series_pad(self.field, self.coeffs, T)))

    def is_one(self):
        F = self.field
        return self.valuation == 0 and self.coeffs[0] == F.one and all(F.is_zero(c) for c in self.coeffs[1:])

    @staticmethod
    def one(field, T=DEFAULT_PRECISION):
        return LocalElement(field, 0, tuple(series_pad(field, [field.one], T)))

    @staticmethod
    def constant(field, c, T=DEFAULT_PRECISION):
        return LocalElement(field, 0, tuple(series_pad(field, [c], T)))

    @staticmethod
    def uniformizer(field, T=DEFAULT_PRECISION):
        return LocalElement(field, 1, tuple(series_pad(field, [field.one], T)))

    def render(self):
        F = self.field
        return {"v": self.valuation, "unit": [F.render(c) for c in self.coeffs]}


def _base_field(F):
    return F.base if isinstance(F, ResidueField) else F


def tame_symbol(f: LocalElement, g: LocalElement, place_degree: Optional[int] = None) -> FieldElement:
    """(f, g) = (-1)^(d v(f) v(g)) * N(lc(g)^v(f) * lc(f)^(-v(g))), a k-element."""
    F = f.field
    if g.field != F:
        raise ValueError("symbol arguments live in different local fields")
    d = f.residue_degree if place_degree is None else place_degree
    k = _base_field(F)
    inner = F.mul(F.pow(g.lc, f.valuation), F.pow(f.lc, -g.valuation))
    val = F.norm_to_base(inner)
    if (d * f.valuation * g.valuation) % 2:
        val = k.neg(val)
    return FieldElement(k, val)


def is_eth_power(f: LocalElement, e: int) -> bool:
    """f in (F_x*)^e; the leading-coefficient test suffices by Hensel."""
    if e % f.field.characteristic == 0:
        raise BadCharacteristic(f"{e} is divisible by the characteristic")
    return f.valuation % e == 0 and f.field.is_power(f.lc, e)


# --- rational functions over k --------------------------------------------------------

class RationalFunction:
    """num/den over a finite field k, with den monic and gcd not enforced."""

    __slots__ = ("k", "num", "den")

    def __init__(self, k, num, den=None):
        num = ptrim(k, num)
        den = ptrim(k, den if den is not None else [k.one])
        if not den:
            raise ZeroDivisionError("zero denominator")
        inv = k.inv(den[-1])
        self.k = k
        self.num = tuple(k.mul(c, inv) for c in num)
        self.den = tuple(k.mul(c, inv) for c in den)

    def is_zero(self):
        return not self.num

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(self.k, other)
        return RationalFunction(self.k, pmul(self.k, self.num, other.num), pmul(self.k, self.den, other.den))

    def inverse(self):
        if not self.num:
            raise ZeroFunction("inverse of zero function")
        return RationalFunction(self.k, self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        base = self if e >= 0 else self.inverse()
        out = RationalFunction(self.k, [self.k.one])
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        k = self.k
        return ptrim(k, pmul(k, self.num, other.den)) == ptrim(k, pmul(k, other.num, self.den))

    @staticmethod
    def constant(k, c):
        if isinstance(c, FieldElement):
            c = c.v
        elif isinstance(c, int):
            c = k.from_int(c)
        return RationalFunction(k, [c])

    @staticmethod
    def t(k):
        return RationalFunction(k, [k.zero, k.one])

    @staticmethod
    def linear(k, a):
        """t - a."""
        a = k.from_int(a) if isinstance(a, int) else a
        return RationalFunction(k, [k.neg(a), k.one])

    def __repr__(self):
        return f"({render_poly(self.k, self.num)})/({render_poly(self.k, self.den)})"


def render_poly(k, a):
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if k.is_zero(c):
            continue
        cs = k.render(c)
        if i == 0:
            terms.append(cs)
        else:
            mono = "t" if i == 1 else f"t^{i}"
            terms.append(mono if c == k.one else f"{cs}*{mono}")
    return " + ".join(terms)


def parse_rational(text: str, k) -> RationalFunction:
    """Parse 'num/den' with polynomials in t and integer coefficients mod p."""
    import sympy

    t = sympy.Symbol("t")
    try:
        expr = sympy.sympify(text, locals={"t": t}, convert_xor=True)
        num, den = sympy.fraction(sympy.together(expr))
        pn = sympy.Poly(num, t)
        pd = sympy.Poly(den, t)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError, SyntaxError) as exc:
        raise ParseError(f"cannot parse rational function {text!r}: {exc}") from exc

    def coeffs(poly):
        out = []
        for c in reversed(poly.all_coeffs()):
            if not c.is_Integer:
                raise ParseError(f"non-integer coefficient {c} in {text!r}")
            out.append(k.from_int(int(c)))
        return out

    num_c, den_c = coeffs(pn), coeffs(pd)
    if not ptrim(k, den_c):
        raise ParseError(f"denominator vanishes mod p in {text!r}")
    rf = RationalFunction(k, num_c, den_c)
    return rf


# --- places of P^1 -------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """A closed point of P^1: a monic irreducible polynomial, or None for infinity."""

    k: object
    poly: Optional[Tuple]

    @property
    def is_infinite(self):
        return self.poly is None

    @property
    def degree(self):
        return 1 if self.poly is None else len(self.poly) - 1

    @property
    def residue_field(self):
        if self.poly is None or self.degree == 1:
            return self.k
        return _residue_field(self.k, self.poly)

    def sort_key(self):
        return (1, ()) if self.poly is None else (0, (len(self.poly), tuple(reversed(self.poly))))

    def label(self):
        if self.poly is None:
            return "inf"
        if self.degree == 1:
            return self.k.render(self.k.neg(self.poly[0]))
        return render_poly(self.k, self.poly)

    def __repr__(self):
        return f"Place({self.label()})"


@lru_cache(maxsize=None)
def _residue_field(k, poly):
    return ResidueField(k, list(poly), check=False)


def infinite_place(k):
    return Place(k, None)


def point_place(k, a):
    """Degree-one place t = a."""
    a = k.from_int(a) if isinstance(a, int) else a
    return Place(k, (k.neg(a), k.one))


def place_from_poly(k, poly):
    poly = ptrim(k, poly)
    inv = k.inv(poly[-1])
    poly = [k.mul(c, inv) for c in poly]
    if not is_irreducible(k, poly):
        raise ValueError("place polynomial must be irreducible")
    return Place(k, tuple(poly))


def parse_place(k, token):
    if isinstance(token, str) and token.strip().lower() in ("inf", "infinity", "oo"):
        return infinite_place(k)
    return point_place(k, int(token))


def monic_factors(k, a):
    """Distinct monic irreducible factors of a polynomial (trial division)."""
    a = ptrim(k, a)
    out = []
    if len(a) <= 1:
        return out
    elems = list(range(k.size))  # raw codes of a FiniteField

    def strip(f, rem):
        while True:
            quo, r = pdivmod(k, rem, f)
            if r:
                return rem
            rem = quo

    # linear factors by root search
    for c in elems:
        if len(a) <= 1:
            break
        if k.is_zero(peval(k, a, c)):
            f = [k.neg(c), k.one]
            out.append(tuple(f))
            a = strip(f, a)
    j = 2
    while len(a) - 1 >= 2 * j:
        if is_irreducible(k, a):
            break
        for low in itertools.product(elems, repeat=j):
            f = list(low) + [k.one]
            if len(a) - 1 < 2 * j:
                break
            if not pdivmod(k, a, f)[1] and is_irreducible(k, f):
                out.append(tuple(f))
                a = strip(f, a)
        j += 1
    if len(a) > 1:
        inv = k.inv(a[-1])
        out.append(tuple(k.mul(c, inv) for c in a))
    return out


def support(h: RationalFunction):
    """Places where h has a zero or a pole (infinity always included)."""
    if h.is_zero():
        raise ZeroFunction("zero function has no divisor")
    polys = set(monic_factors(h.k, h.num)) | set(monic_factors(h.k, h.den))
    places = {Place(h.k, p) for p in polys}
    places.add(infinite_place(h.k))
    return places


# --- localisation ---------------------------------------------------------------------

def _order_at(k, a, pi):
    v = 0
    while True:
        quo, r = pdivmod(k, a, pi)
        if r:
            return v, a
        a = quo
        v += 1


@lru_cache(maxsize=None)
def _local_parameter(k, poly, T):
    """Series t(s) in k(x)[[s]] with pi(t(s)) = s."""
    R = _residue_field(k, poly)
    pi = list(poly)
    theta = R.reduce([k.zero, k.one])
    lift = [R.from_base(c) for c in pi]
    dlift = [R.from_base(c) for c in pderiv(k, pi)]
    inv_d = R.inv(_eval_series_poly(R, dlift, [theta], 1)[0])
    tser = [theta] + [R.zero] * (T - 1)
    for j in range(1, T):
        val = _eval_series_poly(R, lift, tser, j + 1)
        target = R.one if j == 1 else R.zero
        tser[j] = R.mul(R.sub(target, val[j]), inv_d)
    return tuple(tser)


def _eval_series_poly(R, coeffs, ser, T):
    acc = [R.zero] * T
    ser = series_pad(R, ser, T)
    for c in reversed(coeffs):
        acc = series_mul(R, acc, ser, T)
        acc[0] = R.add(acc[0], c)
    return acc


def rational_localize(h: RationalFunction, x: Place, T: int = DEFAULT_PRECISION) -> LocalElement:
    """Valuation and the first T unit coefficients of h at x."""
    if h.is_zero():
        raise ZeroFunction("cannot localize the zero function")
    k = h.k
    num, den = list(h.num), list(h.den)
    if x.is_infinite:
        v = (len(den) - 1) - (len(num) - 1)
        rn = [c for c in reversed(num)]
        rd = [c for c in reversed(den)]
        unit = series_mul(k, series_pad(k, rn, T), series_inv(k, series_pad(k, rd, T), T), T)
        return LocalElement(k, v, tuple(unit))
    pi = list(x.poly)
    vn, num = _order_at(k, num, pi)
    vd, den = _order_at(k, den, pi)
    if x.degree == 1:
        a = k.neg(pi[0])
        # Taylor expansion at a: substitute t = a + s
        tser = [a, k.one]
        ns = _eval_series_poly(k, num, tser, T)
        ds = _eval_series_poly(k, den, tser, T)
        F = k
    else:
        F = x.residue_field
        tser = list(_local_parameter(k, x.poly, T))
        ns = _eval_series_poly(F, [F.from_base(c) for c in num], tser, T)
        ds = _eval_series_poly(F, [F.from_base(c) for c in den], tser, T)
    unit = series_mul(F, ns, series_inv(F, ds, T), T)
    return LocalElement(F, vn - vd, tuple(unit))


def local_symbol(f: RationalFunction, g: RationalFunction, x: Place, T: int = 1) -> FieldElement:
    return tame_symbol(rational_localize(f, x, T), rational_localize(g, x, T), x.degree)


def reciprocity_check(f: RationalFunction, g: RationalFunction):
    """Product of local tame symbols over all places; returns (product, locals)."""
    places = sorted(support(f) | support(g), key=Place.sort_key)
    k = f.k
    prod = FieldElement(k, k.one)
    local = {}
    for x in places:
        val = local_symbol(f, g, x)
        local[x] = val
        prod = prod * val
    return prod, local


def random_polynomial(k, rng, max_degree, monic=False):
    deg = rng.randint(0, max_degree)
    coeffs = [_random_elem(k, rng) for _ in range(deg)]
    lead = k.one if monic else _random_unit(k, rng)
    return coeffs + [lead]


def _random_elem(k, rng):
    code = rng.randrange(k.size)
    return code if isinstance(k, FiniteField) else k.from_int(code)


def _random_unit(k, rng):
    while True:
        c = _random_elem(k, rng)
        if not k.is_zero(c):
            return c


def random_rational(k, rng, max_degree=4):
    return RationalFunction(k, random_polynomial(k, rng, max_degree), random_polynomial(k, rng, max_degree, monic=True))
