"""Finite fields F_{p^m}, residue fields k[t]/(pi), and discrete logarithms.

Elements are handled through :class:`FieldElement`, a thin wrapper around a
raw value (an ``int`` code for :class:`FiniteField`, a coefficient tuple for
:class:`ResidueField`).  Arithmetic on raw values lives on the field objects.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .errors import UnsupportedField, ZeroElement

# Conway polynomials, coefficients from x^0 up to the (monic) leading term.
CONWAY = {
    (2, 1): (1, 1), (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1), (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1), (5, 2): (2, 4, 1), (5, 3): (3, 3, 0, 1), (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1), (7, 2): (3, 6, 1), (7, 3): (4, 0, 6, 1), (7, 4): (3, 4, 5, 0, 1),
    (11, 1): (9, 1), (11, 2): (2, 7, 1), (11, 3): (9, 2, 0, 1), (11, 4): (2, 10, 8, 0, 1),
    (13, 1): (11, 1), (13, 2): (2, 12, 1), (13, 3): (11, 2, 0, 1), (13, 4): (2, 12, 3, 0, 1),
}

MAX_PRIME_FIELD = 1 << 16


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q):
    """Return (p, m) with q = p^m, or raise UnsupportedField."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                raise UnsupportedField(f"{q} is not a prime power")
            return p, m
    raise UnsupportedField(f"{q} is not a prime power")


class FieldElement:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other.v
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.v))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.v, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(o, self.field.inv(self.v)))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.v, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.v))

    def is_zero(self):
        return self.field.is_zero(self.v)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.v == self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.v == other.v

    def __hash__(self):
        return hash((self.field.key, self.v))

    def __repr__(self):
        return f"{self.field.render(self.v)} in {self.field}"

    def __str__(self):
        return self.field.render(self.v)


class FiniteField:
    """The field F_{p^m} modelled on the Conway polynomial C_{p,m}.

    Prime fields of any size up to MAX_PRIME_FIELD are allowed; proper
    extensions need a table entry (p <= 13, m <= 4).
    """

    def __init__(self, p, m=1):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        if m < 1:
            raise UnsupportedField("degree must be >= 1")
        if m > 1 and (p, m) not in CONWAY:
            raise UnsupportedField(f"no built-in modulus for F_{p}^{m}")
        if m == 1 and p > MAX_PRIME_FIELD:
            raise UnsupportedField(f"prime field too large: {p}")
        self.p = p
        self.m = m
        self.q = p ** m
        self.key = ("GF", p, m)
        if m == 1:
            g = _smallest_primitive_root(p)
            self.modulus = ((-g) % p, 1)
        else:
            self.modulus = CONWAY[(p, m)]
        self._build_tables()

    # raw representation: integer code sum c_i p^i for sum c_i x^i
    def _digits(self, a):
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _undigits(self, ds):
        a = 0
        for c in reversed(ds):
            a = a * self.p + c
        return a

    def _build_tables(self):
        q, p, m = self.q, self.p, self.m
        exp = [0] * (q - 1)
        log = [None] * q
        if m == 1:
            g = (-self.modulus[0]) % p
            a = 1
            for i in range(q - 1):
                if log[a] is not None:
                    raise UnsupportedField("modulus is not primitive")
                exp[i] = a
                log[a] = i
                a = a * g % p
        else:
            low = [(-c) % p for c in self.modulus[:m]]  # x^m = sum low_i x^i
            cur = [1] + [0] * (m - 1)
            for i in range(q - 1):
                a = self._undigits(cur)
                if log[a] is not None:
                    raise UnsupportedField("modulus is not primitive")
                exp[i] = a
                log[a] = i
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c + top * l) % p for c, l in zip(cur, low)]
        self._exp = exp
        self._log = log

    # field protocol -----------------------------------------------------
    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def size(self):
        return self.q

    @property
    def characteristic(self):
        return self.p

    def from_int(self, c):
        return c % self.p

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        out, mult = 0, 1
        for _ in range(self.m):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mult
            mult *= p
        return out

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        return self._undigits([(-c) % self.p for c in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroElement("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroElement("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a):
        if a == 0:
            raise ZeroElement("logarithm of zero")
        return self._log[a]

    def render(self, a):
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self._digits(a)):
            if c:
                terms.append(str(c) if i == 0 else (f"{c}*x" if i == 1 else f"{c}*x^{i}"))
        return "+".join(reversed(terms)) or "0"

    def norm_to_base(self, a):
        return a

    def is_power(self, a, e):
        if a == 0:
            return True
        g = gcd(e, self.q - 1)
        return self._log[a] % g == 0

    # conveniences -----------------------------------------------------------
    def __call__(self, c):
        if isinstance(c, FieldElement):
            return c
        return FieldElement(self, self.from_int(c))

    def element(self, raw):
        return FieldElement(self, raw)

    def generator(self):
        return FieldElement(self, self._exp[1])

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    def units(self):
        return [FieldElement(self, self._exp[i]) for i in range(self.q - 1)]

    def embedding_root(self, base):
        """Root of base.modulus inside self, for a subfield base = F_{p^m'}."""
        if base.p != self.p or self.m % base.m:
            raise UnsupportedField(f"{base} is not a subfield of {self}")
        c = (self.q - 1) // (base.q - 1)
        for j in range(1, base.q):
            if base.q > 2 and gcd(j, base.q - 1) != 1:
                continue
            rho = self._exp[(c * j) % (self.q - 1)]
            acc = 0
            for coeff in reversed(base.modulus):
                acc = self.add(self.mul(acc, rho), coeff)
            if acc == 0:
                return rho
        raise UnsupportedField("no embedding found")

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def GF(p, m=1):
    """Cached constructor for FiniteField."""
    return FiniteField(p, m)


def field_of_order(q):
    p, m = prime_power(q)
    return GF(p, m)


def _smallest_primitive_root(p):
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise UnsupportedField(f"no primitive root mod {p}")


# --- polynomials over a field, raw values, lowest degree first ----------------

def ptrim(F, a):
    a = list(a)
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return ptrim(F, out)


def psub(F, a, b):
    return padd(F, a, [F.neg(c) for c in b])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(F, out)


def pdivmod(F, a, b):
    a = ptrim(F, a)
    b = ptrim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    quo = [F.zero] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b):
        c = F.mul(rem[-1], inv_lead)
        s = len(rem) - len(b)
        quo[s] = c
        for i, y in enumerate(b):
            rem[s + i] = F.sub(rem[s + i], F.mul(c, y))
        rem = ptrim(F, rem[:-1]) if F.is_zero(rem[-1]) else ptrim(F, rem)
    return ptrim(F, quo), rem


def peval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pderiv(F, a):
    return ptrim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def pgcd(F, a, b):
    a, b = ptrim(F, a), ptrim(F, b)
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def ppowmod(F, a, e, mod):
    result = [F.one]
    base = pdivmod(F, a, mod)[1]
    while e:
        if e & 1:
            result = pdivmod(F, pmul(F, result, base), mod)[1]
        base = pdivmod(F, pmul(F, base, base), mod)[1]
        e >>= 1
    return result


def is_irreducible(F, f):
    """Rabin's irreducibility test for a polynomial over a finite field."""
    f = ptrim(F, f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [F.zero, F.one]
    q = F.size
    if psub(F, ppowmod(F, x, q ** d, f), x):
        return False
    for r in prime_factors(d):
        h = psub(F, ppowmod(F, x, q ** (d // r), f), x)
        if len(pgcd(F, f, h)) > 1:
            return False
    return True


class ResidueField:
    """The residue field k[t]/(pi) for a monic irreducible pi over k.

    Raw values are tuples of k-raw values of length deg(pi).
    """

    def __init__(self, base, modulus, check=True):
        modulus = ptrim(base, modulus)
        if not modulus or modulus[-1] != base.one:
            raise UnsupportedField("modulus must be monic")
        if check and not is_irreducible(base, modulus):
            raise UnsupportedField("modulus is not irreducible")
        self.base = base
        self.modulus = tuple(modulus)
        self.d = len(modulus) - 1
        self.size = base.size ** self.d
        self.key = ("RF", base.key, self.modulus)

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def zero(self):
        return (self.base.zero,) * self.d

    @property
    def one(self):
        return (self.base.one,) + (self.base.zero,) * (self.d - 1)

    def _pack(self, poly):
        poly = list(poly) + [self.base.zero] * (self.d - len(poly))
        return tuple(poly)

    def reduce(self, poly):
        return self._pack(pdivmod(self.base, poly, self.modulus)[1])

    def from_base(self, c):
        return self._pack([c])

    def from_int(self, c):
        return self.from_base(self.base.from_int(c))

    def is_zero(self, a):
        return all(self.base.is_zero(c) for c in a)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        return self.reduce(pmul(self.base, ptrim(self.base, a), ptrim(self.base, b)))

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroElement("inverse of zero")
        return self.pow(a, self.size - 2)

    def norm_to_base(self, a):
        """N_{k(x)/k}(a) = a^{(q^d-1)/(q-1)}, returned as a k-raw value."""
        if self.is_zero(a):
            return self.base.zero
        r = self.pow(a, (self.size - 1) // (self.base.size - 1))
        if any(not self.base.is_zero(c) for c in r[1:]):
            raise ArithmeticError("norm did not land in the base field")
        return r[0]

    def is_power(self, a, e):
        if self.is_zero(a):
            return True
        g = gcd(e, self.size - 1)
        return self.pow(a, (self.size - 1) // g) == self.one

    def render(self, a):
        terms = [f"({self.base.render(c)})*t^{i}" for i, c in enumerate(a) if not self.base.is_zero(c)]
        return "+".join(terms) or "0"

    def __call__(self, c):
        if isinstance(c, FieldElement):
            if c.field == self.base:
                return FieldElement(self, self.from_base(c.v))
            return c
        return FieldElement(self, self.from_int(c))

    def element(self, raw):
        return FieldElement(self, raw)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{self.base!r}[t]/({self.render(self.modulus[:-1])}+t^{self.d})"


def field_norm(a, base=None):
    """Norm of a down to the base field k, as a k-element.

    For a ResidueField element the base is implicit.  For a FiniteField
    element of F_{p^m} a subfield F_{p^m'} must be passed as ``base``.
    """
    F = a.field
    if isinstance(F, ResidueField):
        return FieldElement(F.base, F.norm_to_base(a.v))
    if base is None or base == F:
        return a
    if a.is_zero():
        return FieldElement(base, 0)
    k = F.m // base.m
    r = a.v
    acc = F.one
    for i in range(k):
        acc = F.mul(acc, F.pow(r, base.q ** i))
    rho = F.embedding_root(base)
    # acc = rho^j for a unique j mod (q_base - 1)
    c = (F.q - 1) // (base.q - 1)
    la, lr = F.log(acc), F.log(rho)
    # solve lr*j = la mod (F.q-1), both multiples of c
    j = (la // c) * pow(lr // c, -1, base.q - 1) % (base.q - 1) if base.q > 2 else 0
    return FieldElement(base, base._exp[j])


class DlogTable:
    """Discrete logarithm table for the unit group of a finite field."""

    def __init__(self, field, generator=None):
        self.field = field
        order = field.size - 1
        if generator is None:
            if isinstance(field, FiniteField):
                generator = field.generator()
            else:
                generator = _find_generator(field)
        elif not isinstance(generator, FieldElement):
            generator = field(generator)
        self.generator = generator
        self.order = order
        table = {}
        a = field.one
        for i in range(order):
            if a in table:
                raise UnsupportedField(f"{generator} is not a generator of the unit group")
            table[a] = i
            a = field.mul(a, generator.v)
        self.table = table

    def __call__(self, u):
        return dlog(u, self)


def _find_generator(field):
    order = field.size - 1
    fs = prime_factors(order)
    # enumerate raw values of the residue field in a fixed order
    base_elems = [FieldElement(field.base, x).v for x in range(field.base.size)] \
        if isinstance(field.base, FiniteField) else None
    if base_elems is None:
        raise UnsupportedField("nested residue fields are not supported")
    import itertools
    for coeffs in itertools.product(base_elems, repeat=field.d):
        a = tuple(coeffs)
        if field.is_zero(a):
            continue
        if all(field.pow(a, order // r) != field.one for r in fs):
            return FieldElement(field, a)
    raise UnsupportedField("no generator found")


def dlog(u, table):
    """Exponent i in Z/(q^d - 1) with generator^i = u."""
    v = u.v if isinstance(u, FieldElement) else u
    if table.field.is_zero(v):
        raise ZeroElement("dlog of zero")
    if isinstance(table.field, FiniteField) and table.generator.v == table.field._exp[1]:
        return table.field._log[v]
    return table.table[v]


def power_class(u, m, table):
    """Class of u in k*/(k*)^m, identified with Z/m through dlog mod m."""
    if (table.order) % m:
        raise ValueError(f"{m} does not divide {table.order}")
    return dlog(u, table) % m


def minus_one_is_nth_power(field, n):
    """Whether -1 lies in (k*)^n (requires n | q-1)."""
    minus_one = field.neg(field.one)
    return field.is_power(minus_one, n)
