"""Exact arithmetic in F_p, F_{p^k} (and towers over them), plus dual numbers.

Field elements are encoded as integer codes in ``range(field.order)``: the
base-``|base|`` digits of a code are its coefficients in the power basis of the
defining modulus. Codes of a base field therefore embed unchanged into any
extension built on top of it, which is how points and maps are re-based.

Small extension fields (at most ``TABLE_LIMIT`` elements) use log/Zech tables;
larger ones fall back to polynomial arithmetic modulo the defining polynomial.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import _dense
from .errors import DivisionByZero, FieldMismatch, FieldTooLarge, NotIrreducible, NotPrime

TABLE_LIMIT = 1 << 16
MAX_FIELD_SIZE = 10**7
RESIDUE_TABLE_LIMIT = 1 << 10


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FiniteField:
    """Common interface. Subclasses bind ``add``/``mul``/... as fast callables."""

    p: int
    order: int
    degree: int
    base: "FiniteField | None"
    modulus: tuple

    zero = 0
    one = 1

    def __call__(self, value):
        if isinstance(value, FieldElem):
            return value.to(self)
        return FieldElem(self, self.from_int(value))

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.order)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    @property
    def absolute_degree(self):
        k, F = 1, self
        while F.base is not None:
            k *= F.degree
            F = F.base
        return k

    @property
    def prime_field(self):
        F = self
        while F.base is not None:
            F = F.base
        return F

    def tower(self):
        """Fields from this one down to the prime field."""
        out, F = [self], self
        while F.base is not None:
            F = F.base
            out.append(F)
        return out

    def contains(self, other):
        """True when ``other`` is this field or lies below it in the tower."""
        return any(F == other for F in self.tower())

    @property
    def generator(self):
        """Class of x modulo the defining polynomial."""
        if self.base is None:
            return self.neg(self.modulus[0])
        return self.base.order

    @property
    def primitive_element(self):
        """Smallest code generating the multiplicative group."""
        n = self.order - 1
        if n == 1:
            return 1
        primes = _dense._prime_factors(n)
        for a in range(2, self.order):
            if all(self.pow(a, n // r) != 1 for r in primes):
                return a
        raise ArithmeticError("no primitive element")

    def decode(self, a):
        """Coefficients of a over the base field (length ``degree``)."""
        if self.base is None:
            return [a]
        B = self.base.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, B)
            out.append(r)
        return out

    def encode(self, digits):
        if self.base is None:
            return digits[0] % self.p if digits else 0
        B, a = self.base.order, 0
        for d in reversed(digits):
            a = a * B + d
        return a

    def frobenius(self, a):
        return self.pow(a, self.p)

    def is_square(self, a):
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    def _key(self):
        return (self.base._key() if self.base is not None else self.p, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.order}; {self.base!r}[x]/{list(self.modulus)})"


class PrimeField(FiniteField):
    def __init__(self, p):
        self.p = p
        self.order = p
        self.degree = 1
        self.base = None
        # k = 1 is stored with the conventional modulus x + 1.
        self.modulus = (1, 1)

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def neg(self, a):
        return self.p - a if a else 0

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def frobenius(self, a):
        return a


class ExtensionField(FiniteField):
    """base[x] / (modulus) for a monic irreducible modulus over ``base``."""

    def __init__(self, base, modulus, table_limit=TABLE_LIMIT):
        modulus = tuple(_dense.trim(modulus))
        if len(modulus) < 2 or modulus[-1] != 1:
            raise NotIrreducible("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.p = base.p
        self.degree = len(modulus) - 1
        self.order = base.order**self.degree
        self._mod = list(modulus)
        if self.order <= table_limit:
            self._build_tables()
        else:
            self.add = self._gadd
            self.mul = self._gmul
            self.neg = self._gneg
            self.inv = self._ginv
            self.pow = self._gpow

    # generic arithmetic on digit vectors
    def _gadd(self, a, b):
        if not a:
            return b
        if not b:
            return a
        bf = self.base
        return self.encode([bf.add(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def _gneg(self, a):
        bf = self.base
        return self.encode([bf.neg(x) for x in self.decode(a)])

    def _gmul(self, a, b):
        if not a or not b:
            return 0
        bf = self.base
        prod = _dense.mod(bf, _dense.mul(bf, self.decode(a), self.decode(b)), self._mod)
        return self.encode(prod)

    def _ginv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        g, s, _ = _dense.xgcd(self.base, self.decode(a), self._mod)
        return self.encode(_dense.mod(self.base, s, self._mod))

    def _gpow(self, a, n):
        if n < 0:
            a, n = self._ginv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self._gmul(result, a)
            n >>= 1
            if n:
                a = self._gmul(a, a)
        return result

    def _build_tables(self):
        n = self.order - 1
        g = self._find_primitive()
        exp = [0] * (2 * n + 1)
        log = [0] * self.order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._gmul(x, g)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        zech = [-1] * n
        for d in range(n):
            s = self._gadd(1, exp[d])
            zech[d] = log[s] if s else -1
        half = n // 2 if self.p != 2 else 0
        self._exp, self._log, self._zech, self._n = exp, log, zech, n
        self.primitive = g

        def add(a, b):
            if not a:
                return b
            if not b:
                return a
            la = log[a]
            d = log[b] - la
            if d < 0:
                d += n
            z = zech[d]
            return 0 if z < 0 else exp[la + z]

        def mul(a, b):
            if not a or not b:
                return 0
            return exp[log[a] + log[b]]

        def neg(a):
            return exp[log[a] + half] if a else 0

        def inv(a):
            if not a:
                raise DivisionByZero("inverse of zero")
            return exp[n - log[a]]

        def pow_(a, e):
            if e == 0:
                return 1
            if not a:
                if e < 0:
                    raise DivisionByZero("inverse of zero")
                return 0
            return exp[(log[a] * e) % n]

        self.add, self.mul, self.neg, self.inv, self.pow = add, mul, neg, inv, pow_

    def _find_primitive(self):
        # used while building the tables, so only the generic routines are available
        n = self.order - 1
        primes = _dense._prime_factors(n)
        for a in range(2, self.order):
            if all(self._gpow(a, n // r) != 1 for r in primes):
                return a
        raise ArithmeticError("no primitive element")


@lru_cache(maxsize=None)
def extension(base, modulus):
    """Cached ExtensionField(base, modulus); modulus is trusted to be irreducible."""
    return ExtensionField(base, tuple(modulus))


@lru_cache(maxsize=None)
def residue_field(base, modulus):
    """base[x]/(modulus) for one-off local computations: log tables only when tiny."""
    return ExtensionField(base, tuple(modulus), table_limit=RESIDUE_TABLE_LIMIT)


@lru_cache(maxsize=None)
def level_field(base, m):
    """F_{q^m} over ``base`` = F_q, defined by the smallest monic irreducible of degree m."""
    if m == 1:
        return base
    return extension(base, tuple(_dense.smallest_irreducible(base, m)))


def build_field(p, k=1, modulus=None, max_size=MAX_FIELD_SIZE):
    """Return F_{p^k}; the modulus defaults to the lexicographically smallest monic irreducible."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > max_size:
        raise FieldTooLarge(f"field of size {p}^{k} exceeds the cap {max_size}")
    return _build_field(p, k, tuple(modulus) if modulus is not None else None)


@lru_cache(maxsize=None)
def _build_field(p, k, modulus):
    Fp = PrimeField(p)
    if modulus is not None:
        modulus = _dense.trim([c % p for c in modulus])
        if len(modulus) - 1 != k:
            raise NotIrreducible(f"modulus has degree {len(modulus) - 1}, expected {k}")
        modulus = _dense.monic(Fp, modulus)
        if not _dense.is_irreducible(Fp, modulus):
            raise NotIrreducible(f"modulus {modulus} factors over F_{p}")
        if k == 1:
            return Fp
        return extension(Fp, tuple(modulus))
    if k == 1:
        return Fp
    return extension(Fp, tuple(_dense.smallest_irreducible(Fp, k)))


@dataclass(frozen=True)
class FieldElem:
    field: FiniteField
    code: int

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return other.code
            if self.field.contains(other.field):
                return other.code
            raise FieldMismatch(f"{other.field!r} is not contained in {self.field!r}")
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def to(self, field):
        if not field.contains(self.field):
            raise FieldMismatch(f"cannot embed {self.field!r} into {field!r}")
        return FieldElem(field, self.code)

    @property
    def coeffs(self):
        return self.field.decode(self.code)

    def is_zero(self):
        return self.code == 0

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(b, self.code))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(b, self.field.inv(self.code)))

    def __pow__(self, n):
        return FieldElem(self.field, self.field.pow(self.code, n))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            if self.field == other.field or self.field.contains(other.field) or other.field.contains(self.field):
                return self.code == other.code
            return False
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.code)

    def __bool__(self):
        return self.code != 0

    def inverse(self):
        return invert(self)

    def frobenius(self):
        return frobenius(self)

    def __repr__(self):
        return f"FieldElem({self.code} in {self.field!r})"


def invert(a):
    if a.code == 0:
        raise DivisionByZero("zero has no inverse")
    return FieldElem(a.field, a.field.inv(a.code))


def frobenius(a):
    """a -> a^p."""
    return FieldElem(a.field, a.field.pow(a.code, a.field.p))


class DualNumber:
    """a + b*eps over a finite field, with eps^2 = 0."""

    __slots__ = ("field", "a", "b")

    def __init__(self, re, eps=None, field=None):
        if field is None:
            field = re.field
            re, eps = re.code, (0 if eps is None else field(eps).code)
        self.field = field
        self.a = re
        self.b = 0 if eps is None else eps

    @property
    def re(self):
        return FieldElem(self.field, self.a)

    @property
    def eps(self):
        return FieldElem(self.field, self.b)

    def _lift(self, other):
        if isinstance(other, DualNumber):
            return other.a, other.b
        if isinstance(other, FieldElem):
            return other.code, 0
        if isinstance(other, int):
            return self.field.from_int(other), 0
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        F = self.field
        return DualNumber(F.add(self.a, o[0]), F.add(self.b, o[1]), field=F)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return DualNumber(F.neg(self.a), F.neg(self.b), field=F)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        F = self.field
        return DualNumber(F.sub(self.a, o[0]), F.sub(self.b, o[1]), field=F)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        F = self.field
        c, d = o
        return DualNumber(F.mul(self.a, c), F.add(F.mul(self.a, d), F.mul(self.b, c)), field=F)

    __rmul__ = __mul__

    def inverse(self):
        # (a + eps b)^-1 = a^-1 - eps b a^-2
        F = self.field
        if self.a == 0:
            raise DivisionByZero("dual number with zero real part is not invertible")
        ia = F.inv(self.a)
        return DualNumber(ia, F.neg(F.mul(self.b, F.mul(ia, ia))), field=F)

    def __truediv__(self, other):
        if not isinstance(other, DualNumber):
            o = self._lift(other)
            if o is None:
                return NotImplemented
            other = DualNumber(o[0], o[1], field=self.field)
        return self * other.inverse()

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b) == o

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"DualNumber({self.a} + {self.b}*eps in {self.field!r})"
