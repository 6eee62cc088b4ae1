"""Polynomials, reduced rational maps P^1 -> P^1, points, local series, Moebius maps."""

from dataclasses import dataclass, field as dc_field

from . import _dense
from .errors import ConstantMap, FieldMismatch, ZeroMap
from .fields import FieldElem, FiniteField


def common_field(*fields):
    """The largest field in a chain of towers; raises when the fields are unrelated."""
    top = fields[0]
    for F in fields[1:]:
        if top.contains(F):
            continue
        if F.contains(top):
            top = F
        else:
            raise FieldMismatch(f"{F!r} and {top!r} do not lie in a common tower")
    return top


@dataclass(frozen=True)
class Poly:
    field: FiniteField
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_dense.trim(self.coeffs)))

    @classmethod
    def from_ints(cls, field, coeffs):
        return cls(field, tuple(field.from_int(c) for c in coeffs))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @property
    def deg(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _other(self, other):
        if isinstance(other, Poly):
            return list(other.coeffs)
        if isinstance(other, FieldElem):
            return [other.code] if other.code else []
        if isinstance(other, int):
            c = self.field.from_int(other)
            return [c] if c else []
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly(self.field, _dense.add(self.field, list(self.coeffs), o))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, _dense.neg(self.field, self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly(self.field, _dense.sub(self.field, list(self.coeffs), o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly(self.field, _dense.mul(self.field, list(self.coeffs), o))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly(self.field, (1,))
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        q, r = _dense.divmod_(self.field, list(self.coeffs), list(other.coeffs))
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        x = x.code if isinstance(x, FieldElem) else x
        return FieldElem(self.field, _dense.evaluate(self.field, self.coeffs, x))

    def derivative(self):
        return Poly(self.field, _dense.derivative(self.field, self.coeffs))

    def monic(self):
        return Poly(self.field, _dense.monic(self.field, self.coeffs))

    def gcd(self, other):
        return Poly(self.field, _dense.gcd(self.field, self.coeffs, other.coeffs))

    def over(self, field):
        if not field.contains(self.field):
            raise FieldMismatch(f"cannot embed {self.field!r} into {field!r}")
        return Poly(field, self.coeffs)


@dataclass(frozen=True)
class PointP1:
    """A point of P^1 over ``field``: an affine code, or infinity when ``value`` is None."""

    field: FiniteField
    value: "int | None" = None

    @classmethod
    def infinity(cls, field):
        return cls(field, None)

    @classmethod
    def affine(cls, field, value):
        if isinstance(value, FieldElem):
            return cls(common_field(field, value.field), value.code)
        return cls(field, field.from_int(value))

    @property
    def is_infinity(self):
        return self.value is None

    @property
    def elem(self):
        return None if self.value is None else FieldElem(self.field, self.value)

    def to(self, field):
        if not field.contains(self.field):
            raise FieldMismatch(f"cannot embed {self.field!r} into {field!r}")
        return PointP1(field, self.value)

    def __eq__(self, other):
        if not isinstance(other, PointP1):
            return NotImplemented
        if not (self.field.contains(other.field) or other.field.contains(self.field)):
            return False
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "PointP1(inf)" if self.value is None else f"PointP1({self.value} in {self.field!r})"


@dataclass(frozen=True)
class LocalSeries:
    """Truncated power series a_0 + a_1 s + ... + a_order s^order."""

    field: FiniteField
    coeffs: tuple
    order: int

    def __getitem__(self, j):
        return self.coeffs[j]

    def valuation(self):
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return None


class RatFunc:
    """A reduced quotient num/den with den monic; may be zero or constant."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        num, den = _dense.trim(num), _dense.trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = [1]
        else:
            g = _dense.gcd(field, num, den)
            if len(g) > 1:
                num = _dense.exact_div(field, num, g)
                den = _dense.exact_div(field, den, g)
            c = field.inv(den[-1])
            num, den = _dense.scale(field, num, c), _dense.scale(field, den, c)
        self.field = field
        self.num = tuple(num)
        self.den = tuple(den)

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def as_map(self):
        return reduce_map(Poly(self.field, self.num), Poly(self.field, self.den))

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and (self.field.contains(other.field) or other.field.contains(self.field))
            and (self.num, self.den) == (other.num, other.den)
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({list(self.num)} / {list(self.den)})"


@dataclass(frozen=True, eq=False)
class RatMap:
    """A separable-or-not map P^1 -> P^1 of positive degree, stored reduced and normalized.

    Normalization: gcd(num, den) = 1 and den is monic.
    """

    field: FiniteField
    num: tuple
    den: tuple
    degree: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "degree", max(len(self.num), len(self.den)) - 1)

    @classmethod
    def from_coeffs(cls, field, num, den=(1,)):
        return reduce_map(Poly.from_ints(field, num), Poly.from_ints(field, den))

    @property
    def p(self):
        return self.field.p

    def num_poly(self):
        return Poly(self.field, self.num)

    def den_poly(self):
        return Poly(self.field, self.den)

    def is_polynomial(self):
        return len(self.den) == 1

    def over(self, field):
        if field == self.field:
            return self
        if not field.contains(self.field):
            raise FieldMismatch(f"cannot re-base {self.field!r} map to {field!r}")
        return RatMap(field, self.num, self.den)

    def __call__(self, point):
        return evaluate(self, point)

    def __eq__(self, other):
        return (
            isinstance(other, RatMap)
            and (self.field.contains(other.field) or other.field.contains(self.field))
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        from .expr import render

        return f"RatMap({render(self)} over {self.field!r})"


def reduce_map(num, den):
    """Cancel the gcd, normalize den to be monic and compute the degree."""
    F = common_field(num.field, den.field)
    n, d = _dense.trim(num.coeffs), _dense.trim(den.coeffs)
    if not n:
        raise ZeroMap("numerator is zero")
    if not d:
        raise ZeroMap("denominator is zero")
    g = _dense.gcd(F, n, d)
    if len(g) > 1:
        n, d = _dense.exact_div(F, n, g), _dense.exact_div(F, d, g)
    c = F.inv(d[-1])
    n, d = _dense.scale(F, n, c), _dense.scale(F, d, c)
    if max(len(n), len(d)) - 1 == 0:
        raise ConstantMap("map is constant")
    return RatMap(F, tuple(n), tuple(d))


def evaluate(f, point):
    """f(P) in P^1."""
    F = common_field(f.field, point.field)
    if point.is_infinity:
        dn, dd = len(f.num) - 1, len(f.den) - 1
        if dn > dd:
            return PointP1(F, None)
        if dn < dd:
            return PointP1(F, 0)
        return PointP1(F, F.div(f.num[-1], f.den[-1]))
    x = point.value
    dv = _dense.evaluate(F, f.den, x)
    if dv == 0:
        return PointP1(F, None)
    return PointP1(F, F.div(_dense.evaluate(F, f.num, x), dv))


def series_div(F, a, b, n):
    """First n coefficients of a/b as a power series; requires b[0] != 0."""
    inv0 = F.inv(b[0])
    out = [0] * n
    fmul, fsub = F.mul, F.sub
    for k in range(n):
        acc = a[k] if k < len(a) else 0
        for i in range(1, min(k, len(b) - 1) + 1):
            if b[i] and out[k - i]:
                acc = fsub(acc, fmul(b[i], out[k - i]))
        out[k] = fmul(acc, inv0)
    return out


def local_polys(f, point):
    """(N, D, c): f in the source coordinate s at P, with c = f(P) (None for infinity).

    For finite P the coordinate is s = x - P; at infinity it is s = 1/x, and N, D are
    the degree-``f.degree`` reversals of num and den.
    """
    F = common_field(f.field, point.field)
    d = f.degree
    if point.is_infinity:
        N = _dense.reverse(list(f.num), d)
        D = _dense.reverse(list(f.den), d)
    else:
        N = _dense.taylor_shift(F, list(f.num), point.value)
        D = _dense.taylor_shift(F, list(f.den), point.value)
    d0 = D[0] if D else 0
    c = None if d0 == 0 else F.div(N[0] if N else 0, d0)
    return F, N, D, c


def local_target_series(F, N, D, c, n):
    """First n coefficients of t o f where t = y - c (or 1/y when c is infinity)."""
    if c is None:
        return series_div(F, D, N, n)
    top = _dense.sub(F, N, _dense.scale(F, D, c))
    out = series_div(F, top, D, n)
    if out:
        out[0] = 0
    return out


def taylor_shift(f, point, order):
    """Expansion of t o f in the local coordinate s at P, up to s^order inclusive."""
    F, N, D, c = local_polys(f, point)
    return LocalSeries(F, tuple(local_target_series(F, N, D, c, order + 1)), order)


def wronskian(F, num, den):
    """num' den - num den'; zero exactly for inseparable maps."""
    return _dense.sub(
        F,
        _dense.mul(F, _dense.derivative(F, num), den),
        _dense.mul(F, num, _dense.derivative(F, den)),
    )


def derivative(f):
    """df/dx as a reduced rational function (possibly zero or constant)."""
    F = f.field
    W = wronskian(F, list(f.num), list(f.den))
    return RatFunc(F, W, _dense.mul(F, list(f.den), list(f.den)))


@dataclass(frozen=True)
class Mobius:
    """y -> (a y + b) / (c y + d)."""

    field: FiniteField
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        F = self.field
        if F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c)) == 0:
            raise ValueError("Moebius matrix is singular")

    @classmethod
    def from_ints(cls, field, a, b, c, d):
        return cls(field, *(field.from_int(v) for v in (a, b, c, d)))

    @classmethod
    def identity(cls, field):
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def inversion(cls, field):
        return cls(field, 0, 1, 1, 0)

    def inverse(self):
        F = self.field
        return Mobius(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def __matmul__(self, other):
        """Composition self o other."""
        F = common_field(self.field, other.field)
        m, n = F.mul, F.add
        return Mobius(
            F,
            n(m(self.a, other.a), m(self.b, other.c)),
            n(m(self.a, other.b), m(self.b, other.d)),
            n(m(self.c, other.a), m(self.d, other.c)),
            n(m(self.c, other.b), m(self.d, other.d)),
        )

    def over(self, field):
        return Mobius(field, self.a, self.b, self.c, self.d)

    def apply(self, point):
        F = common_field(self.field, point.field)
        if point.is_infinity:
            return PointP1(F, None) if self.c == 0 else PointP1(F, F.div(self.a, self.c))
        x = point.value
        top = F.add(F.mul(self.a, x), self.b)
        bot = F.add(F.mul(self.c, x), self.d)
        return PointP1(F, None) if bot == 0 else PointP1(F, F.div(top, bot))

    def as_map(self):
        return reduce_map(Poly(self.field, (self.b, self.a)), Poly(self.field, (self.d, self.c)))


def _precompose(F, f, sigma):
    """Homogeneous substitution x -> sigma(x) in num and den (degree preserved)."""
    d = f.degree
    lin_top = _dense.trim([sigma.b, sigma.a])
    lin_bot = _dense.trim([sigma.d, sigma.c])
    tops = [[1]]
    bots = [[1]]
    for _ in range(d):
        tops.append(_dense.mul(F, tops[-1], lin_top))
        bots.append(_dense.mul(F, bots[-1], lin_bot))

    def subst(poly):
        out = []
        for i, ci in enumerate(poly):
            if ci:
                term = _dense.scale(F, _dense.mul(F, tops[i], bots[d - i]), ci)
                out = _dense.add(F, out, term)
        return out

    return subst(f.num), subst(f.den)


def mobius_conjugate(f, src, tgt):
    """tgt o f o src^-1, reduced."""
    F = common_field(f.field, src.field, tgt.field)
    num, den = _precompose(F, f.over(F), src.inverse().over(F))
    new_num = _dense.add(F, _dense.scale(F, num, tgt.a), _dense.scale(F, den, tgt.b))
    new_den = _dense.add(F, _dense.scale(F, num, tgt.c), _dense.scale(F, den, tgt.d))
    return reduce_map(Poly(F, new_num), Poly(F, new_den))


def compose(f, g):
    """f o g for rational maps."""
    F = common_field(f.field, g.field)
    d = f.degree
    gn, gd = list(g.num), list(g.den)
    pn, pd = [[1]], [[1]]
    for _ in range(d):
        pn.append(_dense.mul(F, pn[-1], gn))
        pd.append(_dense.mul(F, pd[-1], gd))

    def subst(poly):
        out = []
        for i, ci in enumerate(poly):
            if ci:
                out = _dense.add(F, out, _dense.scale(F, _dense.mul(F, pn[i], pd[d - i]), ci))
        return out

    return reduce_map(Poly(F, subst(f.num)), Poly(F, subst(f.den)))
