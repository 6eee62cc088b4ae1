"""Ramification indices, different exponents and full ramification profiles.

Finite ramification points are the roots of the Wronskian num'*den - num*den'.
Each irreducible factor of the Wronskian contributes one orbit of conjugate
points; the analysis runs at one representative root inside the residue field
base[x]/(factor), and all conjugates share its index and different exponent.
"""

from dataclasses import dataclass, replace

from . import _dense
from .errors import InseparableMap, TruncationExhausted
from .fields import residue_field
from .poly import PointP1, local_polys, local_target_series, wronskian


def is_separable(f):
    return bool(wronskian(f.field, list(f.num), list(f.den)))


def _require_separable(f):
    if not is_separable(f):
        raise InseparableMap("map has zero derivative")


def _local_series(f, point, n):
    F, N, D, c = local_polys(f, point)
    return F, local_target_series(F, N, D, c, n)


def ramification_index(f, point):
    _require_separable(f)
    # e <= degree, so degree + 1 coefficients always suffice
    _, a = _local_series(f, point, f.degree + 1)
    for j in range(1, len(a)):
        if a[j]:
            return j
    raise TruncationExhausted("no nonzero coefficient up to the degree")


def _first_unit_exponent(a, p):
    for j in range(1, len(a)):
        if a[j] and j % p:
            return j
    return None


def different_exponent(f, point):
    """One less than the first series exponent that is nonzero and prime to p."""
    _require_separable(f)
    p = f.field.p
    n = f.degree + 2
    limit = 2 * f.degree + 2
    while True:
        _, a = _local_series(f, point, n)
        j = _first_unit_exponent(a, p)
        if j is not None:
            return j - 1
        if n >= limit:
            raise TruncationExhausted(f"no exponent prime to p below {limit}")
        n = min(2 * n, limit)


@dataclass(frozen=True)
class RamPoint:
    """One Galois orbit of ramification points.

    ``point`` is a representative; ``minpoly`` its minimal polynomial over the
    map's field (None at infinity) and ``degree`` the size of the orbit.
    """

    point: PointP1
    e: int
    d: int
    wild: bool
    minpoly: "tuple | None" = None
    degree: int = 1

    def conjugates(self):
        if self.point.is_infinity or self.degree == 1:
            return [self.point]
        K = self.point.field
        Q = K.base.order
        out, x = [], self.point.value
        for _ in range(self.degree):
            out.append(PointP1(K, x))
            x = K.pow(x, Q)
        return out

    @property
    def contribution(self):
        return self.degree * self.d


@dataclass(frozen=True)
class RamProfile:
    map: object
    points: tuple

    @property
    def total_different(self):
        return sum(pt.contribution for pt in self.points)

    @property
    def rh_ok(self):
        return self.total_different == 2 * self.map.degree - 2

    def at_infinity(self):
        for pt in self.points:
            if pt.point.is_infinity:
                return pt
        return None

    def finite(self):
        return [pt for pt in self.points if not pt.point.is_infinity]

    def without(self, index):
        pts = self.points[:index] + self.points[index + 1 :]
        return replace(self, points=pts)


def ramification_profile(f):
    F = f.field
    W = wronskian(F, list(f.num), list(f.den))
    if not W:
        raise InseparableMap("map has zero derivative")
    p = F.p
    points = []
    for pi, mult in _dense.irreducible_factors(F, W):
        m = len(pi) - 1
        if m == 1:
            K, alpha = F, F.neg(pi[0])
        else:
            K = residue_field(F, tuple(pi))
            alpha = K.generator
        point = PointP1(K, alpha)
        # ord of the Wronskian at a finite point is the different exponent; the
        # series below recomputes it independently and must agree
        Kf, a = _local_series(f.over(K), point, mult + 2)
        e = next(j for j in range(1, len(a)) if a[j])
        d = _first_unit_exponent(a, p)
        if d is None or d - 1 != mult:
            raise TruncationExhausted(f"local different disagrees with Wronskian order at {pi}")
        points.append(RamPoint(point, e, mult, e % p == 0, tuple(pi), m))
    inf = PointP1(F, None)
    e_inf = ramification_index(f, inf)
    d_inf = different_exponent(f, inf)
    if e_inf >= 2 or d_inf >= 1:
        points.append(RamPoint(inf, e_inf, d_inf, e_inf % p == 0, None, 1))
    return RamProfile(f, tuple(points))


def riemann_hurwitz_defect(profile):
    return profile.total_different - (2 * profile.map.degree - 2)


def minimal_polynomial(K, base, a):
    """Minimal polynomial over ``base`` of the element code ``a`` of K (as base codes)."""
    Q = base.order
    conj = [a]
    x = K.pow(a, Q)
    while x != a:
        conj.append(x)
        x = K.pow(x, Q)
    poly = [1]
    for c in conj:
        poly = _dense.mul(K, poly, [K.neg(c), 1])
    return tuple(poly)
