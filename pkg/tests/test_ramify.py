import random
from collections import Counter

import pytest

from oracles import all_maps, naive_index, scan_profile
from ramcovers.errors import ConstantMap, InseparableMap, ZeroMap
from ramcovers.expr import parse_map_expression
from ramcovers.fields import build_field
from ramcovers.poly import Mobius, PointP1, Poly, RatMap, mobius_conjugate, reduce_map
from ramcovers.ramify import (
    different_exponent,
    is_separable,
    minimal_polynomial,
    ramification_index,
    ramification_profile,
    riemann_hurwitz_defect,
)

F3, F5, F7 = build_field(3), build_field(5), build_field(7)
REMARK_1 = "(x^5*(x^10+x^7-2*x)+1)/(x^10+x^7-2*x)"


def m(F, text):
    return parse_map_expression(text, F)


def test_is_separable_examples():
    for p in (2, 3, 5):
        F = build_field(p)
        assert not is_separable(m(F, f"x^{p}"))
        assert is_separable(m(F, f"x^{p + 1}"))
    assert is_separable(m(F5, "(x^10+x^6+1)/(x^5+x)"))


def test_index_examples():
    assert ramification_index(m(F5, "x^2"), PointP1(F5, 0)) == 2
    assert ramification_index(m(F5, "(x^10+x^6+1)/(x^5+x)"), PointP1(F5, None)) == 5
    assert ramification_index(m(F5, "x^3"), PointP1(F5, 1)) == 1
    with pytest.raises(InseparableMap):
        ramification_index(m(F5, "x^5"), PointP1(F5, 0))


def test_different_examples():
    assert different_exponent(m(F5, "x^2"), PointP1(F5, 0)) == 1
    for p in (3, 5, 7):
        F = build_field(p)
        assert different_exponent(m(F, f"x^{p} + x^{p + 1}"), PointP1(F, 0)) == p
        assert different_exponent(m(F, f"x^{p} - x"), PointP1(F, None)) == 2 * p - 2


def test_profile_x_squared():
    prof = ramification_profile(m(F5, "x^2"))
    pts = [("inf" if pt.point.is_infinity else pt.point.value, pt.e, pt.d) for pt in prof.points]
    assert pts == [(0, 2, 1), ("inf", 2, 1)]
    assert prof.total_different == 2 and prof.rh_ok


def test_profile_first_degree_15_map():
    f = m(F5, REMARK_1)
    prof = ramification_profile(f)
    inf = prof.at_infinity()
    assert (inf.e, inf.d) == (5, 22)
    finite = sorted((pt.minpoly, pt.e, pt.d, pt.degree) for pt in prof.finite())
    # the sixth roots of unity: x - 1, x + 1, x^2 + x + 1, x^2 - x + 1 over F_5
    assert finite == sorted([((4, 1), 2, 1, 1), ((1, 1), 2, 1, 1), ((1, 1, 1), 2, 1, 2), ((1, 4, 1), 2, 1, 2)])
    assert prof.total_different == 28 == 2 * 15 - 2


def test_profile_inseparable():
    with pytest.raises(InseparableMap):
        ramification_profile(m(F5, "x^5"))


def test_rh_defect_examples():
    prof = ramification_profile(m(F7, "x^3"))
    assert [(p.e, p.d) for p in prof.points] == [(3, 2), (3, 2)]
    assert riemann_hurwitz_defect(prof) == 0
    dropped = prof.without(0)
    assert riemann_hurwitz_defect(dropped) == -prof.points[0].contribution


def random_separable(F, rng, dmax=8):
    while True:
        d = rng.randint(1, dmax)
        num = [rng.randrange(F.order) for _ in range(d + 1)]
        den = [rng.randrange(F.order) for _ in range(rng.randint(0, d) + 1)]
        try:
            f = reduce_map(Poly(F, num), Poly(F, den))
        except (ZeroMap, ConstantMap):
            continue
        if is_separable(f):
            return f


def test_tame_and_wild_bounds():
    rng = random.Random(4)
    for _ in range(150):
        F = rng.choice([build_field(2), F3, F5, build_field(3, 2)])
        f = random_separable(F, rng, 6)
        prof = ramification_profile(f)
        for pt in prof.points:
            if pt.wild:
                assert pt.d >= pt.e
            else:
                assert pt.d == pt.e - 1
            assert pt.e == naive_index(f.over(pt.point.field), pt.point)


def _orbit_keys(prof, base, sigma=None):
    keys = Counter()
    for pt in prof.points:
        if pt.point.is_infinity:
            img = sigma.apply(pt.point) if sigma is not None else pt.point
        else:
            img = sigma.over(pt.point.field).apply(pt.point) if sigma is not None else pt.point
        if img.is_infinity:
            keys[(None, pt.e, pt.d)] += 1
        else:
            keys[(minimal_polynomial(img.field, base, img.value), pt.e, pt.d)] += 1
    return keys


def test_mobius_invariance():
    rng = random.Random(6)
    for _ in range(60):
        F = rng.choice([F5, F7, build_field(3)])
        f = random_separable(F, rng, 5)
        while True:
            a, b, c, d = (rng.randrange(F.order) for _ in range(4))
            if F.sub(F.mul(a, d), F.mul(b, c)):
                break
        sigma = Mobius(F, a, b, c, d)
        tau = Mobius(F, *(rng.choice([(1, 0, 0, 1), (0, 1, 1, 0), (2 % F.p, 1, 0, 1)])))
        g = mobius_conjugate(f, sigma, tau)
        assert _orbit_keys(ramification_profile(g), F) == _orbit_keys(ramification_profile(f), F, sigma)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_profile_matches_point_scan(p, d):
    F = build_field(p)
    rng = random.Random(p * 10 + d)
    maps = [f for f in all_maps(F, d) if is_separable(f)]
    sample = maps if len(maps) <= 60 else rng.sample(maps, 60)
    for f in sample:
        expected = scan_profile(f, 4)
        got = Counter()
        for pt in ramification_profile(f).points:
            if pt.point.is_infinity:
                got[("inf", pt.e, pt.d)] += 1
            else:
                got[(pt.degree, pt.e, pt.d)] += pt.degree
        assert dict(got) == expected, f


def test_extension_field_map():
    K = build_field(3, 2)
    f = RatMap.from_coeffs(K, [0, 1, 0, 1], [1, 0, 1])
    prof = ramification_profile(f)
    assert prof.rh_ok
