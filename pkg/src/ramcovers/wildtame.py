"""Passing between maps wildly ramified at infinity and tame ones.

Adding c*x^p to a tame map with f(oo) = oo makes infinity wild without touching
the finite ramification; the reverse direction strips inseparable monomials from
the polynomial part and inverts the target whenever the polynomial part runs out.
"""

import itertools
from dataclasses import dataclass, field as dc_field

from . import _dense
from .errors import PreconditionViolated, TooMuchRamification
from .fields import PrimeField
from .poly import PointP1, Poly, RatMap, evaluate, reduce_map
from .ramify import is_separable, minimal_polynomial, ramification_index, ramification_profile

SUBTRACT = "subtract_inseparable"
INVERT = "invert_target"


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    poly: tuple = ()

    def as_dict(self, render_poly=None):
        out = {"step": self.kind}
        if self.kind == SUBTRACT:
            out["poly"] = list(self.poly) if render_poly is None else render_poly(self.poly)
        return out


@dataclass(frozen=True)
class ReductionTranscript:
    initial: RatMap
    steps: tuple
    final: RatMap


def _apply(f, step):
    F = f.field
    if step.kind == INVERT:
        return reduce_map(Poly(F, f.den), Poly(F, f.num))
    num = _dense.sub(F, list(f.num), _dense.mul(F, list(step.poly), list(f.den)))
    return reduce_map(Poly(F, num), Poly(F, f.den))


def replay(initial, steps):
    f = initial
    for step in steps:
        f = _apply(f, step)
    return f


def invert_replay(final, steps):
    """Run a transcript backwards: undo inversions and add the subtracted polynomials back."""
    f = final
    for step in reversed(steps):
        if step.kind == INVERT:
            f = _apply(f, step)
        else:
            F = f.field
            num = _dense.add(F, list(f.num), _dense.mul(F, list(step.poly), list(f.den)))
            f = reduce_map(Poly(F, num), Poly(F, f.den))
    return f


def _infinity_is_wild(f):
    return ramification_index(f, PointP1(f.field, None)) % f.field.p == 0


def _check_wild_only_at_infinity(f):
    if not is_separable(f):
        raise PreconditionViolated("map is inseparable")
    if not evaluate(f, PointP1(f.field, None)).is_infinity:
        raise PreconditionViolated("f(oo) must be oo")
    for pt in ramification_profile(f).finite():
        if pt.wild:
            raise PreconditionViolated(f"wild finite ramification at the root of {list(pt.minpoly)}")


def reduce_wild_to_tame(f):
    """Strip inseparable polynomial parts and invert until infinity is tame."""
    _check_wild_only_at_infinity(f)
    F, p = f.field, f.field.p
    steps = []
    g = f
    limit = 2 * f.degree + 2
    while _infinity_is_wild(g):
        Q, _ = _dense.divmod_(F, list(g.num), list(g.den))
        if Q:
            insep = _dense.trim([c if k % p == 0 else 0 for k, c in enumerate(Q)])
            step = ReductionStep(SUBTRACT, tuple(insep))
        else:
            step = ReductionStep(INVERT)
        h = _apply(g, step)
        if h.degree > g.degree or (step.kind == SUBTRACT and len(step.poly) > 1 and h.degree >= g.degree):
            raise AssertionError("reduction failed to decrease the degree")
        steps.append(step)
        g = h
        if len(steps) > limit:
            raise AssertionError("reduction did not terminate")
    return g, ReductionTranscript(f, tuple(steps), g)


def _finite_signature(profile):
    return sorted((pt.minpoly, pt.e, pt.d) for pt in profile.finite())


def lift_tame_to_wild(f, c=1):
    """f + c*x^p, for a tame f with f(oo) = oo and every index below p."""
    F, p = f.field, f.field.p
    c = F.from_int(c) if isinstance(c, int) else c
    if c == 0:
        raise PreconditionViolated("the multiplier must be nonzero")
    if not is_separable(f):
        raise PreconditionViolated("map is inseparable")
    inf = PointP1(F, None)
    if not evaluate(f, inf).is_infinity:
        raise PreconditionViolated("f(oo) must be oo")
    prof = ramification_profile(f)
    e_inf = ramification_index(f, inf)
    if e_inf >= p:
        raise PreconditionViolated(f"index {e_inf} at oo is not below p = {p}")
    for pt in prof.finite():
        if pt.e >= p:
            raise PreconditionViolated(f"finite index {pt.e} is not below p = {p}")
    xp = [0] * p + [c]
    num = _dense.add(F, list(f.num), _dense.mul(F, xp, list(f.den)))
    g = reduce_map(Poly(F, num), Poly(F, f.den))
    if g.degree != f.degree + p - e_inf:
        raise PreconditionViolated(f"lift has degree {g.degree}, expected {f.degree + p - e_inf}")
    if ramification_index(g, inf) != p:
        raise PreconditionViolated("lift is not ramified to order p at oo")
    if _finite_signature(ramification_profile(g)) != _finite_signature(prof):
        raise PreconditionViolated("lift changed the finite ramification")
    return g


def construct_wild_polynomial(p, finite_conds, c=1, c_p=1, field=None):
    """Degree-p polynomial with derivative c*prod (x - P_i)^(e_i - 1) plus c_p*x^p."""
    F = field if field is not None else PrimeField(p)
    if F.p != p:
        raise PreconditionViolated("field characteristic differs from p")
    conds = [(pt if isinstance(pt, PointP1) else PointP1(F, F.from_int(pt)), e) for pt, e in finite_conds]
    for pt, e in conds:
        if pt.is_infinity:
            raise PreconditionViolated("finite conditions only; oo carries the wild point")
        if not 1 <= e < p:
            raise PreconditionViolated(f"index {e} is not in 1..p-1")
    if len({pt for pt, _ in conds}) != len(conds):
        raise PreconditionViolated("condition points must be distinct")
    excess = sum(e - 1 for _, e in conds)
    if excess > p - 2:
        raise TooMuchRamification(f"sum(e_i - 1) = {excess} exceeds p - 2 = {p - 2}")
    for pt, _ in conds:
        F = pt.field if pt.field.contains(F) else F
    c = F.from_int(c) if isinstance(c, int) else c
    c_p = F.from_int(c_p) if isinstance(c_p, int) else c_p
    if c == 0 or c_p == 0:
        raise PreconditionViolated("scales must be nonzero")
    deriv = [c]
    for pt, e in conds:
        for _ in range(e - 1):
            deriv = _dense.mul(F, deriv, [F.neg(pt.to(F).value), 1])
    prim = [0] + [F.div(a, F.from_int(k + 1)) for k, a in enumerate(deriv)]
    prim = prim + [0] * (p + 1 - len(prim))
    prim[p] = c_p
    return reduce_map(Poly(F, prim), Poly(F, (1,)))


@dataclass
class ProfileCheck:
    ok: bool
    problems: list = dc_field(default_factory=list)


def _orbit_key(point, base):
    if point.is_infinity:
        return None
    return tuple(minimal_polynomial(point.field, base, point.value))


def check_exact_profile(f, expected):
    """Compare the full profile with [(point, e)]; anything unlisted must be unramified.

    Points are matched through their minimal polynomials over the map's field, so
    conjugate points and different copies of the same extension are identified.
    """
    prof = ramification_profile(f)
    want = {}
    for pt, e in expected:
        want[_orbit_key(pt, f.field)] = e
    problems = []
    for rp in prof.points:
        key = None if rp.point.is_infinity else rp.minpoly
        if key not in want:
            problems.append(f"unexpected ramification e={rp.e} at {rp.point}")
        elif want.pop(key) != rp.e:
            problems.append(f"index {rp.e} at {rp.point}, expected a different index")
    for key, e in want.items():
        if e != 1:
            problems.append(f"no ramification found at the orbit {key}, expected {e}")
    if prof.total_different != 2 * f.degree - 2:
        problems.append("Riemann-Hurwitz total mismatch")
    return ProfileCheck(not problems, problems)


@dataclass
class FamilySample:
    t1: int
    t2: int
    status: str  # pass | fail | degenerate
    detail: str = ""

    def as_dict(self):
        return {"t1": self.t1, "t2": self.t2, "status": self.status, "detail": self.detail}


@dataclass
class FamilyReport:
    p: int
    samples: list

    @property
    def passed(self):
        return all(s.status != "fail" for s in self.samples)

    @property
    def degenerate(self):
        return [s for s in self.samples if s.status == "degenerate"]


def example_family_member(F, t1, t2):
    p = F.p
    num = [0] * (2 * p + 1)
    num[2 * p] = 1
    num[p + 1] = F.add(num[p + 1], t1)
    num[0] = F.add(num[0], t2)
    den = [0] * (p + 1)
    den[p] = 1
    den[1] = F.add(den[1], t1)
    return num, den


def verify_example_family(p, samples=None, field=None):
    """(x^2p + t1 x^(p+1) + t2)/(x^p + t1 x): degree 2p, e = p at oo with d = 4p-2, nothing else."""
    F = field if field is not None else PrimeField(p)
    if samples is None:
        samples = list(itertools.product(range(1, F.order), repeat=2))
    out = []
    for t1, t2 in samples:
        a, b = F.from_int(t1) if F.order == F.p else t1, F.from_int(t2) if F.order == F.p else t2
        if a == 0 or b == 0:
            out.append(FamilySample(t1, t2, "degenerate", "parameters must be nonzero"))
            continue
        num, den = example_family_member(F, a, b)
        g = _dense.gcd(F, num, den)
        if len(g) > 1:
            out.append(FamilySample(t1, t2, "degenerate", f"common factor {g}"))
            continue
        f = RatMap(F, tuple(num), tuple(den))
        problems = []
        if f.degree != 2 * p:
            problems.append(f"degree {f.degree}")
        if not is_separable(f):
            problems.append("inseparable")
        else:
            prof = ramification_profile(f)
            pts = [("inf" if rp.point.is_infinity else repr(rp.point), rp.e, rp.d) for rp in prof.points]
            if pts != [("inf", p, 4 * p - 2)]:
                problems.append(f"profile {pts}")
        out.append(FamilySample(t1, t2, "fail" if problems else "pass", "; ".join(problems)))
    return FamilyReport(p, out)
