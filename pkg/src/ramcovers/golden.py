"""Known worked examples, rechecked from scratch by the analyzer."""

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .expr import parse_map_expression, render
from .fields import PrimeField, level_field
from .poly import PointP1
from .ramify import ramification_profile
from .wildtame import check_exact_profile, construct_wild_polynomial, reduce_wild_to_tame, verify_example_family

WILD_15 = (
    (
        "(x^5*(x^10+x^7-2*x)+1)/(x^10+x^7-2*x)",
        "x^7-2*x",
    ),
    (
        "(x^5*(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)+x^5+x^4-x^3+2*x)/(x^5*(x^5+x^4-x^3+2*x)+x^2+2*x+1)",
        "(x^2+2*x+1)/(x^5+x^4-x^3+2*x)",
    ),
)


@dataclass
class Verdict:
    name: str
    status: str  # pass | fail | skipped
    detail: dict = dc_field(default_factory=dict)

    @property
    def passed(self):
        return self.status != "fail"

    def as_dict(self):
        return {"name": self.name, "status": self.status, "detail": self.detail}


def sixth_roots_of_unity(F):
    K = level_field(F, 2)
    return [PointP1(K, a) for a in range(1, K.order) if K.pow(a, 6) == 1]


def check_wild_15(index):
    """Degree 15, index 5 at oo, simple at the sixth roots of unity, and the expected reduction."""
    F = PrimeField(5)
    src, target = WILD_15[index]
    f = parse_map_expression(src, F)
    expected = [(pt, 2) for pt in sixth_roots_of_unity(F)] + [(PointP1(F, None), 5)]
    prof = check_exact_profile(f, expected)
    g, transcript = reduce_wild_to_tame(f)
    want = parse_map_expression(target, F)
    problems = list(prof.problems)
    if f.degree != 15:
        problems.append(f"degree {f.degree}")
    if g != want:
        problems.append(f"reduced to {render(g)}")
    detail = {
        "map": render(f),
        "reduced": render(g),
        "expected": render(want),
        "steps": [s.kind for s in transcript.steps],
        "problems": problems,
    }
    return Verdict(f"wild-degree-15-reduction-{index + 1}", "fail" if problems else "pass", detail)


def check_example_family(p, seed=0, max_samples=16):
    F = PrimeField(p)
    pairs = list(itertools.product(range(1, p), repeat=2))
    if p > 7:
        pairs = random.Random(seed).sample(pairs, min(max_samples, len(pairs)))
    rep = verify_example_family(p, pairs, F)
    detail = {
        "p": p,
        "samples": len(rep.samples),
        "degenerate": [s.as_dict() for s in rep.degenerate],
        "failures": [s.as_dict() for s in rep.samples if s.status == "fail"],
    }
    return Verdict(f"two-parameter-family-p{p}", "pass" if rep.passed else "fail", detail)


def check_fixed_ramification_family():
    """x^5 + t x^3 + x over F_3: the same ramification divisor for every t."""
    F = PrimeField(3)
    signatures = []
    for t in range(3):
        f = parse_map_expression(f"x^5+{t}*x^3+x", F)
        prof = ramification_profile(f)
        signatures.append(sorted(((rp.minpoly or ()), rp.e, rp.degree) for rp in prof.points))
    expected = sorted([((2, 1), 2, 1), ((1, 1), 2, 1), ((1, 0, 1), 2, 2), ((), 5, 1)])
    ok = all(s == expected for s in signatures)
    return Verdict("fixed-ramification-family-p3", "pass" if ok else "fail", {"signatures": [repr(s) for s in signatures]})


def admissible_index_sets(p):
    """Multisets of indices in 2..p-1 with sum(e - 1) <= p - 2, ones omitted."""
    out = []

    def rec(prefix, start, budget):
        out.append(tuple(prefix))
        for e in range(start, p):
            if e - 1 <= budget:
                rec(prefix + [e], e, budget - (e - 1))

    rec([], 2, p - 2)
    return out


def check_constructor(p):
    F = PrimeField(p)
    failures = []
    sets = admissible_index_sets(p)
    for es in sets:
        conds = [(i, e) for i, e in enumerate(es)]
        f = construct_wild_polynomial(p, conds, field=F)
        expected = [(PointP1(F, i), e) for i, e in conds] + [(PointP1(F, None), p)]
        chk = check_exact_profile(f, expected)
        if f.degree != p or not chk.ok:
            failures.append({"indices": list(es), "map": render(f), "problems": chk.problems})
    return Verdict(f"wild-polynomial-constructor-p{p}", "fail" if failures else "pass", {"sets": len(sets), "failures": failures})


def golden_suite(p, seed=0):
    verdicts = []
    if p == 5:
        verdicts += [check_wild_15(0), check_wild_15(1)]
    else:
        verdicts.append(Verdict("wild-degree-15-reductions", "skipped", {"reason": "defined over F_5 only"}))
    verdicts.append(check_example_family(p, seed))
    verdicts.append(check_fixed_ramification_family())
    verdicts.append(check_constructor(p))
    return verdicts
