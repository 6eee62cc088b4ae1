import random
from fractions import Fraction

import pytest

from oracles import all_maps, naive_index
from ramcovers.errors import BudgetExceeded
from ramcovers.expr import parse_map_expression
from ramcovers.fields import build_field, level_field
from ramcovers.moduli import (
    BranchCondition,
    CountRow,
    Filters,
    branch_representatives,
    count_moduli,
    count_mod_pgl2,
    enumerate_maps,
    estimate_dimension,
    free_branch_count,
    free_branch_count_exhaustive,
    linear_system_fixed_branch,
    pgl2_order,
    random_points,
    representative_count,
)
from ramcovers.poly import PointP1, derivative
from ramcovers.ramify import is_separable

F2, F3, F5, F7 = (build_field(p) for p in (2, 3, 5, 7))
LOOSE = Filters(require_exact_ram=False)


def pt(F, v):
    return PointP1(F, v)


def test_pgl2_order():
    assert pgl2_order(3) == 24
    assert pgl2_order(5) == 120


def test_fixed_branch_examples():
    space = linear_system_fixed_branch(F3, 1, [BranchCondition(pt(F3, 0), pt(F3, 0), 1)])
    assert space.dim == 3
    space = linear_system_fixed_branch(
        F5, 2, [BranchCondition(pt(F5, 0), pt(F5, 0), 2), BranchCondition(pt(F5, None), pt(F5, None), 2)]
    )
    assert space.dim == 2
    en = enumerate_maps(space)
    assert en.row.raw_count == 6
    # four maps c*x^2, one class up to target scaling
    assert en.row.exact_ram_count == 4
    x2 = parse_map_expression("x^2", F5)
    assert sorted(f.num[2] for f in en.maps) == [1, 2, 3, 4]
    assert all(f.num[:2] == (0, 0) and f.den == (1,) for f in en.maps)
    assert x2 in en.maps


def test_schubert_codimension():
    # finite-valued rows only touch num through a CRT-independent block, infinite-valued
    # rows only touch den, so the codimension is exact once each block fits in degree d
    rng = random.Random(17)
    checked = 0
    while checked < 200:
        F = rng.choice((F3, F5, F7))
        d = rng.randint(1, 5)
        pts = random_points(F, rng.randint(1, min(5, F.order + 1)), seed=rng.random())
        es = [rng.randint(1, 3) for _ in pts]
        at_inf = [rng.random() < 0.4 for _ in pts]
        if sum(e for e, i in zip(es, at_inf) if i) > d + 1 or sum(e for e, i in zip(es, at_inf) if not i) > d + 1:
            continue
        values = [pt(F, None) if i else pt(F, rng.randrange(F.order)) for i in at_inf]
        conds = [BranchCondition(P, c, e) for P, c, e in zip(pts, values, es)]
        assert linear_system_fixed_branch(F, d, conds).dim == 2 * d + 2 - sum(es)
        checked += 1


def test_schubert_codimension_fails_only_at_solutions():
    # with sum e = 2d + 2 any kernel vector is itself a map meeting every condition;
    # here it is the inseparable ((x + 2)/(x + 1))^3
    F = F3
    conds = [
        BranchCondition(pt(F, 1), pt(F, 0), 1),
        BranchCondition(pt(F, 2), pt(F, None), 3),
        BranchCondition(pt(F, 0), pt(F, 2), 2),
        BranchCondition(pt(F, None), pt(F, 1), 2),
    ]
    space = linear_system_fixed_branch(F, 3, conds)
    assert space.dim == 1
    assert space.basis == ((2, 0, 0, 1, 1, 0, 0, 1),)
    row = enumerate_maps(space, LOOSE).row
    assert (row.valid_count, row.separable_count) == (1, 0)


def test_budget():
    space = linear_system_fixed_branch(F5, 4, [])
    with pytest.raises(BudgetExceeded):
        enumerate_maps(space, budget=1000)


def _brute_counts(F, d, conds):
    """(separable with index >= e, separable with index == e) straight from all maps."""
    ge = eq = 0
    for f in all_maps(F, d):
        if not is_separable(f):
            continue
        idx = [naive_index(f, P) for P, _ in conds]
        if all(i >= e for i, (_, e) in zip(idx, conds)):
            ge += 1
            eq += all(i == e for i, (_, e) in zip(idx, conds))
    return ge, eq


@pytest.mark.parametrize(
    "p,d,conds",
    [
        (3, 2, [(0, 2)]),
        (3, 2, [(0, 2), (None, 2)]),
        (2, 2, [(1, 2)]),
        (2, 3, [(0, 2), (1, 2)]),
        (3, 3, [(0, 3)]),
        (3, 3, [(1, 2), (None, 2)]),
    ],
)
def test_free_branch_against_all_maps(p, d, conds):
    F = build_field(p)
    conds = [(pt(F, a), e) for a, e in conds]
    ge, eq = _brute_counts(F, d, conds)
    assert free_branch_count(F, d, conds, filters=LOOSE).separable_count == ge
    assert free_branch_count(F, d, conds).exact_ram_count == eq
    ex = free_branch_count_exhaustive(F, d, conds)
    assert (ex.separable_count, ex.exact_ram_count) == (ge, eq)


def test_orbit_count_matches_exhaustive_level_2():
    conds = [(pt(F2, 0), 2), (pt(F2, 1), 2), (pt(F2, None), 2)]
    a = free_branch_count(F2, 3, conds, level=2)
    b = free_branch_count_exhaustive(F2, 3, conds, level=2)
    assert (a.raw_count, a.separable_count, a.exact_ram_count) == (b.raw_count, b.separable_count, b.exact_ram_count)


def test_representatives_cover_all_tuples():
    K = F5
    for n in range(5):
        reps = list(branch_representatives(K, n))
        assert len(reps) == representative_count(K.order, n)
        assert sum(o for _, o in reps) == (K.order + 1) ** n


def test_free_branch_no_conditions_degree_one():
    r = free_branch_count(F3, 1, [])
    assert r.exact_ram_count == pgl2_order(3)


def test_wild_impossible_degree():
    # index p = 5 at a point needs degree >= 5
    assert free_branch_count(F5, 2, [(pt(F5, 0), 5)]).separable_count == 0


def test_generic_quotients_integral():
    for seed in range(4):
        pts = random_points(F5, 2, seed=seed)
        r = free_branch_count(F5, 3, [(P, 2) for P in pts])
        assert r.exact_ram_count > 0 and r.exact_ram_count % pgl2_order(5) == 0


def test_cubic_three_simple_points_over_f5():
    # agrees with the brute-force scan: every such cubic has index 3 at one of the points
    conds = [(pt(F5, a), 2) for a in (0, 1, 2)]
    r = free_branch_count(F5, 3, conds)
    assert (r.separable_count, r.exact_ram_count) == (360, 0)


def test_count_mod_pgl2_flags_non_integral():
    row = CountRow(1, 3, 30, 30, 30, 30)
    count_mod_pgl2([row])
    assert row.mod_pgl2 == Fraction(30, 24) and not row.integral
    row = CountRow(1, 3, 48, 48, 48, 48)
    count_mod_pgl2([row])
    assert row.integral


def test_estimate_dimension_examples():
    e = estimate_dimension([(1, 7), (2, 7)], 3)
    assert (e.estimate, e.stable) == (0, True)
    e = estimate_dimension([(1, 5), (2, 25), (3, 125)], 5)
    assert (e.estimate, e.stable) == (1, True)
    assert estimate_dimension([(1, 0), (2, 0)], 5).empty
    e = estimate_dimension([(1, 1), (2, 9), (3, 9)], 3)
    assert not e.stable


def test_filter_monotone():
    rng = random.Random(2)
    for _ in range(10):
        F = rng.choice([F2, F3, F5])
        d = rng.randint(2, 3)
        pts = random_points(F, rng.randint(1, 3), seed=rng.random())
        r = free_branch_count(F, d, [(P, rng.randint(1, 3)) for P in pts])
        assert r.raw_count >= r.valid_count >= r.separable_count >= r.exact_ram_count


def test_fixed_ramification_family_enumerated():
    F9 = level_field(F3, 2)
    roots = [pt(F9, a) for a in range(1, 9) if F9.pow(a, 4) == 1]
    for t in range(3):
        f = parse_map_expression(f"x^5+{t}*x^3+x", F3).over(F9)
        conds = [BranchCondition(P, f(P), 2) for P in roots] + [BranchCondition(pt(F9, None), pt(F9, None), 5)]
        space = linear_system_fixed_branch(F9, 5, conds)
        found = enumerate_maps(space, Filters(require_unramified_elsewhere=True)).maps
        assert f in found


def test_inseparable_excess():
    # x^2 o (Moebius) lies in the raw space over F_2 and is removed by the separability filter
    conds = [BranchCondition(pt(F2, 0), pt(F2, 0), 2), BranchCondition(pt(F2, None), pt(F2, None), 2)]
    space = linear_system_fixed_branch(F2, 2, conds)
    row = enumerate_maps(space, LOOSE).row
    insep = [
        f for f in all_maps(F2, 2)
        if not is_separable(f) and naive_index(f, pt(F2, 0)) >= 2 and naive_index(f, pt(F2, None)) >= 2
        and f(pt(F2, 0)) == pt(F2, 0) and f(pt(F2, None)) == pt(F2, None)
    ]
    assert insep and all(derivative(f) is None or not is_separable(f) for f in insep)
    assert row.valid_count - row.separable_count == len(insep)


def test_count_moduli_report():
    pts = random_points(F5, 2, seed=1)
    rep = count_moduli(F5, 2, [(P, 2) for P in pts], levels=(1, 2), seed=1)
    assert [r.mod_pgl2 for r in rep.rows] == [1, 1]
    assert rep.estimate.estimate == 0 and rep.estimate.stable
    assert rep.prediction.maps_dim == 0
    assert rep.warnings == []


def test_random_points_reproducible():
    assert random_points(F7, 4, seed=9) == random_points(F7, 4, seed=9)
    assert len(set(random_points(F7, 8, seed=1))) == 8


def test_workers_give_identical_counts():
    pts = random_points(F5, 3, seed=6)
    conds = [(P, e) for P, e in zip(pts, (2, 2, 2))]
    one = free_branch_count(F5, 3, conds, level=1, workers=1)
    two = free_branch_count(F5, 3, conds, level=1, workers=2)
    assert one == two
