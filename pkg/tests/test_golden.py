import pytest

from ramcovers.golden import (
    admissible_index_sets,
    check_constructor,
    check_example_family,
    check_fixed_ramification_family,
    check_wild_15,
    golden_suite,
    sixth_roots_of_unity,
)
from ramcovers.fields import PrimeField


def test_sixth_roots():
    roots = sixth_roots_of_unity(PrimeField(5))
    assert len(roots) == 6


def test_admissible_index_sets_p5():
    sets = admissible_index_sets(5)
    assert sorted(sets) == sorted([(), (2,), (3,), (4,), (2, 2), (2, 3), (2, 2, 2)])
    assert all(sum(e - 1 for e in s) <= 3 for s in sets)


@pytest.mark.parametrize("i", [0, 1])
def test_wild_15(i):
    v = check_wild_15(i)
    assert v.status == "pass", v.detail


def test_fixed_ramification_family():
    assert check_fixed_ramification_family().status == "pass"


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_example_family_and_constructor(p):
    assert check_example_family(p).status == "pass"
    assert check_constructor(p).status == "pass"


def test_suite_p5_all_pass():
    verdicts = golden_suite(5)
    assert [v.status for v in verdicts] == ["pass"] * 5


def test_suite_other_p_skips_remark():
    verdicts = golden_suite(3)
    assert verdicts[0].status == "skipped"
    assert all(v.passed for v in verdicts)
