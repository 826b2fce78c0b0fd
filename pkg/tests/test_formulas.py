import pytest
from hypothesis import given, strategies as st

from conftest import complete_intersections
from monoreg.betti import FieldSpec, regularity
from monoreg.formulas import (
    CiDegrees,
    Lemma12Branches,
    lemma12_bound,
    lemma12_branches,
    lemma13_predicted,
    pairwise_product_bound,
    reg_ci,
    reg_ci_power,
    triple_product_bound,
)
from monoreg.monomial import RingContext, power, principal, sum_ideals

W = RingContext(4, ("x", "y", "z", "w"))


def test_ci_degrees_sorted():
    d = CiDegrees([2, 5, 3])
    assert d.degrees == (5, 3, 2) and d.s == 3 and d.top == 5
    with pytest.raises(ValueError):
        CiDegrees([])
    with pytest.raises(ValueError):
        CiDegrees([2, 0])


@pytest.mark.parametrize("degrees,expected", [
    ([3], 3), ([2, 2], 3), ([1, 1, 1], 1), ([4, 2, 3], 7),
])
def test_reg_ci(degrees, expected):
    assert reg_ci(degrees) == expected


@pytest.mark.parametrize("degrees,n,expected", [
    ([5], 2, 10), ([2, 3], 1, 4), ([2, 3], 2, 7), ([2, 2, 2], 3, 8),
])
def test_reg_ci_power(degrees, n, expected):
    assert reg_ci_power(degrees, n) == expected
    with pytest.raises(ValueError):
        reg_ci_power(degrees, 0)


def test_ci_power_at_one_is_ci():
    for ds in ([1], [3, 1], [4, 4, 2]):
        assert reg_ci_power(ds, 1) == reg_ci(ds)


def test_simple_bounds():
    assert triple_product_bound(2, 3, 2) == 7
    assert pairwise_product_bound(2, 3, 2) == 6
    assert lemma13_predicted(3, 4) == 6
    with pytest.raises(ValueError):
        lemma13_predicted(3, 0)


I_XY_Z2 = W.ideal([(1, 1, 0, 0), (0, 0, 2, 0)])


@pytest.mark.parametrize("x,n,branches,bound", [
    (0, 1, (2, 2), 3),
    (0, 2, (3, 2), 4),
    (2, 2, (3, None), 3),
    (3, 1, (3, 3), 4),
    (3, 2, (4, 3), 5),
])
def test_lemma12_branches(x, n, branches, bound):
    b = lemma12_branches(I_XY_Z2, x, n)
    assert (b.sum_reg, b.colon_reg) == branches
    assert b.bound == bound == lemma12_bound(I_XY_Z2, x, n)
    assert b.colon_is_unit == (branches[1] is None)
    assert regularity(I_XY_Z2) == 3 <= bound


def test_lemma12_unit_colon_branch():
    assert Lemma12Branches(5, None, 2).bound == 5
    assert Lemma12Branches(1, None, 4).bound == 4


def test_lemma12_more_examples():
    Y = RingContext(2, ("x", "y"))
    assert lemma12_bound(Y.ideal([(0, 3)]), 0, 2) == 5
    assert lemma12_bound(Y.ideal([(0, 4)]), 0, 3) == 7


@given(complete_intersections(), st.integers(1, 4))
def test_lemma13_on_fresh_variable(I, d):
    ctx = RingContext(I.num_vars + 1)
    J = ctx.ideal([tuple(g) + (0,) for g in I.min_gens])
    u = ctx.var(I.num_vars, d)
    assert regularity(sum_ideals(J, principal(u, ctx))) == lemma13_predicted(regularity(J), d)


@given(complete_intersections(max_exp=2), st.integers(2, 3))
def test_ci_power_formula_over_rationals(I, n):
    assert regularity(power(I, n), FieldSpec.rationals()) == reg_ci_power(CiDegrees.of(I), n)
