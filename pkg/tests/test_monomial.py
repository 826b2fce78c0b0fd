import pytest
from hypothesis import given, strategies as st

from conftest import XYZ, complete_intersections, ideal, ideals, monomials, monomials_up_to
from monoreg.errors import ColonIsUnit, ContextMismatch, UnitIdealError, ZeroIdealError
from monoreg.monomial import (
    Monomial,
    MonomialIdeal,
    RingContext,
    colon_ideal,
    colon_monomial,
    intersect,
    is_pure_power_ci,
    is_regular_sequence,
    minimalize,
    power,
    principal,
    product,
    scale,
    sum_ideals,
)

X = RingContext(1, ("x",))
XY = RingContext(2, ("x", "y"))
m = XYZ.monomial


def test_ring_context_validation():
    with pytest.raises(ValueError):
        RingContext(0)
    with pytest.raises(ValueError):
        RingContext(2, ("x",))
    with pytest.raises(ValueError):
        RingContext(2, ("x", "x"))
    assert RingContext(3).names == ("x1", "x2", "x3")
    with pytest.raises(ContextMismatch):
        XY.monomial((1, 2, 3))


def test_monomial_basics():
    u = Monomial((2, 0, 1))
    assert u.degree == 3 and u.support == {0, 2}
    assert Monomial((0, 0, 0)).is_unit()
    assert Monomial((1, 0, 1)).divides(u) and not u.divides(Monomial((1, 0, 1)))
    assert u.lcm(Monomial((0, 1, 3))) == (2, 1, 3)
    assert u.gcd(Monomial((1, 1, 3))) == (1, 0, 1)
    assert u.quotient(Monomial((1, 1, 0))) == (1, 0, 1)
    assert u.format(("x", "y", "z")) == "x^2*z"
    with pytest.raises(ValueError):
        Monomial((1, -1))


class TestMinimalize:
    def test_drops_multiples(self):
        assert ideal(XY, (2, 0), (3, 0), (0, 1)) == ideal(XY, (2, 0), (0, 1))

    def test_empty_is_zero_ideal(self):
        Z = minimalize([], XY)
        assert Z.is_zero() and Z == XY.zero_ideal()

    def test_single_survivor(self):
        assert ideal(XY, (1, 1), (2, 1), (1, 2)).min_gens == (Monomial((1, 1)),)

    def test_unit_rejected(self):
        with pytest.raises(UnitIdealError):
            ideal(XY, (0, 0), (1, 0))

    def test_canonical_order_is_graded_lex(self):
        I = ideal(XY, (0, 2), (1, 1), (2, 0), (3, 0))
        assert [tuple(g) for g in I.min_gens] == [(2, 0), (1, 1), (0, 2)]

    @given(ideals())
    def test_idempotent(self, I):
        assert minimalize(I.min_gens, I.context) == I

    @given(ideals())
    def test_antichain(self, I):
        for g in I.min_gens:
            assert not any(h != g and h.divides(g) for h in I.min_gens)

    @given(st.lists(monomials().filter(lambda u: not u.is_unit()), min_size=1, max_size=6))
    def test_order_independent(self, gens):
        ctx = RingContext(3)
        assert minimalize(gens, ctx) == minimalize(list(reversed(gens)), ctx)


class TestProduct:
    def test_examples(self):
        assert product(ideal(XY, (1, 0)), ideal(XY, (0, 1))) == ideal(XY, (1, 1))
        assert product(ideal(XY, (2, 0), (0, 1)), ideal(XY, (1, 0))) == ideal(XY, (3, 0), (1, 1))
        mx = ideal(XY, (1, 0), (0, 1))
        assert product(mx, mx) == ideal(XY, (2, 0), (1, 1), (0, 2))

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            product(ideal(XY, (1, 0)), ideal(XYZ, (1, 0, 0)))

    def test_zero_absorbs(self):
        assert product(ideal(XY, (1, 0)), XY.zero_ideal()).is_zero()


class TestPower:
    def test_examples(self):
        assert power(ideal(XY, (2, 0), (0, 3)), 2) == ideal(XY, (4, 0), (2, 3), (0, 6))
        for n in range(1, 6):
            assert power(ideal(X, (1,)), n) == ideal(X, (n,))
        # (xy, z)^2 = (x^2y^2, xyz, z^2), expanded by hand
        assert power(ideal(XYZ, (1, 1, 0), (0, 0, 1)), 2) == ideal(
            XYZ, (2, 2, 0), (1, 1, 1), (0, 0, 2))

    def test_n_zero_rejected(self):
        with pytest.raises(ValueError):
            power(ideal(X, (1,)), 0)

    @given(ideals(max_gens=3, max_exp=2), st.integers(1, 3), st.integers(1, 3))
    def test_exponents_add(self, I, a, b):
        assert product(power(I, a), power(I, b)) == power(I, a + b)


class TestSum:
    def test_examples(self):
        assert sum_ideals(ideal(X, (2,)), ideal(X, (1,))) == ideal(X, (1,))
        assert sum_ideals(ideal(XY, (1, 0)), ideal(XY, (0, 1))) == ideal(XY, (1, 0), (0, 1))
        I = ideal(XY, (2, 1))
        assert sum_ideals(I, XY.zero_ideal()) == I

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            sum_ideals(ideal(XY, (1, 0)), ideal(X, (1,)))


class TestColon:
    def test_examples(self):
        assert colon_monomial(ideal(XY, (2, 1)), XY.var(0)) == ideal(XY, (1, 1))
        with pytest.raises(ColonIsUnit):
            colon_monomial(ideal(XY, (2, 0), (0, 2)), XY.var(0, 2))
        # elementwise division: x^3 / x, x y^2 / x
        assert colon_monomial(ideal(XY, (3, 0), (1, 2)), XY.var(0)) == ideal(XY, (2, 0), (0, 2))

    def test_colon_by_one_is_identity(self):
        I = ideal(XYZ, (1, 2, 0), (0, 0, 3))
        assert colon_monomial(I, XYZ.unit()) == I

    def test_colon_ideal_examples(self):
        # (xy) : (x, y) = (y) meet (x)
        assert colon_ideal(ideal(XY, (1, 1)), ideal(XY, (1, 0), (0, 1))) == ideal(XY, (1, 1))
        assert colon_ideal(ideal(XY, (2, 0), (1, 1)), ideal(XY, (1, 0))) == ideal(XY, (1, 0), (0, 1))
        with pytest.raises(ZeroIdealError):
            colon_ideal(ideal(XY, (1, 0)), XY.zero_ideal())
        with pytest.raises(ColonIsUnit):
            colon_ideal(ideal(XY, (1, 0)), ideal(XY, (1, 0)))

    @given(ideals(), monomials())
    def test_m_times_colon_inside(self, I, u):
        try:
            Q = colon_monomial(I, u)
        except ColonIsUnit:
            assert I.contains(u)
            return
        assert scale(u, Q).is_subset(I)

    @given(ideals(max_gens=3), monomials(max_exp=2).filter(lambda u: not u.is_unit()))
    def test_colon_ideal_principal_matches(self, I, u):
        J = principal(u, I.context)
        try:
            expected = colon_monomial(I, u)
        except ColonIsUnit:
            with pytest.raises(ColonIsUnit):
                colon_ideal(I, J)
            return
        assert colon_ideal(I, J) == expected


class TestIntersect:
    def test_examples(self):
        assert intersect(ideal(XY, (1, 0)), ideal(XY, (0, 1))) == ideal(XY, (1, 1))
        assert intersect(ideal(X, (2,)), ideal(X, (1,))) == ideal(X, (2,))
        assert intersect(ideal(XYZ, (1, 0, 0), (0, 1, 0)), ideal(XYZ, (1, 0, 0), (0, 0, 1))) == \
            ideal(XYZ, (1, 0, 0), (0, 1, 1))


def test_scale():
    assert scale(m((1, 0, 0)), ideal(XYZ, (0, 1, 0), (0, 0, 1))) == ideal(XYZ, (1, 1, 0), (1, 0, 1))
    I = ideal(XYZ, (0, 2, 1), (1, 1, 1))
    assert scale(XYZ.unit(), I) == I
    assert scale(m((3, 0, 0)), ideal(XYZ, (0, 2, 0), (0, 0, 1))) == ideal(XYZ, (3, 2, 0), (3, 0, 1))


@given(monomials().filter(lambda u: not u.is_unit()), ideals())
def test_scale_matches_product(u, I):
    assert scale(u, I) == product(principal(u, I.context), I)


class TestClassification:
    def test_regular_sequence(self):
        assert is_regular_sequence(ideal(XY, (2, 0), (0, 3)))
        assert not is_regular_sequence(ideal(XYZ, (1, 1, 0), (0, 1, 1)))
        assert is_regular_sequence(ideal(XY, (2, 3)))
        with pytest.raises(ZeroIdealError):
            is_regular_sequence(XY.zero_ideal())

    def test_pure_power(self):
        assert is_pure_power_ci(ideal(XYZ, (3, 0, 0), (0, 2, 0), (0, 0, 1)))
        assert not is_pure_power_ci(ideal(XY, (2, 1)))
        assert is_pure_power_ci(ideal(X, (2,), (3,)))
        with pytest.raises(ZeroIdealError):
            is_pure_power_ci(XY.zero_ideal())


# Laws on canonical forms.

@given(ideals(max_gens=3), ideals(max_gens=3))
def test_commutative(I, J):
    assert product(I, J) == product(J, I)
    assert sum_ideals(I, J) == sum_ideals(J, I)
    assert intersect(I, J) == intersect(J, I)


@given(ideals(max_gens=2), ideals(max_gens=2), ideals(max_gens=2))
def test_associative_and_distributive(I, J, K):
    assert product(product(I, J), K) == product(I, product(J, K))
    assert sum_ideals(sum_ideals(I, J), K) == sum_ideals(I, sum_ideals(J, K))
    assert intersect(intersect(I, J), K) == intersect(I, intersect(J, K))
    assert product(I, sum_ideals(J, K)) == sum_ideals(product(I, J), product(I, K))


@given(ideals(max_gens=3), ideals(max_gens=3))
def test_product_inside_intersection(I, J):
    assert product(I, J).is_subset(intersect(I, J))


@given(complete_intersections(), st.integers(1, 3))
def test_proof_intersection_identity(I, n):
    # with u one generator of a CI and J the rest: u I^(n-1) meet J^n = u J^n
    if I.num_gens < 2 or n < 2:
        return
    for u in I.min_gens:
        J = MonomialIdeal(I.context, tuple(g for g in I.min_gens if g != u))
        assert intersect(scale(u, power(I, n - 1)), power(J, n)) == scale(u, power(J, n))


# Membership oracle: m lies in the result iff it satisfies the defining condition.

def _divisors(u):
    from itertools import product as cartesian
    for e in cartesian(*(range(k + 1) for k in u)):
        yield Monomial(e)


@given(ideals(max_gens=3, max_exp=2), ideals(max_gens=3, max_exp=2))
def test_membership_oracle(I, J):
    P, Q = product(I, J), intersect(I, J)
    for u in monomials_up_to(3, 5):
        assert P.contains(u) == any(I.contains(d) and J.contains(Monomial(
            a - b for a, b in zip(u, d))) for d in _divisors(u))
        assert Q.contains(u) == (I.contains(u) and J.contains(u))


@given(ideals(max_gens=3), monomials(max_exp=2))
def test_colon_membership_oracle(I, f):
    try:
        C = colon_monomial(I, f)
    except ColonIsUnit:
        assert I.contains(f)
        return
    for u in monomials_up_to(3, 5):
        assert C.contains(u) == I.contains(u * f)
