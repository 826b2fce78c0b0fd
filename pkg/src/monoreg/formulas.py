"""Closed-form regularity values and bounds, as plain integer functions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .betti import DEFAULT_FIELD, DEFAULT_GUARD, FieldSpec, OracleGuard, regularity
from .errors import ColonIsUnit
from .monomial import MonomialIdeal, colon_monomial, principal, sum_ideals


@dataclass(frozen=True)
class CiDegrees:
    """Generator degrees of a complete intersection, largest first."""

    degrees: tuple[int, ...]

    def __init__(self, degrees: Iterable[int]):
        ds = tuple(sorted((int(d) for d in degrees), reverse=True))
        if not ds:
            raise ValueError("need at least one generator degree")
        if ds[-1] < 1:
            raise ValueError(f"degrees must be positive, got {ds}")
        object.__setattr__(self, "degrees", ds)

    @classmethod
    def of(cls, I: MonomialIdeal) -> "CiDegrees":
        return cls(I.degrees())

    @property
    def s(self) -> int:
        return len(self.degrees)

    @property
    def top(self) -> int:
        return self.degrees[0]


def _degrees(d) -> CiDegrees:
    return d if isinstance(d, CiDegrees) else CiDegrees(d)


def reg_ci(d) -> int:
    d = _degrees(d)
    return sum(d.degrees) - (d.s - 1)


def reg_ci_power(d, n: int) -> int:
    """Regularity of the n-th power of a complete intersection with degrees ``d``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = _degrees(d)
    return n * d.top + sum(d.degrees[1:]) - (d.s - 1)


def triple_product_bound(r_i: int, r_j: int, r_k: int) -> int:
    return r_i + r_j + r_k


def pairwise_product_bound(r_i: int, r_j: int, r_k: int) -> int:
    return r_i + r_j + r_k - 1


def lemma13_predicted(r_i: int, d: int) -> int:
    """reg(I + (u)) for u of degree d regular on S/I."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return r_i + d - 1


@dataclass(frozen=True)
class Lemma12Branches:
    sum_reg: int
    colon_reg: int | None  # None when I : x^n is the unit ideal
    n: int

    @property
    def colon_is_unit(self) -> bool:
        return self.colon_reg is None

    @property
    def bound(self) -> int:
        # with a unit colon, x^n lies in I and that branch contributes n
        colon_term = self.n if self.colon_reg is None else self.colon_reg + self.n
        return max(self.sum_reg, colon_term)


def lemma12_branches(
    I: MonomialIdeal,
    x: int,
    n: int,
    F: FieldSpec = DEFAULT_FIELD,
    guard: OracleGuard = DEFAULT_GUARD,
) -> Lemma12Branches:
    if n < 1:
        raise ValueError("n must be >= 1")
    xn = I.context.var(x, n)
    sum_reg = regularity(sum_ideals(I, principal(xn, I.context)), F, guard)
    try:
        colon_reg = regularity(colon_monomial(I, xn), F, guard)
    except ColonIsUnit:
        colon_reg = None
    return Lemma12Branches(sum_reg, colon_reg, n)


def lemma12_bound(
    I: MonomialIdeal,
    x: int,
    n: int,
    F: FieldSpec = DEFAULT_FIELD,
    guard: OracleGuard = DEFAULT_GUARD,
) -> int:
    """max{reg(I + (x^n)), reg(I : x^n) + n}, both branches through the oracle."""
    return lemma12_branches(I, x, n, F, guard).bound
