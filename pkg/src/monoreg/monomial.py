"""Monomials and monomial ideals in a polynomial ring k[x1, ..., xn].

Everything here is exact and immutable.  A :class:`MonomialIdeal` always
stores its minimal generating set in graded lexicographic order, so two
ideals are equal iff their generator tuples are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import ColonIsUnit, ContextMismatch, UnitIdealError, ZeroIdealError


@dataclass(frozen=True)
class RingContext:
    num_vars: int
    var_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        if self.var_names is not None:
            names = tuple(self.var_names)
            if len(names) != self.num_vars:
                raise ValueError(
                    f"expected {self.num_vars} variable names, got {len(names)}"
                )
            if len(set(names)) != len(names):
                raise ValueError("variable names must be distinct")
            # the default names are stored as None so both spellings compare equal
            if names == tuple(f"x{i + 1}" for i in range(self.num_vars)):
                names = None
            object.__setattr__(self, "var_names", names)

    @property
    def names(self) -> tuple[str, ...]:
        if self.var_names is not None:
            return self.var_names
        return tuple(f"x{i + 1}" for i in range(self.num_vars))

    def monomial(self, exponents: Iterable[int]) -> "Monomial":
        m = Monomial(exponents)
        if len(m) != self.num_vars:
            raise ContextMismatch(
                f"monomial has {len(m)} exponents, ring has {self.num_vars} variables"
            )
        return m

    def var(self, i: int, power: int = 1) -> "Monomial":
        e = [0] * self.num_vars
        e[i] = power
        return Monomial(e)

    def unit(self) -> "Monomial":
        return Monomial((0,) * self.num_vars)

    def ideal(self, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return minimalize([self.monomial(g) for g in gens], self)

    def zero_ideal(self) -> "MonomialIdeal":
        return MonomialIdeal(self, ())


class Monomial(tuple):
    """Exponent vector of a monic monomial; the all-zero vector is 1."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int] = ()):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        return super().__new__(cls, exps)

    @classmethod
    def _raw(cls, exps) -> "Monomial":
        # trusted constructor for internal arithmetic
        return tuple.__new__(cls, exps)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def is_unit(self) -> bool:
        return not any(self)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self) if e)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial._raw(a + b for a, b in zip(self, other))

    def __pow__(self, n: int) -> "Monomial":
        return Monomial._raw(a * n for a in self)

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial._raw(a if a > b else b for a, b in zip(self, other))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial._raw(a if a < b else b for a, b in zip(self, other))

    def quotient(self, other: "Monomial") -> "Monomial":
        """``self / gcd(self, other)``, the generator of ``(self) : other``."""
        return Monomial._raw(a - b if a > b else 0 for a, b in zip(self, other))

    def sort_key(self):
        # graded lex, ascending degree; x1 > x2 > ... within a degree
        return (sum(self), tuple(-e for e in self))

    def format(self, names: Sequence[str]) -> str:
        parts = []
        for name, e in zip(names, self):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"Monomial({tuple(self)})"


def _antichain(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    kept: list[Monomial] = []
    for g in sorted(set(gens), key=Monomial.sort_key):
        if not any(k.divides(g) for k in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    Build instances through :func:`minimalize` (or ``RingContext.ideal``);
    the raw constructor trusts its input.
    """

    context: RingContext
    min_gens: tuple[Monomial, ...]

    @property
    def num_vars(self) -> int:
        return self.context.num_vars

    @property
    def num_gens(self) -> int:
        return len(self.min_gens)

    def is_zero(self) -> bool:
        return not self.min_gens

    def degrees(self) -> list[int]:
        return [g.degree for g in self.min_gens]

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.min_gens)

    __contains__ = contains

    def is_subset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.min_gens)

    @property
    def support(self) -> frozenset[int]:
        return frozenset().union(*(g.support for g in self.min_gens))

    def __mul__(self, other):
        if isinstance(other, MonomialIdeal):
            return product(self, other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, MonomialIdeal):
            return sum_ideals(self, other)
        return NotImplemented

    def __pow__(self, n: int):
        return power(self, n)

    def __and__(self, other):
        if isinstance(other, MonomialIdeal):
            return intersect(self, other)
        return NotImplemented

    def format(self) -> str:
        names = self.context.names
        return "(" + ", ".join(g.format(names) for g in self.min_gens) + ")"

    def __str__(self):
        return self.format()


def _check_ctx(*ideals: MonomialIdeal) -> RingContext:
    ctx = ideals[0].context
    for other in ideals[1:]:
        if other.context != ctx:
            raise ContextMismatch(f"{ctx} != {other.context}")
    return ctx


def _check_monomial(m: Monomial, ctx: RingContext) -> None:
    if len(m) != ctx.num_vars:
        raise ContextMismatch(
            f"monomial has {len(m)} exponents, ring has {ctx.num_vars} variables"
        )


def minimalize(gens: Iterable[Monomial], ctx: RingContext) -> MonomialIdeal:
    gens = list(gens)
    for g in gens:
        _check_monomial(g, ctx)
        if g.is_unit():
            raise UnitIdealError("the unit monomial generates the whole ring")
    return MonomialIdeal(ctx, _antichain(gens))


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    ctx = _check_ctx(I, J)
    return MonomialIdeal(ctx, _antichain(g * h for g in I.min_gens for h in J.min_gens))


def power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 1:
        raise ValueError("power exponent must be >= 1 (I^0 is the unit ideal)")
    result = I
    for _ in range(n - 1):
        result = product(result, I)
    return result


def sum_ideals(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    ctx = _check_ctx(I, J)
    return MonomialIdeal(ctx, _antichain(I.min_gens + J.min_gens))


def colon_monomial(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    _check_monomial(m, I.context)
    gens = [g.quotient(m) for g in I.min_gens]
    if any(g.is_unit() for g in gens):
        raise ColonIsUnit(f"{I} : {m.format(I.context.names)} contains 1")
    return MonomialIdeal(I.context, _antichain(gens))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    ctx = _check_ctx(I, J)
    return MonomialIdeal(ctx, _antichain(g.lcm(h) for g in I.min_gens for h in J.min_gens))


def colon_ideal(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_ctx(I, J)
    if J.is_zero():
        raise ZeroIdealError("colon by the zero ideal is the whole ring")
    parts = []
    for g in J.min_gens:
        try:
            parts.append(colon_monomial(I, g))
        except ColonIsUnit:
            # S is neutral for intersection
            continue
    if not parts:
        raise ColonIsUnit(f"{I} : {J} contains 1")
    return reduce(intersect, parts)


def scale(m: Monomial, I: MonomialIdeal) -> MonomialIdeal:
    _check_monomial(m, I.context)
    # multiplying by a fixed monomial keeps the antichain and the grlex order
    return MonomialIdeal(I.context, tuple(m * g for g in I.min_gens))


def principal(m: Monomial, ctx: RingContext) -> MonomialIdeal:
    return minimalize([m], ctx)


def _require_nonzero(I: MonomialIdeal) -> None:
    if I.is_zero():
        raise ZeroIdealError("operation undefined on the zero ideal")


def is_regular_sequence(I: MonomialIdeal) -> bool:
    """Minimal generators have pairwise disjoint supports."""
    _require_nonzero(I)
    seen: set[int] = set()
    for g in I.min_gens:
        s = g.support
        if seen & s:
            return False
        seen |= s
    return True


def is_pure_power_ci(I: MonomialIdeal) -> bool:
    _require_nonzero(I)
    used: set[int] = set()
    for g in I.min_gens:
        s = g.support
        if len(s) != 1 or s & used:
            return False
        used |= s
    return True


def pure_power_exponent(I: MonomialIdeal, var: int) -> int:
    """Exponent of the pure power of ``var`` among the generators, else 0."""
    for g in I.min_gens:
        if g[var] and g.support == {var}:
            return g[var]
    return 0
