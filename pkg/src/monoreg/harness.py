"""Theorem checkers, instance families and verification campaigns.

Every checker returns a :class:`CheckResult` comparing an oracle value
(``lhs``) with a predicted value or bound (``rhs``).  Inputs that fall
outside a checker's hypotheses raise :class:`PreconditionError`; this is
kept apart from a failed check.

Ideal-equality checks (the proof identities) report ``lhs`` as the size of
the symmetric difference of the two canonical generator lists and
``rhs = 0``.
"""
from __future__ import annotations

import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
import dataclasses
from dataclasses import asdict, dataclass
from enum import Enum
from itertools import combinations, combinations_with_replacement, permutations, product as _cartesian
from math import factorial, log2
from typing import Iterable, Iterator, Sequence

import numpy as np

from .betti import (
    DEFAULT_FIELD,
    DEFAULT_GUARD,
    FieldSpec,
    OracleGuard,
    betti_table,
    betti_tables,
)
from .errors import ColonIsUnit, ComplexityGuard, MonoregError, PreconditionError
from .formulas import (
    CiDegrees,
    Lemma12Branches,
    lemma13_predicted,
    pairwise_product_bound,
    reg_ci_power,
    triple_product_bound,
)
from .monomial import (
    Monomial,
    MonomialIdeal,
    RingContext,
    colon_monomial,
    intersect,
    is_pure_power_ci,
    is_regular_sequence,
    minimalize,
    power,
    principal,
    product,
    pure_power_exponent,
    scale,
    sum_ideals,
)


class Claim(str, Enum):
    THM_2_1 = "THM_2_1"
    THM_3_2 = "THM_3_2"
    LEM_3_1 = "LEM_3_1"
    LEM_1_2 = "LEM_1_2"
    LEM_1_3 = "LEM_1_3"
    PROOF_INTERSECT = "PROOF_INTERSECT"
    COLON_CASE = "COLON_CASE"
    LINEAR_PRODUCT = "LINEAR_PRODUCT"
    D2_PRODUCT = "D2_PRODUCT"
    POWER_SUBADD = "POWER_SUBADD"


class Relation(str, Enum):
    EQ = "EQ"
    LE = "LE"

    def holds(self, lhs: int, rhs: int) -> bool:
        return lhs == rhs if self is Relation.EQ else lhs <= rhs


@dataclass(frozen=True)
class CampaignConfig:
    max_vars: int = 4
    max_gens_per_ideal: int = 3
    max_exponent: int = 3
    max_power_n: int = 3
    field: FieldSpec = DEFAULT_FIELD
    seed: int = 0
    # None: enumerations are exhaustive and random families draw 500 ideals
    instance_budget: int | None = None
    parallelism: int = 1
    max_support: int = 2
    max_u_degree: int = 4
    max_factors: int = 3
    cross_field: FieldSpec | None = None
    guard: OracleGuard = DEFAULT_GUARD

    def __post_init__(self):
        for name in ("max_vars", "max_gens_per_ideal", "max_exponent", "max_power_n",
                     "parallelism", "max_support", "max_u_degree", "max_factors"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.instance_budget is not None and self.instance_budget < 0:
            raise ValueError("instance_budget must be >= 0")

    @property
    def random_count(self) -> int:
        return 500 if self.instance_budget is None else self.instance_budget

    def to_dict(self) -> dict:
        d = asdict(self)
        d["field"] = str(self.field)
        d["cross_field"] = None if self.cross_field is None else str(self.cross_field)
        d["guard"] = {"max_gens": self.guard.max_gens, "max_vars": self.guard.max_vars}
        return d


@dataclass(frozen=True)
class CheckResult:
    instance_id: str
    claim: Claim
    lhs: int
    rhs: int
    relation: Relation
    passed: bool
    field_used: FieldSpec
    stratum: str | None = None
    tight: bool | None = None

    def __post_init__(self):
        if self.passed != self.relation.holds(self.lhs, self.rhs):
            raise ValueError("pass flag disagrees with the relation")

    def to_dict(self) -> dict:
        d = {
            "instance_id": self.instance_id,
            "claim": self.claim.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation.value,
            "pass": self.passed,
            "field": str(self.field_used),
        }
        if self.stratum is not None:
            d["stratum"] = self.stratum
        if self.tight is not None:
            d["tight"] = self.tight
        return d


def _result(instance_id, claim, lhs, rhs, relation, F, stratum=None, tight=None) -> CheckResult:
    return CheckResult(instance_id, claim, lhs, rhs, relation, relation.holds(lhs, rhs),
                       F, stratum, tight)


# -- instance serialization ---------------------------------------------------

def ideal_id(I: MonomialIdeal) -> str:
    names = I.context.names
    return ",".join(g.format(names) for g in I.min_gens) or "0"


def instance_id(claim: Claim, ctx: RingContext, **parts) -> str:
    body = ";".join(f"{k}={v}" for k, v in parts.items())
    return f"{claim.value}|vars={','.join(ctx.names)}|{body}"


# -- regularity oracle with a relabeling-invariant cache ----------------------

# literal ideals remembered in front of the canonical cache; reset when full
LITERAL_CACHE_SIZE = 100_000


def canonical_key(I: MonomialIdeal, max_perms: int = 40320):
    """Key shared by all ideals that differ by a permutation of variables.

    Unused variables are dropped, columns are ordered by a refinement
    signature, and ties are broken by trying every order within each tie
    class.  When that would exceed ``max_perms`` orders the literal
    compressed generator list is used (still correct, fewer cache hits).
    """
    gens = [tuple(g) for g in I.min_gens]
    used = [j for j in range(I.num_vars) if any(g[j] for g in gens)]
    rows = [tuple(g[j] for j in used) for g in gens]
    row_sig = [tuple(sorted(r)) for r in rows]
    col_sig = {}
    for c in range(len(used)):
        col_sig[c] = tuple(sorted((r[c], row_sig[t]) for t, r in enumerate(rows)))
    classes: dict = {}
    for c in range(len(used)):
        classes.setdefault(col_sig[c], []).append(c)
    groups = [classes[s] for s in sorted(classes)]
    count = 1
    for grp in groups:
        count *= factorial(len(grp))
    if count > max_perms:
        return ("literal", tuple(sorted(rows)))
    best = None
    for choice in _cartesian(*(permutations(grp) for grp in groups)):
        order = [c for part in choice for c in part]
        cand = tuple(sorted(tuple(r[c] for c in order) for r in rows))
        if best is None or cand < best:
            best = cand
    return ("canonical", best)


def _compact(key):
    # bytes keep a multi-million entry cache within memory
    tag, rows = key
    flat = [e for r in rows for e in r]
    if flat and max(flat) < 256 and len(rows[0]) < 256:
        return bytes((tag == "canonical", len(rows[0]))) + bytes(flat)
    return key


@dataclass
class RegOracle:
    """Regularity oracle that memoizes by :func:`canonical_key`.

    Every fresh computation also runs self-consistency checks: the Betti
    numbers in homological degree 0 must list the minimal generators, a
    complete intersection must have projective dimension s - 1, and with
    ``cross_field`` set the Betti table is recomputed over a second field.
    Problems are recorded, never raised.
    """

    field: FieldSpec = DEFAULT_FIELD
    cross_field: FieldSpec | None = None
    guard: OracleGuard = DEFAULT_GUARD
    self_check: bool = True
    cache: dict = dataclasses.field(default_factory=dict)
    literal: dict = dataclasses.field(default_factory=dict)
    anomalies: list = dataclasses.field(default_factory=list)
    disagreements: list = dataclasses.field(default_factory=list)
    computations: int = 0
    hits: int = 0

    def reg(self, I: MonomialIdeal) -> int:
        self.guard.check(I)
        got = self.literal.get(I)
        if got is not None:
            self.hits += 1
            return got
        key = _compact(canonical_key(I))
        got = self.cache.get(key)
        if got is None:
            got = self._compute(I)
            self.cache[key] = got
        else:
            self.hits += 1
        if len(self.literal) >= LITERAL_CACHE_SIZE:
            self.literal.clear()
        self.literal[I] = got
        return got

    def _compute(self, I: MonomialIdeal) -> int:
        self.computations += 1
        if self.cross_field is None:
            table, other = betti_table(I, self.field, self.guard), None
        else:
            table, other = betti_tables(I, [self.field, self.cross_field], self.guard)
        r = table.regularity()
        if self.self_check:
            self._check_table(I, table)
        if other is not None:
            if other.entries != table.entries:
                self.disagreements.append({
                    "ideal": ideal_id(I),
                    "vars": list(I.context.names),
                    "field": str(self.field),
                    "cross_field": str(self.cross_field),
                    "reg": r,
                    "cross_reg": other.regularity(),
                    "tables_differ": True,
                })
        return r

    def _check_table(self, I: MonomialIdeal, table) -> None:
        zero = Counter({a: d for (i, a), d in table.entries.items() if i == 0})
        expected = Counter(tuple(g) for g in I.min_gens)
        if zero != expected:
            self.anomalies.append({"ideal": ideal_id(I), "vars": list(I.context.names),
                                   "kind": "beta0_mismatch"})
        if is_regular_sequence(I) and table.projective_dimension() != I.num_gens - 1:
            self.anomalies.append({"ideal": ideal_id(I), "vars": list(I.context.names),
                                   "kind": "ci_projective_dimension",
                                   "pd": table.projective_dimension()})


def _oracle(F: FieldSpec, oracle: RegOracle | None) -> RegOracle:
    if oracle is None:
        return RegOracle(F)
    if oracle.field != F:
        raise ValueError(f"oracle works over {oracle.field}, checker asked for {F}")
    return oracle


# -- strata -------------------------------------------------------------------

def triple_stratum(I: MonomialIdeal, J: MonomialIdeal, K: MonomialIdeal) -> str:
    """Proof branch of a triple of pure power complete intersections.

    ``case3_*``: some variable has a pure power in all three ideals; with
    exponents m >= n >= s the split is m <= n + s versus m > n + s.
    ``case2``: some variable is shared by exactly two.  ``case1``: no
    variable is shared.
    """
    shared_by_two = False
    saw_le = saw_gt = False
    for v in range(I.num_vars):
        exps = [e for e in (pure_power_exponent(X, v) for X in (I, J, K)) if e]
        if len(exps) == 3:
            m, n, s = sorted(exps, reverse=True)
            if m > n + s:
                saw_gt = True
            else:
                saw_le = True
        elif len(exps) == 2:
            shared_by_two = True
    if saw_gt:
        return "case3_m_gt_ns"
    if saw_le:
        return "case3_m_le_ns"
    return "case2" if shared_by_two else "case1"


# -- checkers -----------------------------------------------------------------

def check_theorem_2_1(I: MonomialIdeal, n: int, F: FieldSpec = DEFAULT_FIELD, *,
                      oracle: RegOracle | None = None) -> CheckResult:
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if not is_regular_sequence(I):
        raise PreconditionError(f"{I} is not a complete intersection")
    oracle = _oracle(F, oracle)
    lhs = oracle.reg(power(I, n))
    rhs = reg_ci_power(CiDegrees.of(I), n)
    iid = instance_id(Claim.THM_2_1, I.context, I=ideal_id(I), n=n)
    return _result(iid, Claim.THM_2_1, lhs, rhs, Relation.EQ, F, stratum=f"s={I.num_gens}")


def _require_pure(*ideals: MonomialIdeal) -> None:
    for X in ideals:
        if X.is_zero() or not is_pure_power_ci(X):
            raise PreconditionError(f"{X} is not a pure power complete intersection")


def check_theorem_3_2(I, J, K, F: FieldSpec = DEFAULT_FIELD, *,
                      oracle: RegOracle | None = None) -> CheckResult:
    _require_pure(I, J, K)
    oracle = _oracle(F, oracle)
    lhs = oracle.reg(product(product(I, J), K))
    rhs = triple_product_bound(oracle.reg(I), oracle.reg(J), oracle.reg(K))
    iid = instance_id(Claim.THM_3_2, I.context, I=ideal_id(I), J=ideal_id(J), K=ideal_id(K))
    return _result(iid, Claim.THM_3_2, lhs, rhs, Relation.LE, F,
                   stratum=triple_stratum(I, J, K), tight=lhs == rhs)


def check_lemma_3_1(I, J, K, F: FieldSpec = DEFAULT_FIELD, *,
                    oracle: RegOracle | None = None) -> CheckResult:
    _require_pure(I, J, K)
    oracle = _oracle(F, oracle)
    pairwise = sum_ideals(sum_ideals(product(I, J), product(I, K)), product(J, K))
    lhs = oracle.reg(pairwise)
    rhs = pairwise_product_bound(oracle.reg(I), oracle.reg(J), oracle.reg(K))
    iid = instance_id(Claim.LEM_3_1, I.context, I=ideal_id(I), J=ideal_id(J), K=ideal_id(K))
    return _result(iid, Claim.LEM_3_1, lhs, rhs, Relation.LE, F,
                   stratum=triple_stratum(I, J, K), tight=lhs == rhs)


def check_lemma_1_2(I: MonomialIdeal, x: int, n: int, F: FieldSpec = DEFAULT_FIELD, *,
                    oracle: RegOracle | None = None) -> CheckResult:
    if I.is_zero():
        raise PreconditionError("zero ideal")
    oracle = _oracle(F, oracle)
    ctx = I.context
    xn = principal(ctx.var(x, n), ctx)
    sum_reg = oracle.reg(sum_ideals(I, xn))
    try:
        colon_reg = oracle.reg(colon_monomial(I, ctx.var(x, n)))
    except ColonIsUnit:
        colon_reg = None
    branches = Lemma12Branches(sum_reg, colon_reg, n)
    lhs = oracle.reg(I)
    iid = instance_id(Claim.LEM_1_2, ctx, I=ideal_id(I), x=ctx.names[x], n=n)
    return _result(iid, Claim.LEM_1_2, lhs, branches.bound, Relation.LE, F,
                   stratum="colon_unit" if branches.colon_is_unit else "colon_proper",
                   tight=lhs == branches.bound)


def check_lemma_1_3(I: MonomialIdeal, u: Monomial, F: FieldSpec = DEFAULT_FIELD, *,
                    oracle: RegOracle | None = None) -> CheckResult:
    if I.is_zero():
        raise PreconditionError("zero ideal")
    u = I.context.monomial(u)
    if u.is_unit():
        raise PreconditionError("u must have positive degree")
    if u.support & I.support:
        raise PreconditionError("u shares a variable with the generators of I")
    oracle = _oracle(F, oracle)
    ctx = I.context
    lhs = oracle.reg(sum_ideals(I, principal(u, ctx)))
    rhs = lemma13_predicted(oracle.reg(I), u.degree)
    iid = instance_id(Claim.LEM_1_3, ctx, I=ideal_id(I), u=u.format(ctx.names))
    return _result(iid, Claim.LEM_1_3, lhs, rhs, Relation.EQ, F)


def _ideal_difference(A: MonomialIdeal, B: MonomialIdeal) -> int:
    return len(set(A.min_gens) ^ set(B.min_gens))


def check_proof_intersection_identity(u: Monomial, J: MonomialIdeal, n: int,
                                      F: FieldSpec = DEFAULT_FIELD) -> CheckResult:
    """u*I^(n-1) meets J^n exactly in u*J^n, where I = (u) + J."""
    ctx = J.context
    u = ctx.monomial(u)
    if n < 2:
        raise PreconditionError("n must be >= 2")
    if u.is_unit() or J.is_zero():
        raise PreconditionError("need a nonunit u and a nonzero J")
    I = sum_ideals(principal(u, ctx), J)
    if I.num_gens != J.num_gens + 1 or not is_regular_sequence(I):
        raise PreconditionError("(u) + J is not a complete intersection with generator u")
    left = intersect(scale(u, power(I, n - 1)), power(J, n))
    right = scale(u, power(J, n))
    iid = instance_id(Claim.PROOF_INTERSECT, ctx, u=u.format(ctx.names), J=ideal_id(J), n=n)
    return _result(iid, Claim.PROOF_INTERSECT, _ideal_difference(left, right), 0, Relation.EQ, F)


def check_colon_case_identities(I1: MonomialIdeal, J: MonomialIdeal, K: MonomialIdeal,
                                x: int, m: int, F: FieldSpec = DEFAULT_FIELD) -> CheckResult:
    """((IJ + IK + JK) : x^m) = J + K for I = I1 + (x^m), x absent from I1, J, K."""
    ctx = J.context
    if m < 1:
        raise PreconditionError("m must be >= 1")
    if J.is_zero() or K.is_zero():
        raise PreconditionError("J and K must be nonzero")
    for X in (I1, J, K):
        if x in X.support:
            raise PreconditionError(f"{ctx.names[x]} occurs in {X}")
    xm = ctx.var(x, m)
    I = sum_ideals(I1, principal(xm, ctx))
    pairwise = sum_ideals(sum_ideals(product(I, J), product(I, K)), product(J, K))
    expected = sum_ideals(J, K)
    try:
        diff = _ideal_difference(colon_monomial(pairwise, xm), expected)
    except ColonIsUnit:
        diff = expected.num_gens + 1
    iid = instance_id(Claim.COLON_CASE, ctx, I1=ideal_id(I1), J=ideal_id(J), K=ideal_id(K),
                      x=ctx.names[x], m=m)
    return _result(iid, Claim.COLON_CASE, diff, 0, Relation.EQ, F)


def check_linear_product(factors: Sequence[MonomialIdeal], F: FieldSpec = DEFAULT_FIELD, *,
                         oracle: RegOracle | None = None) -> CheckResult:
    if not factors:
        raise PreconditionError("need at least one factor")
    for X in factors:
        if X.is_zero() or any(g.degree != 1 for g in X.min_gens):
            raise PreconditionError(f"{X} is not generated by variables")
    oracle = _oracle(F, oracle)
    prod = factors[0]
    for X in factors[1:]:
        prod = product(prod, X)
    lhs = oracle.reg(prod)
    ctx = factors[0].context
    iid = instance_id(Claim.LINEAR_PRODUCT, ctx,
                      factors="*".join(f"({ideal_id(X)})" for X in factors))
    return _result(iid, Claim.LINEAR_PRODUCT, lhs, len(factors), Relation.EQ, F,
                   stratum=f"d={len(factors)}")


def check_d2_product(I: MonomialIdeal, J: MonomialIdeal, F: FieldSpec = DEFAULT_FIELD, *,
                     oracle: RegOracle | None = None) -> CheckResult:
    for X in (I, J):
        if X.is_zero() or not is_regular_sequence(X):
            raise PreconditionError(f"{X} is not a complete intersection")
    oracle = _oracle(F, oracle)
    lhs = oracle.reg(product(I, J))
    rhs = oracle.reg(I) + oracle.reg(J)
    iid = instance_id(Claim.D2_PRODUCT, I.context, I=ideal_id(I), J=ideal_id(J))
    shared = "shared_vars" if I.support & J.support else "disjoint_vars"
    return _result(iid, Claim.D2_PRODUCT, lhs, rhs, Relation.LE, F, stratum=shared,
                   tight=lhs == rhs)


def check_power_subadditivity(I: MonomialIdeal, n: int, F: FieldSpec = DEFAULT_FIELD, *,
                              oracle: RegOracle | None = None) -> CheckResult:
    """reg(I^n) <= n reg(I) for a monomial complete intersection."""
    if I.is_zero() or not is_regular_sequence(I):
        raise PreconditionError(f"{I} is not a complete intersection")
    oracle = _oracle(F, oracle)
    lhs = oracle.reg(power(I, n))
    rhs = n * oracle.reg(I)
    iid = instance_id(Claim.POWER_SUBADD, I.context, I=ideal_id(I), n=n)
    return _result(iid, Claim.POWER_SUBADD, lhs, rhs, Relation.LE, F, tight=lhs == rhs)


# -- instance families --------------------------------------------------------

def _ci_candidates(num_vars: int, max_support: int, max_exp: int) -> list[Monomial]:
    out = []
    for size in range(1, max_support + 1):
        for supp in combinations(range(num_vars), size):
            for exps in _cartesian(range(1, max_exp + 1), repeat=size):
                e = [0] * num_vars
                for v, k in zip(supp, exps):
                    e[v] = k
                out.append(Monomial(e))
    return sorted(out, key=Monomial.sort_key)


def _disjoint_sets(cands: list[Monomial], max_gens: int) -> Iterator[tuple[Monomial, ...]]:
    supports = [c.support for c in cands]

    def extend(start, chosen, used):
        if chosen:
            yield tuple(chosen)
        if len(chosen) == max_gens:
            return
        for idx in range(start, len(cands)):
            if not (supports[idx] & used):
                chosen.append(cands[idx])
                yield from extend(idx + 1, chosen, used | supports[idx])
                chosen.pop()

    yield from extend(0, [], frozenset())


def _enumerate_cis(num_vars, max_gens, max_support, max_exp) -> list[MonomialIdeal]:
    ctx = RingContext(num_vars)
    ideals = [MonomialIdeal(ctx, tuple(sorted(gs, key=Monomial.sort_key)))
              for gs in _disjoint_sets(_ci_candidates(num_vars, max_support, max_exp), max_gens)]
    ideals.sort(key=lambda I: (I.num_gens, [g.sort_key() for g in I.min_gens]))
    return ideals


def enumerate_monomial_cis(cfg: CampaignConfig) -> Iterator[MonomialIdeal]:
    """All monomial complete intersections within the configured bounds.

    Generators have pairwise disjoint supports of size <= ``max_support``
    and exponents <= ``max_exponent`` on each supporting variable.  The
    enumeration is literal: ideals that differ by a renaming of variables
    are listed separately.
    """
    yield from _enumerate_cis(cfg.max_vars, cfg.max_gens_per_ideal, cfg.max_support,
                              cfg.max_exponent)


def enumerate_pure_power_cis(cfg: CampaignConfig) -> Iterator[MonomialIdeal]:
    yield from _enumerate_cis(cfg.max_vars, cfg.max_gens_per_ideal, 1, cfg.max_exponent)


def random_ideal(rng: random.Random, ctx: RingContext, num_vars: int, max_gens: int,
                 max_exp: int) -> MonomialIdeal:
    """Uniform exponent vectors on the first ``num_vars`` variables, zero rejected."""
    g = rng.randint(1, max_gens)
    gens = []
    while len(gens) < g:
        e = [rng.randint(0, max_exp) for _ in range(num_vars)]
        if any(e):
            gens.append(Monomial(e + [0] * (ctx.num_vars - num_vars)))
    return minimalize(gens, ctx)


def _stream(cfg: CampaignConfig, claim: Claim) -> random.Random:
    return random.Random(f"{cfg.seed}:{claim.value}")


def _budget(it: Iterable, cfg: CampaignConfig) -> list:
    items = []
    if cfg.instance_budget == 0:
        return items
    for x in it:
        items.append(x)
        if cfg.instance_budget is not None and len(items) >= cfg.instance_budget:
            break
    return items


def _triples(cfg: CampaignConfig):
    return combinations_with_replacement(list(enumerate_pure_power_cis(cfg)), 3)


def _colon_case_instances(cfg: CampaignConfig):
    seen = set()
    for triple in _triples(cfg):
        for r in range(3):
            I, J, K = triple[r:] + triple[:r]
            for v in sorted(I.support):
                m = pure_power_exponent(I, v)
                if v in J.support or v in K.support:
                    continue
                I1 = MonomialIdeal(I.context, tuple(g for g in I.min_gens if g.support != {v}))
                key = (I1, J, K, v, m)
                if key not in seen:
                    seen.add(key)
                    yield (I1, J, K, v, m)


def _linear_instances(cfg: CampaignConfig):
    ctx = RingContext(cfg.max_vars)
    subsets = [s for r in range(1, cfg.max_vars + 1) for s in combinations(range(cfg.max_vars), r)]
    factors = [minimalize([ctx.var(v) for v in s], ctx) for s in subsets]
    for d in range(1, cfg.max_factors + 1):
        for combo in combinations_with_replacement(factors, d):
            yield combo


def relabel(I: MonomialIdeal, perm: Sequence[int]) -> MonomialIdeal:
    """Rename variable ``j`` to ``perm[j]``."""
    n = I.num_vars
    gens = []
    for g in I.min_gens:
        e = [0] * n
        for j, k in enumerate(g):
            e[perm[j]] = k
        gens.append(Monomial._raw(e))
    return MonomialIdeal(I.context, tuple(sorted(gens, key=Monomial.sort_key)))


def automorphisms(I: MonomialIdeal, variables: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Variable permutations fixing ``I`` (brute force).

    With ``variables`` given, only permutations of those variables are
    tried; every other variable stays put.
    """
    n = I.num_vars
    if variables is None:
        return [p for p in permutations(range(n)) if relabel(I, p) == I]
    variables = list(variables)
    out = []
    for image in permutations(variables):
        perm = list(range(n))
        for v, w in zip(variables, image):
            perm[v] = w
        if relabel(I, perm) == I:
            out.append(tuple(perm))
    return out


def orbit_representatives(ideals: Iterable[MonomialIdeal]) -> list[MonomialIdeal]:
    """First ideal of each relabeling class, in input order."""
    seen, reps = set(), []
    for I in ideals:
        key = canonical_key(I)
        if key not in seen:
            seen.add(key)
            reps.append(I)
    return reps


def _pair_keys(cis: Sequence[MonomialIdeal]):
    """Exponent array of ``cis`` and a packing function for orbit keys.

    Each generator becomes a base-(max exponent + 1) integer; a sorted,
    zero-padded row of those is packed into one int64.  Returns None when
    the packed key would not fit.
    """
    n = cis[0].num_vars
    g = max(I.num_gens for I in cis)
    base = 1 + max(e for I in cis for gen in I.min_gens for e in gen)
    if n * g * log2(base) > 62:
        return None
    arr = np.zeros((len(cis), g, n), dtype=np.int64)
    for r, I in enumerate(cis):
        for c, gen in enumerate(I.min_gens):
            arr[r, c] = gen
    weights = base ** np.arange(n, dtype=np.int64)
    stride = np.int64(base) ** n

    def keys(perm) -> np.ndarray:
        codes = np.sort(arr[:, :, list(perm)] @ weights, axis=1)
        out = np.zeros(len(cis), dtype=np.int64)
        for c in range(g):
            out = out * stride + codes[:, c]
        return out

    return keys


def ci_pairs_up_to_relabeling(cis: Sequence[MonomialIdeal]) -> Iterator[tuple]:
    """One pair (I, J) per class of pairs under simultaneous relabeling.

    ``cis`` must be closed under relabeling.  I runs over class
    representatives and J over ``cis`` modulo the automorphisms of I; the
    first J of each class (in input order) is kept.
    """
    cis = list(cis)
    if not cis:
        return
    keys = _pair_keys(cis)
    for I in orbit_representatives(cis):
        auts = automorphisms(I)
        if keys is None:
            seen = set()
            for J in cis:
                key = min(relabel(J, p).min_gens for p in auts)
                if key not in seen:
                    seen.add(key)
                    yield (I, J)
            continue
        best = keys(auts[0])
        for p in auts[1:]:
            np.minimum(best, keys(p), out=best)
        _, first = np.unique(best, return_index=True)
        for idx in np.sort(first):
            yield (I, cis[int(idx)])


def build_tasks(cfg: CampaignConfig, claim: Claim) -> list[tuple]:
    """Instances of ``claim`` as ``(claim, args)`` tuples, in canonical order."""
    if claim is Claim.THM_2_1:
        items = _budget(enumerate_monomial_cis(cfg), cfg)
        return [(claim, (I, n)) for I in items for n in range(1, cfg.max_power_n + 1)]
    if claim in (Claim.THM_3_2, Claim.LEM_3_1):
        return [(claim, t) for t in _budget(_triples(cfg), cfg)]
    if claim is Claim.LEM_1_3:
        rng = _stream(cfg, claim)
        ctx = RingContext(cfg.max_vars + 1)
        tasks = []
        for _ in range(cfg.random_count):
            I = random_ideal(rng, ctx, cfg.max_vars, cfg.max_gens_per_ideal, cfg.max_exponent)
            u = ctx.var(cfg.max_vars, rng.randint(1, cfg.max_u_degree))
            tasks.append((claim, (I, u)))
        return tasks
    if claim is Claim.LEM_1_2:
        rng = _stream(cfg, claim)
        ctx = RingContext(cfg.max_vars)
        tasks = []
        for _ in range(cfg.random_count):
            I = random_ideal(rng, ctx, cfg.max_vars, cfg.max_gens_per_ideal, cfg.max_exponent)
            for x in range(cfg.max_vars):
                for n in range(1, cfg.max_power_n + 1):
                    tasks.append((claim, (I, x, n)))
        return tasks
    if claim is Claim.PROOF_INTERSECT:
        tasks = []
        for I in _budget((I for I in enumerate_monomial_cis(cfg) if I.num_gens >= 2), cfg):
            for u in I.min_gens:
                J = MonomialIdeal(I.context, tuple(g for g in I.min_gens if g != u))
                for n in range(2, max(cfg.max_power_n, 2) + 1):
                    tasks.append((claim, (u, J, n)))
        return tasks
    if claim is Claim.COLON_CASE:
        return [(claim, t) for t in _budget(_colon_case_instances(cfg), cfg)]
    if claim is Claim.LINEAR_PRODUCT:
        return [(claim, (combo,)) for combo in _budget(_linear_instances(cfg), cfg)]
    if claim is Claim.D2_PRODUCT:
        cis = list(enumerate_monomial_cis(cfg))
        return [(claim, pair) for pair in _budget(ci_pairs_up_to_relabeling(cis), cfg)]
    if claim is Claim.POWER_SUBADD:
        tasks = [(claim, ("ci", I, n)) for I in _budget(enumerate_monomial_cis(cfg), cfg)
                 for n in range(2, cfg.max_power_n + 1)]
        rng = _stream(cfg, claim)
        ctx = RingContext(cfg.max_vars)
        for _ in range(cfg.random_count):
            I = random_ideal(rng, ctx, cfg.max_vars, cfg.max_gens_per_ideal, cfg.max_exponent)
            tasks.append((claim, ("general", I)))
        return tasks
    raise ValueError(f"unknown claim {claim}")


# -- report -------------------------------------------------------------------

@dataclass
class Report:
    config: dict
    counts: dict = dataclasses.field(default_factory=dict)
    strata: dict = dataclasses.field(default_factory=dict)
    failures: list = dataclasses.field(default_factory=list)
    errors: list = dataclasses.field(default_factory=list)
    field_disagreements: list = dataclasses.field(default_factory=list)
    oracle_anomalies: list = dataclasses.field(default_factory=list)
    findings: list = dataclasses.field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not (self.failures or self.field_disagreements or self.oracle_anomalies)

    def to_dict(self, include_wall_time: bool = True) -> dict:
        d = {
            "config": self.config,
            "claims": self.counts,
            "strata": self.strata,
            "failures": self.failures,
            "errors": self.errors,
            "field_disagreements": self.field_disagreements,
            "oracle_anomalies": self.oracle_anomalies,
            "findings": self.findings,
            "ok": self.ok,
        }
        if include_wall_time:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self, include_wall_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_wall_time), indent=2, sort_keys=True) + "\n"

    def format_table(self, max_failures: int = 20) -> str:
        head = f"{'claim':<16}{'checked':>9}{'passed':>9}{'failed':>8}{'errors':>8}{'skipped':>9}"
        lines = [head, "-" * len(head)]
        for claim, c in sorted(self.counts.items()):
            lines.append(f"{claim:<16}{c['checked']:>9}{c['passed']:>9}{c['failed']:>8}"
                         f"{c['errors']:>8}{c['skipped']:>9}")
        for claim, strata in sorted(self.strata.items()):
            for name, c in sorted(strata.items()):
                tight = f", tight {c['tight']}" if "tight" in c else ""
                lines.append(f"  {claim} {name}: checked {c['checked']}, passed {c['passed']}{tight}")
        for f in self.failures[:max_failures]:
            lines.append(f"FAIL {f['instance_id']}: lhs={f['lhs']} rhs={f['rhs']} ({f['relation']})")
        if len(self.failures) > max_failures:
            lines.append(f"... {len(self.failures) - max_failures} more failures")
        if self.field_disagreements:
            lines.append(f"field disagreements: {len(self.field_disagreements)}")
        if self.oracle_anomalies:
            lines.append(f"oracle anomalies: {len(self.oracle_anomalies)}")
        if self.findings:
            lines.append(f"findings (reg(I^2) > 2 reg(I)): {len(self.findings)}")
        lines.append(f"wall time {self.wall_time:.2f}s; {'OK' if self.ok else 'FAILED'}")
        return "\n".join(lines)


# -- execution ----------------------------------------------------------------

def _run_task(task, cfg: CampaignConfig, oracle: RegOracle):
    """Returns ("result", CheckResult) | ("finding", dict) | ("none", None)."""
    claim, args = task
    F = cfg.field
    if claim is Claim.THM_2_1:
        return "result", check_theorem_2_1(*args, F, oracle=oracle)
    if claim is Claim.THM_3_2:
        return "result", check_theorem_3_2(*args, F, oracle=oracle)
    if claim is Claim.LEM_3_1:
        return "result", check_lemma_3_1(*args, F, oracle=oracle)
    if claim is Claim.LEM_1_2:
        return "result", check_lemma_1_2(*args, F, oracle=oracle)
    if claim is Claim.LEM_1_3:
        return "result", check_lemma_1_3(*args, F, oracle=oracle)
    if claim is Claim.PROOF_INTERSECT:
        return "result", check_proof_intersection_identity(*args, F)
    if claim is Claim.COLON_CASE:
        return "result", check_colon_case_identities(*args, F)
    if claim is Claim.LINEAR_PRODUCT:
        return "result", check_linear_product(args[0], F, oracle=oracle)
    if claim is Claim.D2_PRODUCT:
        return "result", check_d2_product(*args, F, oracle=oracle)
    if claim is Claim.POWER_SUBADD:
        if args[0] == "ci":
            return "result", check_power_subadditivity(args[1], args[2], F, oracle=oracle)
        I = args[1]
        r1, r2 = oracle.reg(I), oracle.reg(power(I, 2))
        if r2 > 2 * r1:
            return "finding", {"instance_id": instance_id(claim, I.context, I=ideal_id(I)),
                               "reg": r1, "reg_square": r2}
        return "none", None
    raise ValueError(f"unknown claim {claim}")


def _task_label(task) -> str:
    claim, args = task
    parts = []
    for a in args:
        if isinstance(a, MonomialIdeal):
            parts.append(f"({ideal_id(a)})")
        elif isinstance(a, tuple) and a and isinstance(a[0], MonomialIdeal):
            parts.append("*".join(f"({ideal_id(x)})" for x in a))
        else:
            parts.append(str(a))
    return f"{claim.value}|" + ";".join(parts)


def _run_chunk(payload):
    cfg, tasks = payload
    oracle = RegOracle(cfg.field, cfg.cross_field, cfg.guard)
    out = []
    for task in tasks:
        claim = task[0]
        try:
            kind, value = _run_task(task, cfg, oracle)
        except ComplexityGuard as exc:
            out.append(("skipped", claim, _task_label(task), str(exc)))
            continue
        except PreconditionError as exc:
            out.append(("error", claim, _task_label(task), f"precondition: {exc}"))
            continue
        except MonoregError as exc:
            out.append(("error", claim, _task_label(task), f"{type(exc).__name__}: {exc}"))
            continue
        if kind == "result" and value.passed:
            # passing checks only feed the tallies
            out.append(("pass", claim, value.stratum, value.tight))
        else:
            out.append((kind, claim, value))
    return out, oracle.disagreements, oracle.anomalies


def _tally(report: Report, claim: Claim, passed: bool, stratum, tight) -> None:
    counts = report.counts[claim.value]
    counts["checked"] += 1
    counts["passed" if passed else "failed"] += 1
    if stratum is not None:
        s = report.strata.setdefault(claim.value, {}).setdefault(
            stratum, {"checked": 0, "passed": 0})
        s["checked"] += 1
        s["passed"] += int(passed)
        if tight is not None:
            s["tight"] = s.get("tight", 0) + int(tight)


def _dedupe(records: list[dict]) -> list[dict]:
    seen = {}
    for r in records:
        seen.setdefault(json.dumps(r, sort_keys=True), r)
    return [seen[k] for k in sorted(seen)]


def run_campaign(cfg: CampaignConfig, claims: Iterable[Claim]) -> Report:
    start = time.perf_counter()
    claims = sorted({Claim(c) for c in claims}, key=lambda c: c.value)
    report = Report(config=cfg.to_dict())
    tasks = [t for claim in claims for t in build_tasks(cfg, claim)]
    for claim in claims:
        report.counts[claim.value] = {"checked": 0, "passed": 0, "failed": 0, "errors": 0,
                                      "skipped": 0}
    if cfg.parallelism > 1 and len(tasks) > 1:
        # contiguous chunks keep isomorphic instances together for the cache
        size = -(-len(tasks) // cfg.parallelism)
        chunks = [(cfg, tasks[i:i + size]) for i in range(0, len(tasks), size)]
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            outputs = list(pool.map(_run_chunk, chunks))
    else:
        outputs = [_run_chunk((cfg, tasks))]

    results, findings, errors = [], [], []
    for out, disagreements, anomalies in outputs:
        report.field_disagreements.extend(disagreements)
        report.oracle_anomalies.extend(anomalies)
        for rec in out:
            kind, claim = rec[0], rec[1]
            counts = report.counts[claim.value]
            if kind == "pass":
                _tally(report, claim, True, rec[2], rec[3])
            elif kind == "result":
                results.append(rec[2])
            elif kind == "finding":
                findings.append(rec[2])
            elif kind == "skipped":
                counts["skipped"] += 1
            elif kind == "error":
                counts["errors"] += 1
                errors.append({"instance_id": rec[2], "claim": claim.value, "message": rec[3]})

    for r in results:
        _tally(report, r.claim, r.passed, r.stratum, r.tight)
    report.failures = sorted((r.to_dict() for r in results),
                             key=lambda d: d["instance_id"])
    report.errors = sorted(errors, key=lambda d: (d["instance_id"], d["message"]))
    report.findings = sorted(findings, key=lambda d: d["instance_id"])
    report.field_disagreements = _dedupe(report.field_disagreements)
    report.oracle_anomalies = _dedupe(report.oracle_anomalies)
    report.wall_time = time.perf_counter() - start
    return report


def fuzz_power_subadditivity(cfg: CampaignConfig) -> Report:
    """CIs must satisfy reg(I^n) <= n reg(I); random general ideals with
    reg(I^2) > 2 reg(I) are listed as findings without judgement."""
    return run_campaign(cfg, [Claim.POWER_SUBADD])


ALL_CLAIMS = tuple(Claim)
