"""Multigraded Betti numbers and regularity of monomial ideals.

For a monomial ideal I and a multidegree a, the upper Koszul complex
K^a(I) is the simplicial complex of squarefree b with x^(a-b) in I, and

    beta_{i,a}(I) = dim H~_{i-1}(K^a(I); k).

Nonzero Betti numbers live on the lcm lattice of the minimal generators,
so the oracle only visits those degrees.  Regularity is read off the table
as ``max{|a| - i : beta_{i,a} != 0}``; this is reg(I), which is
reg(S/I) + 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import ComplexityGuard, ZeroIdealError
from .monomial import Monomial, MonomialIdeal

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "rationals" or "prime"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise ValueError("the rationals take no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``q``/``QQ`` or ``p:<prime>``."""
        t = text.strip()
        if t.lower() in ("q", "qq", "rationals"):
            return cls.rationals()
        if t.lower().startswith("p:"):
            try:
                p = int(t[2:])
            except ValueError:
                raise ValueError(f"bad prime in field spec {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field spec {text!r}; use q or p:<prime>")

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rationals" else self.p

    def __str__(self):
        return "q" if self.kind == "rationals" else f"p:{self.p}"


DEFAULT_FIELD = FieldSpec.prime(DEFAULT_PRIME)


@dataclass(frozen=True)
class OracleGuard:
    max_gens: int = 16
    max_vars: int = 12

    def check(self, I: MonomialIdeal) -> None:
        if I.num_gens > self.max_gens:
            raise ComplexityGuard(
                f"{I.num_gens} generators exceeds the guard of {self.max_gens}",
                gens=I.num_gens,
            )
        if I.num_vars > self.max_vars:
            raise ComplexityGuard(
                f"{I.num_vars} variables exceeds the guard of {self.max_vars}",
                num_vars=I.num_vars,
            )


DEFAULT_GUARD = OracleGuard()


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: frozenset[int]
    faces: frozenset[frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        faces = frozenset(frozenset(f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        for f in faces:
            if not f <= self.vertices:
                raise ValueError(f"face {set(f)} not on the vertex set")
            for v in f:
                if f - {v} not in faces:
                    raise ValueError(f"not closed under subsets: {set(f)}")

    @classmethod
    def from_facets(cls, vertices: Iterable[int], facets: Iterable[Iterable[int]]):
        faces = set()
        for facet in facets:
            facet = tuple(facet)
            for r in range(len(facet) + 1):
                faces.update(frozenset(c) for c in combinations(facet, r))
        return cls(frozenset(vertices), frozenset(faces))

    def is_void(self) -> bool:
        return not self.faces

    def faces_of_size(self, size: int) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == size)


def _boundary_rank(rows_faces, cols_faces, char: int) -> int:
    index = {f: r for r, f in enumerate(rows_faces)}
    mat = [[0] * len(cols_faces) for _ in rows_faces]
    for c, face in enumerate(cols_faces):
        for j in range(len(face)):
            mat[index[face[:j] + face[j + 1:]]][c] = -1 if j % 2 else 1
    if char:
        return kernels.rank_mod_p(mat, char)
    return kernels.rank_integer(mat)


def reduced_homology_dims(C: SimplicialComplex, F: FieldSpec = DEFAULT_FIELD) -> tuple[int, ...]:
    """Reduced homology dimensions of ``C`` over ``F``.

    Entry ``d + 1`` of the result is dim H~_d for d = -1, ..., |V| - 1.
    """
    n = len(C.vertices)
    by_size = [C.faces_of_size(s) for s in range(n + 1)]
    ranks = [0] * (n + 2)
    for s in range(1, n + 1):
        if by_size[s] and by_size[s - 1]:
            ranks[s] = _boundary_rank(by_size[s - 1], by_size[s], F.characteristic)
    return tuple(len(by_size[s]) - ranks[s] - ranks[s + 1] for s in range(n + 1))


def euler_characteristic(C: SimplicialComplex) -> int:
    """Reduced Euler characteristic, sum of (-1)^dim over faces (empty face included)."""
    return sum((-1) ** (len(f) - 1) for f in C.faces)


def _require_proper_nonzero(I: MonomialIdeal) -> None:
    if I.is_zero():
        raise ZeroIdealError("the zero ideal has no Betti table")


def lcm_lattice_degrees(I: MonomialIdeal, guard: OracleGuard = DEFAULT_GUARD) -> set[tuple[int, ...]]:
    _require_proper_nonzero(I)
    guard.check(I)
    return set(kernels.lcm_lattice(I.min_gens))


def upper_koszul(I: MonomialIdeal, a: Iterable[int]) -> SimplicialComplex:
    a = tuple(a)
    if len(a) != I.num_vars or any(e < 0 for e in a):
        raise ValueError(f"bad multidegree {a}")
    verts = [i for i, e in enumerate(a) if e >= 1]
    faces = set()
    for r in range(len(verts) + 1):
        for b in combinations(verts, r):
            m = list(a)
            for i in b:
                m[i] -= 1
            if I.contains(Monomial(m)):
                faces.add(frozenset(b))
    return SimplicialComplex(frozenset(verts), frozenset(faces))


@dataclass(frozen=True)
class BettiTable:
    """Nonzero multigraded Betti numbers, keyed by ``(i, a)``."""

    entries: Mapping[tuple[int, tuple[int, ...]], int] = field(default_factory=dict)

    def items(self) -> list[tuple[int, tuple[int, ...], int]]:
        return sorted((i, a, d) for (i, a), d in self.entries.items())

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __len__(self):
        return len(self.entries)

    def regularity(self) -> int:
        return max(sum(a) - i for (i, a) in self.entries)

    def projective_dimension(self) -> int:
        return max(i for (i, _a) in self.entries)

    def total(self, i: int) -> int:
        return sum(d for (j, _a), d in self.entries.items() if j == i)

    def graded(self) -> dict[tuple[int, int], int]:
        """Coarsen to (i, total degree) -> beta_{i,j}."""
        out: dict[tuple[int, int], int] = {}
        for (i, a), d in self.entries.items():
            key = (i, sum(a))
            out[key] = out.get(key, 0) + d
        return out

    def format(self, names=None) -> str:
        lines = []
        for i, a, d in self.items():
            deg = "(" + ",".join(map(str, a)) + ")"
            if names is not None:
                deg += "  " + Monomial(a).format(names)
            lines.append(f"{i}\t{deg}\t{d}")
        return "\n".join(lines)

    def to_json(self) -> list[dict]:
        return [{"i": i, "degree": list(a), "dim": d} for i, a, d in self.items()]


def betti_tables(
    I: MonomialIdeal,
    fields: Sequence[FieldSpec],
    guard: OracleGuard = DEFAULT_GUARD,
) -> tuple[BettiTable, ...]:
    """Betti tables of ``I`` over several fields in one pass.

    The lcm lattice and each upper Koszul complex are built once; only the
    rank computations are repeated per field.
    """
    lattice = sorted(lcm_lattice_degrees(I, guard))
    gens = [tuple(g) for g in I.min_gens]
    chars = [F.characteristic for F in fields]
    entries = [{} for _ in fields]
    for a, per_field in zip(lattice, kernels.koszul_batch(gens, lattice, chars)):
        for table, dims in zip(entries, per_field):
            for i, d in enumerate(dims):
                if d:
                    table[(i, a)] = d
    return tuple(BettiTable(e) for e in entries)


def betti_table(
    I: MonomialIdeal,
    F: FieldSpec = DEFAULT_FIELD,
    guard: OracleGuard = DEFAULT_GUARD,
    *,
    method: str = "kernel",
) -> BettiTable:
    """Exact multigraded Betti numbers of ``I`` over ``F``.

    ``method="reference"`` builds every upper Koszul complex explicitly via
    :func:`upper_koszul`; the default goes through the fused kernel.
    """
    if method == "kernel":
        return betti_tables(I, [F], guard)[0]
    if method != "reference":
        raise ValueError(f"unknown method {method!r}")
    entries = {}
    for a in sorted(lcm_lattice_degrees(I, guard)):
        for i, d in enumerate(reduced_homology_dims(upper_koszul(I, a), F)):
            if d:
                entries[(i, a)] = d
    return BettiTable(entries)


def regularity(I: MonomialIdeal, F: FieldSpec = DEFAULT_FIELD, guard: OracleGuard = DEFAULT_GUARD) -> int:
    lattice = sorted(lcm_lattice_degrees(I, guard), key=sum, reverse=True)
    gens = [tuple(g) for g in I.min_gens]
    char = F.characteristic
    # beta_{0,g} = 1 for every minimal generator
    best = max(g.degree for g in I.min_gens)
    for a in lattice:
        top = sum(a)
        if top - 1 <= best:
            # degree-a contributions with i >= 1 cannot beat best
            break
        dims = kernels.koszul_homology(gens, a, char)
        for i, d in enumerate(dims):
            if d and i >= 1:
                best = max(best, top - i)
                break
    return best


def projective_dimension(I: MonomialIdeal, F: FieldSpec = DEFAULT_FIELD, guard: OracleGuard = DEFAULT_GUARD) -> int:
    return betti_table(I, F, guard).projective_dimension()
