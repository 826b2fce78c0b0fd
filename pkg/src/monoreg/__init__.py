"""Exact monomial ideals and Castelnuovo-Mumford regularity."""
from .betti import (
    BettiTable,
    FieldSpec,
    OracleGuard,
    SimplicialComplex,
    betti_table,
    betti_tables,
    lcm_lattice_degrees,
    projective_dimension,
    reduced_homology_dims,
    regularity,
    upper_koszul,
)
from .errors import (
    ColonIsUnit,
    ComplexityGuard,
    ContextMismatch,
    IdealSyntaxError,
    MonoregError,
    PreconditionError,
    UnitIdealError,
    UnknownVariable,
    ZeroIdealError,
)
from .idealfile import format_ideal, parse_ideal
from .monomial import (
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
    product,
    scale,
    sum_ideals,
)

__version__ = "0.1.0"
