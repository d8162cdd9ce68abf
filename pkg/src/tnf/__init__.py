"""Two-place functions generated by strictly increasing functions and
t-norm/t-subnorm expressions, with structural associativity verification."""

from .classify import Classification, classify
from .generated import Gap, GapSystem, GeneratedT, gap_system
from .intervals import Component, IntervalSet
from .monotone import (
    AccumulationSets,
    Exponential,
    Linear,
    Piece,
    PiecewiseIncreasingFn,
    acc_sets,
    open_hull,
)
from .oracle import GridSpec, compare_closed_form, grid_assoc_search, grid_for
from .tnorms import (
    CLOSED_SQUARE,
    HALF_OPEN,
    LUKASIEWICZ,
    MIN,
    NILPOTENT_MIN,
    PRODUCT,
    ZERO,
    ForceNeutral,
    OrdinalSum,
    ScaledSubnorm,
    Summand,
    TNormExpr,
    bar_lift,
    summand_views,
)
from .verify import (
    CheckOptions,
    Verdict,
    Witness,
    check_generated_associativity,
    check_left_neutrality,
    check_minimum,
    check_ordinal_associativity,
    check_subnorm_associativity,
    check_tnorm,
    decompose,
    obstruction_slice,
)

__version__ = "0.1.0"
