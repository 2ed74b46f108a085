"""Exact decoupling and closed forms for simultaneous linear recurrences."""

from .decouple import (
    AugmentedMatrix,
    RegularRecurrence,
    augment,
    char_poly,
    decouple_affine,
    decouple_homogeneous,
    direct_affine_small,
)
from .errors import (
    DuplicateEquationError,
    LagError,
    MalformedRationalError,
    MissingInitError,
    ParseError,
    SimrecError,
    StepLimitError,
    StructuralConditionError,
    TrajectoryTooShortError,
    UndeclaredVariableError,
    UnsupportedCaseError,
    UnsupportedOrderError,
)
from .exact import Polynomial, Rational, format_rational, parse_rational, poly_arith, poly_eval, rat_arith, rat_pow
from .model import RecurrenceSystem, SumProfile, parse_system, render_system, sum_profile
from .oracle import Trajectory, check_invariant, check_regular, iterate
from .pairsolve import (
    ClosedFormPair,
    DifferenceForm,
    PairConstants,
    classify_pair,
    closed_form_pair_col,
    closed_form_pair_row,
    difference_closed_form,
)
from .triplesolve import (
    ClosedFormTriple,
    PairReduction,
    TripleConstants,
    WeightPair,
    closed_form_triple,
    detect_weights,
    reduce_to_pairs,
    replaced_row_system,
    solve_triple,
    triple_constants,
    triple_constants_equal_rows,
)

__all__ = [
    "AugmentedMatrix",
    "RegularRecurrence",
    "augment",
    "char_poly",
    "decouple_affine",
    "decouple_homogeneous",
    "direct_affine_small",
    "DuplicateEquationError",
    "LagError",
    "MalformedRationalError",
    "MissingInitError",
    "ParseError",
    "SimrecError",
    "StepLimitError",
    "StructuralConditionError",
    "TrajectoryTooShortError",
    "UndeclaredVariableError",
    "UnsupportedCaseError",
    "UnsupportedOrderError",
    "Polynomial",
    "Rational",
    "format_rational",
    "parse_rational",
    "poly_arith",
    "poly_eval",
    "rat_arith",
    "rat_pow",
    "RecurrenceSystem",
    "SumProfile",
    "parse_system",
    "render_system",
    "sum_profile",
    "Trajectory",
    "check_invariant",
    "check_regular",
    "iterate",
    "ClosedFormPair",
    "DifferenceForm",
    "PairConstants",
    "classify_pair",
    "closed_form_pair_col",
    "closed_form_pair_row",
    "difference_closed_form",
    "ClosedFormTriple",
    "PairReduction",
    "TripleConstants",
    "WeightPair",
    "closed_form_triple",
    "detect_weights",
    "reduce_to_pairs",
    "replaced_row_system",
    "solve_triple",
    "triple_constants",
    "triple_constants_equal_rows",
]

__version__ = "0.1.0"
