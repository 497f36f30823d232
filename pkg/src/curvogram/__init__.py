"""Curvogram: a solver toolkit for curved nonograms."""

from .model import (
    EMPTY,
    FILLED,
    UNSETTLED,
    ClassicNonogram,
    Clues,
    Curve,
    CurveSide,
    Difficulty,
    LineProblem,
    Puzzle,
    classic_to_puzzle,
    classify_curve,
    classify_line,
    classify_puzzle,
    fix_consistent,
    is_refinement,
)
from .engine import (
    DecompositionTree,
    InconsistentLineError,
    NestingError,
    build_decomposition,
    check_consistency,
    pad_line,
    settle_basic_fast,
    settle_naive,
    settle_topdown,
    translate_description,
)
from .oracle import (
    EnumerationLimitError,
    oracle_line_fixes,
    oracle_puzzle_solutions,
    oracle_settle,
)
from .solver import LineMethod, SolveReport, Verdict, full_settle, is_simple
from .reduction import (
    Part,
    ReductionOutput,
    pad_to_w_eq_h_plus_1,
    reduce_classic,
    verify_reduction,
)
from .formats import (
    ParseError,
    parse_classic,
    parse_puzzle,
    serialize_classic,
    serialize_puzzle,
)

__version__ = "0.1.0"
