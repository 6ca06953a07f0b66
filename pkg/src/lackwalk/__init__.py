"""Search by a self-loop-weighted (lackadaisical) coined quantum walk on the 2D torus.

Four layers:

* :mod:`lackwalk.core` -- state vector, coin, flip-flop shift, both oracles;
* :mod:`lackwalk.simulate` -- evolution loop, success series, first peak;
* :mod:`lackwalk.spectral` -- dense operators, spectrum classes, framework check;
* :mod:`lackwalk.sweep` / :mod:`lackwalk.cli` -- experiment harness and CLI.
"""

from .core import (
    Direction,
    GridGeometry,
    Oracle,
    WalkConfig,
    WalkerState,
    apply_coin,
    apply_oracle_grover,
    apply_oracle_skw,
    apply_shift,
    build_start_state,
    coin_vector,
    shift_permutation,
    walk_step,
)
from .errors import (
    DivergentSum,
    GridTooLarge,
    InsufficientData,
    LackwalkError,
    NoPeakFound,
    NotOrthogonal,
    NotReflection,
)
from .simulate import PeakResult, SuccessSeries, auto_peak, find_first_peak, run_series
from .spectral import (
    EigenClass,
    FrameworkReport,
    GoodStateExpansion,
    analyze_search,
    build_oracle_factor,
    build_step_matrix,
    build_walk_matrix,
    check_framework_fit,
    compute_alpha,
    compute_overlap_estimates,
    eigendecompose,
    expand_good_state,
)
from .sweep import (
    FitResult,
    SweepRow,
    SweepSpec,
    emit_series_csv,
    emit_sweep_csv,
    fit_runtime,
    parse_series_csv,
    parse_sweep_csv,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "Direction",
    "GridGeometry",
    "Oracle",
    "WalkConfig",
    "WalkerState",
    "apply_coin",
    "apply_oracle_grover",
    "apply_oracle_skw",
    "apply_shift",
    "build_start_state",
    "coin_vector",
    "shift_permutation",
    "walk_step",
    "PeakResult",
    "SuccessSeries",
    "auto_peak",
    "find_first_peak",
    "run_series",
    "EigenClass",
    "FrameworkReport",
    "GoodStateExpansion",
    "analyze_search",
    "build_oracle_factor",
    "build_step_matrix",
    "build_walk_matrix",
    "check_framework_fit",
    "compute_alpha",
    "compute_overlap_estimates",
    "eigendecompose",
    "expand_good_state",
    "FitResult",
    "SweepRow",
    "SweepSpec",
    "emit_series_csv",
    "emit_sweep_csv",
    "fit_runtime",
    "parse_series_csv",
    "parse_sweep_csv",
    "run_sweep",
    "LackwalkError",
    "NoPeakFound",
    "GridTooLarge",
    "NotOrthogonal",
    "NotReflection",
    "DivergentSum",
    "InsufficientData",
    "__version__",
]
