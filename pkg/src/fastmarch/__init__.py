"""2-D eikonal solver: fast marching with interchangeable priority queues.

The exact heap queue gives the classic method; the untidy bucket queue
trades a bounded acceptance-order error for O(1) queue operations.  The
verify module checks the band-width, comparison-principle, and
error-bound properties against an independent sweeping oracle, and the
experiments module reproduces the error and scaling studies as CSV.
"""

from .grid import (
    INF,
    BoundarySet,
    GridFunction,
    GridSpec,
    SpeedField,
    make_speed_field,
    neighbor_values,
    read_speed_csv,
    speed_field_from_array,
    write_grid_csv,
    write_grid_raw,
)
from .local_solver import hopf_lax, residual, residual_grid, solve_local
from .marcher import (
    FAR,
    KNOWN,
    TRIAL,
    MarchState,
    RunMetrics,
    initialize,
    march,
    narrow_band_range,
)
from .queue_exact import ExactQueue
from .queue_untidy import UntidyQueue
from .verify import (
    ErrorReport,
    HypothesisError,
    VerificationError,
    check_band_trace,
    check_comparison,
    check_error_bound,
    sweep_oracle,
)
from .experiments import (
    ExperimentConfig,
    SpeedCatalogEntry,
    constant_speed,
    inv_uniform_speed,
    run_error_study,
    run_scaling_study,
    sin_ratio_speed,
    speed_entry,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "BoundarySet",
    "GridFunction",
    "GridSpec",
    "SpeedField",
    "make_speed_field",
    "neighbor_values",
    "read_speed_csv",
    "speed_field_from_array",
    "write_grid_csv",
    "write_grid_raw",
    "hopf_lax",
    "residual",
    "residual_grid",
    "solve_local",
    "FAR",
    "TRIAL",
    "KNOWN",
    "MarchState",
    "RunMetrics",
    "initialize",
    "march",
    "narrow_band_range",
    "ExactQueue",
    "UntidyQueue",
    "ErrorReport",
    "HypothesisError",
    "VerificationError",
    "check_band_trace",
    "check_comparison",
    "check_error_bound",
    "sweep_oracle",
    "ExperimentConfig",
    "SpeedCatalogEntry",
    "constant_speed",
    "inv_uniform_speed",
    "run_error_study",
    "run_scaling_study",
    "sin_ratio_speed",
    "speed_entry",
]
