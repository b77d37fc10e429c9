"""rectvar - p-variation of two-parameter functions on rectangles.

Exact grid-like and controlled p-variation, Young-type maximal inequalities and the
fractional Brownian motion covariance, each with checkers that record every inequality
they test.

Example usage:
    >>> import numpy as np
    >>> import rectvar as rv
    >>> f = rv.GridFunction.on_integer_grid(np.array([[0.0, 0.0], [0.0, 1.0]]))
    >>> rv.vp_2d_exact(f, 1.0).value
    1.0
    >>> rv.count_rect_partitions(3, 3)
    322
"""

__version__ = "0.1.0"

# Import public API
from rectvar.api import Command, RunConfig, run, selftest
from rectvar.config import get_exact_cap, get_partition_cap, set_exact_cap, set_partition_cap
from rectvar.controls import (
    ControlTable,
    almost_subadd_check,
    check_superadditive,
    control_from_cpvar,
)
from rectvar.fbm import (
    HurstKernel,
    fbm_cov,
    fbm_rect_cov,
    fbm_variation_scan,
    neg_correlation_check,
    superadditivity_counterexample,
)
from rectvar.geometry import (
    Dissection,
    Rect,
    RectPartition,
    count_rect_partitions,
    enumerate_gridlike,
    enumerate_rect_partitions,
    refine_to_gridlike,
    validate_partition,
)
from rectvar.gridfunc import GridFunction, build_dual_step_function, rect_increment
from rectvar.gridio import load_grid_function, save_grid_function
from rectvar.report import CheckRecord, InequalityReport, Report
from rectvar.variation import (
    VariationResult,
    controlled_pvar_exact,
    pvar_1d,
    sandwich_constant,
    verify_sandwich,
    vp_2d_alternating,
    vp_2d_exact,
)
from rectvar.young import (
    ExponentTriple,
    crucial_lemma_check,
    discrete_integral_1d,
    discrete_integral_2d,
    verify_young_1d,
    verify_yt_2d,
    yt_bound_2d,
    zeta,
)

__all__ = [
    # Geometry
    "Rect",
    "Dissection",
    "RectPartition",
    "validate_partition",
    "enumerate_gridlike",
    "enumerate_rect_partitions",
    "count_rect_partitions",
    "refine_to_gridlike",
    # Grid functions
    "GridFunction",
    "rect_increment",
    "build_dual_step_function",
    "load_grid_function",
    "save_grid_function",
    # Variation
    "VariationResult",
    "pvar_1d",
    "vp_2d_exact",
    "vp_2d_alternating",
    "controlled_pvar_exact",
    "sandwich_constant",
    "verify_sandwich",
    # Controls
    "ControlTable",
    "control_from_cpvar",
    "check_superadditive",
    "almost_subadd_check",
    # Young
    "zeta",
    "ExponentTriple",
    "yt_bound_2d",
    "discrete_integral_1d",
    "discrete_integral_2d",
    "verify_young_1d",
    "verify_yt_2d",
    "crucial_lemma_check",
    # fBM
    "HurstKernel",
    "fbm_cov",
    "fbm_rect_cov",
    "neg_correlation_check",
    "fbm_variation_scan",
    "superadditivity_counterexample",
    # Reports and runs
    "CheckRecord",
    "InequalityReport",
    "Report",
    "Command",
    "RunConfig",
    "run",
    "selftest",
    # Config
    "get_partition_cap",
    "set_partition_cap",
    "get_exact_cap",
    "set_exact_cap",
]
