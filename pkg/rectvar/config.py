"""Configuration management for rectvar."""
import os

from rectvar.errors import ConfigError

# Exact search caps
DEFAULT_PARTITION_CAP = 16  # cells per rectangulation search
DEFAULT_EXACT_CAP = 12  # interior grid points per axis for exact V_p

# Young checks: exhaustive below these sizes, sampled above
YOUNG_EXHAUSTIVE_POINTS = 12
YOUNG_PAIR_LIMIT = 2**16
YOUNG_SAMPLES = 2000

# Coordinate-ascent starts for V_p above the exact cap
HEURISTIC_RANDOM_STARTS = 8  # seeded random starts per axis
HEURISTIC_PAIR_START_LIMIT = 24  # interior points up to which all two-point starts are tried

# Numerical tolerances
TIE_TOLERANCE = 1e-12
CHECK_TOLERANCE = 1e-12
ADDITIVITY_TOLERANCE = 1e-10

# Environment variable overrides
PARTITION_CAP_ENV_VAR = "RECTVAR_PARTITION_CAP"
EXACT_CAP_ENV_VAR = "RECTVAR_EXACT_CAP"


def _read_cap(env_var: str, default: int) -> int:
    raw = os.environ.get(env_var)
    if raw is None or raw.strip() == "":
        return default
    try:
        cap = int(raw)
    except ValueError as e:
        raise ConfigError(f"{env_var} must be an integer, got {raw!r}") from e
    if cap <= 0:
        raise ConfigError(f"{env_var} must be positive, got {cap}")
    return cap


def get_partition_cap() -> int:
    """Get the maximum number of cells for rectangulation searches.

    Priority:
    1. Environment variable RECTVAR_PARTITION_CAP
    2. Default: 16 cells (4×4)

    Returns:
        int: The cell cap
    """
    return _read_cap(PARTITION_CAP_ENV_VAR, DEFAULT_PARTITION_CAP)


def set_partition_cap(cap: int) -> None:
    """Set the rectangulation cell cap for this process.

    Args:
        cap: Positive number of cells
    """
    if cap <= 0:
        raise ConfigError(f"partition cap must be positive, got {cap}")
    os.environ[PARTITION_CAP_ENV_VAR] = str(int(cap))


def get_exact_cap() -> int:
    """Get the maximum number of interior grid points per axis for exact V_p.

    Priority:
    1. Environment variable RECTVAR_EXACT_CAP
    2. Default: 12 points per axis

    Returns:
        int: The per-axis cap
    """
    return _read_cap(EXACT_CAP_ENV_VAR, DEFAULT_EXACT_CAP)


def set_exact_cap(cap: int) -> None:
    """Set the exact V_p per-axis cap for this process.

    Args:
        cap: Positive number of interior points
    """
    if cap <= 0:
        raise ConfigError(f"exact cap must be positive, got {cap}")
    os.environ[EXACT_CAP_ENV_VAR] = str(int(cap))


_check_tolerance = CHECK_TOLERANCE


def get_check_tolerance() -> float:
    """Relative tolerance used when deciding whether an inequality holds."""
    return _check_tolerance


def set_check_tolerance(tol: float) -> None:
    """Override the inequality tolerance for this process.

    Args:
        tol: Relative tolerance, 0 <= tol < 1
    """
    global _check_tolerance
    if not 0 <= tol < 1:
        raise ConfigError(f"tolerance must lie in [0, 1), got {tol}")
    _check_tolerance = float(tol)
