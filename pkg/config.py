# config.py
import logging

from dotenv import dotenv_values

logger = logging.getLogger(__name__)

# Numeric evaluation defaults (EvalOptions)
DEFAULT_TOL = 1e-12
DEFAULT_MAX_L = 200
DEFAULT_POLE_EPS = 1e-8
DEFAULT_EM_ORDER = 12

# Requested tolerances below this are clamped; double precision cannot honour them
MIN_TOL = 1e-14

# Hurwitz terms whose argument falls this close to 1 are evaluated in regularized form
REGULARIZE_RADIUS = 1e-3

# Euler-Maclaurin search limits
EM_MAX_TERMS = 1 << 16
EM_MAX_ORDER = 60

# Reflection is used below this real part when the shift has a small denominator
REFLECTION_BELOW = -0.5
REFLECTION_MAX_DENOMINATOR = 12

# Dirichlet oracle
DIRICHLET_MARGIN = 0.25
DEFAULT_ORACLE_TERMS = 100000

# Richardson samples around a point
RESIDUE_EPS = 1e-3

# Sweeps used by the verification suite
DEFAULT_K_MAX = 25
NUMERIC_K_MAX = 6
NUMERIC_N_MAX = 4
SPECIAL_N_MAX = 10
VERIFY_SEED = 20240607
# Dirichlet agreement: 5 points per space and k, 50 over k = 2..6
VERIFY_POINTS = 5
HURWITZ_POINTS = 50
HURWITZ_EXACT_N_MAX = 20

# Batch evaluation
DEFAULT_WORKERS = 4

# Options that a --config file may set (key -> type)
CONFIG_KEYS = {
    "tol": float,
    "max_l": int,
    "pole_eps": float,
    "em_order": int,
    "k_max": int,
    "n_max": int,
    "format": str,
    "workers": int,
}

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def load_config_file(path: str) -> dict:
    """
    Read flag defaults from a key=value file.

    Args:
        path: Path to the config file

    Returns:
        dict: Option name -> typed value, for the keys listed in CONFIG_KEYS

    Raises:
        ValueError: If a known key holds a value of the wrong type
    """
    values = {}
    for key, raw in dotenv_values(path).items():
        name = key.strip().lower().replace("-", "_")
        if name not in CONFIG_KEYS:
            logger.warning(f"Ignoring unknown config key '{key}' in {path}")
            continue
        if raw is None:
            raise ValueError(f"Config key '{key}' in {path} has no value")
        try:
            values[name] = CONFIG_KEYS[name](raw.strip())
        except ValueError:
            raise ValueError(f"Config key '{key}' in {path} expects {CONFIG_KEYS[name].__name__}, got '{raw}'")
    return values
