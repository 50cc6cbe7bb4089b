"""
Configuration constants for the quantum f-correlations toolkit
"""
import logging
import os

# Numerical Tolerances
# Double precision with total dimension <= 16
TOL_HERMITIAN = 1e-10
TOL_UNITARY = 1e-10
TOL_PSD = 1e-10  # eigenvalues in (-TOL_PSD, 0) are clipped to 0
TOL_TRACE = 1e-10
TOL_RECONSTRUCTION = 1e-9
TOL_DEGENERACY = 1e-12  # relative to the spectral radius
MAX_TOTAL_DIMENSION = 16

# Operator Monotone Function Evaluation
WYD_SERIES_RADIUS = 1e-4  # |t - 1| below this uses the Taylor branch
QVAR_SERIES_RADIUS = 1e-2
SYMMETRY_GRID = (1e-6, 1e6, 241)  # log-grid (min, max, points) for self-inversion checks
MONOTONICITY_PAIRS = 1000  # random 2x2 ordered pairs for the operator monotonicity sample

# Alternating Optimizer (general Q^f)
OPT_RESTARTS = 20
OPT_MAX_ITERS = 500
OPT_TOL = 1e-10

# Monotonicity Scan
VIOLATION_EPSILON = 1e-8  # q_out - q_in above this counts as a violation
CSV_MAX_ROWS = 10_000  # scan CSV is thinned by uniform stride unless --full
SCAN_CHUNK_SIZE = 2_000  # samples per worker task

# Thermal Module
FD_DELTA_SCALE = 1e-4  # delta = FD_DELTA_SCALE * max(1, ||O_B||)
QUADRATURE_NODES = 32  # Gauss-Legendre nodes on alpha in (0, 1)
KUBO_MORI_FLOOR = 1e-14
KUBO_MORI_WARN = 1e-12
MAX_CHAIN_SITES = 8

# Concurrency Settings
DEFAULT_WORKERS = 4


def _env_workers(name='QF_THREADS', default=DEFAULT_WORKERS):
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        logging.getLogger(__name__).warning(f"Ignoring {name}={raw!r} (not an integer); using {default} threads")
        return default


MAX_WORKERS = _env_workers()

# Reproducibility
DEFAULT_SEED = 20170101
FLOAT_DIGITS = 17  # significant digits in CSV/JSON artifacts

# Defaults for the CLI
DEFAULT_F_SPEC = 'wy'
DEFAULT_SCAN_SAMPLES = 100_000
DEFAULT_APPENDIX_TRIALS = 1_000

# File Paths
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
OUTPUT_DIR = os.path.join(BASE_DIR, 'output')
LOG_DIR = os.path.join(BASE_DIR, 'logs')
FIXTURES_DIR = os.path.join(BASE_DIR, 'fixtures')
USER_CONFIG_FILE = os.path.join(BASE_DIR, '.config.json')  # optional user overrides

# Logging
LOG_LEVEL = os.getenv('QF_LOG_LEVEL', 'INFO').upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
