"""
Toolkit configuration — Environment variables, constants, and paths.

All settings centralized in a single module.
No business logic here: static data only.
"""

import os
import sys
from pathlib import Path

from dotenv import load_dotenv

# =============================================================================
# PATHS
# =============================================================================
# Navigate from app/qmc/config.py -> app/qmc/ -> app/ -> root/
PROJECT_DIR = Path(__file__).resolve().parent.parent.parent

DATA_DIR = PROJECT_DIR / "data"
DATA_DIR.mkdir(exist_ok=True)

LOG_DIR = PROJECT_DIR / "logs"

RUNS_DB_PATH = DATA_DIR / "runs.yaml"

# =============================================================================
# ENVIRONMENT VARIABLES
# =============================================================================
load_dotenv(PROJECT_DIR / ".env")

try:
    THREADS: int = int(os.getenv("QMC_THREADS", "1"))
except ValueError:
    sys.exit("ERROR: QMC_THREADS invalid. Use a positive integer.")

if THREADS < 1:
    sys.exit("ERROR: QMC_THREADS must be at least 1.")

RECORD_RUNS: bool = os.getenv("QMC_RECORD_RUNS", "1").strip() not in {"0", "false", "no", ""}

# =============================================================================
# CONSTANTS
# =============================================================================
DEFAULT_PRECISION = 6
MIN_PRECISION = 6
MAX_PRECISION = 50
EMBEDDING_DIGITS = 30  # Exact field values are compared/sorted at this many digits
EXACT_1D_LIMIT = 512  # Largest N for the fully exact 1-D discrepancy path
MAX_STAR_DIMENSION = 3
STAR_GRID_BUDGET = 2**12 * 2**12 * 4  # Max (anchored boxes x points) for multi-D star discrepancy
DEFAULT_SUBGRID = 8  # Sub-grid density for approximate cell extrema
GRID_MULTIPLIER = 3  # Level n splits each side into GRID_MULTIPLIER * 2^n cells
KF_MAX_BRANCH = 4096  # Kakutani-Fibonacci branch search gives up beyond this index
KRONECKER_DIGITS = 40  # Working precision for {n theta}
DEFAULT_QUADRATURE_POINTS = 10_000
MAX_BACKUPS_KEPT = 5

# =============================================================================
# FAMILIES
# =============================================================================
SEQUENCE_FAMILIES: dict[str, str] = {
    "vdc": "van der Corput (radical inverse)",
    "halton": "Halton",
    "hammersley": "Hammersley point set",
    "kronecker": "Kronecker",
    "ls": "LS-sequence",
    "ls-vdc": "LS point set a la van der Corput",
    "ls-halton": "LS-sequence a la Halton",
    "beta-halton": "beta-adic Halton",
    "kf-orbit": "Kakutani-Fibonacci orbit",
}

INTEGRANDS: set[str] = {"sin-sum", "product", "ftd"}
