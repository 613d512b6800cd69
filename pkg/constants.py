"""
a1gm — Shared Constants
All modules import from here. Single source of truth.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# === Project Paths ===
PROJECT_ROOT = Path(__file__).parent

# .env overrides must be in os.environ before the lookups below
load_dotenv(PROJECT_ROOT / ".env")
RESULTS_DIR = Path(os.environ.get(
    "A1GM_RESULTS_DIR",
    str(PROJECT_ROOT / "results"),
))
LOG_LEVEL = os.environ.get("A1GM_LOG_LEVEL", "WARNING")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# === Numerics ===
CLAMP_EPS = 1e-12              # epsilon-clamp mode of the closed-form solver
DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 1.0

# === Iterative baselines (mirrored in baselines/config.json) ===
MAX_ITER = 200
TOL = 1e-4
CHECK_EVERY = 10
SEED = 0
EPS_GUARD = 1e-12

# === Oracle tolerances ===
THETA_TOL = 1e-8
ETA_TOL = 1e-8
CONSERVATION_TOL = 1e-10

# === CSV ingestion ===
CSV_DELIMITER = ","
MISSING_TOKENS = frozenset({"", "NA", "NaN", "?"})

# === Synthetic data ===
SYNTHETIC_FLOOR = 1e-6         # added to uniform(0, 1) draws so entries stay positive
SYNTHETIC_SIZES = [500, 1000, 2000]
GRID_MISSING_FRAC = 0.05       # 5 percent missing in the grid-like sweep
CORNER_MISSING_FRAC = 0.05

# === Benchmark ===
TRIALS = 5

# === CLI exit codes ===
EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_INFEASIBLE_MASK = 3
EXIT_NUMERIC_FAILURE = 4
