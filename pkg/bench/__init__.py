"""
a1gm — Benchmark & CLI
Datasets (CSV and synthetic), the A1GM vs KL-WNMF harness, and the command line.
"""
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from .datasets import (  # noqa: E402
    Dataset,
    Provenance,
    gen_corner_missing,
    gen_grid_missing,
    load_csv,
    preprocess,
    save_csv,
)
from .compare import BenchReport, run_compare, trial_seeds  # noqa: E402
