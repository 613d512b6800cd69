"""
a1gm — Iterative Baselines
KL-WNMF multiplicative updates and the em-algorithm, used as references.
"""
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from .config import IterativeConfig, IterativeResult, load_config  # noqa: E402
from .wnmf import relative_error, wnmf_rank1  # noqa: E402
from .em import em_rank1  # noqa: E402
