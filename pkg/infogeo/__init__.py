"""
a1gm — Information-Geometry Oracle
Log-linear model of an NMMF triple on its L-shaped poset; used to verify solver output.
"""
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from .poset import (  # noqa: E402
    OracleReport,
    PosetModel,
    check_simultaneous_rank1,
    conservation_check,
    eta_of,
    model_from_triple,
    one_body_eta,
    p_from_theta,
    theta_of,
)
