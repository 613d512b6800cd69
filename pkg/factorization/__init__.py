"""
a1gm — Factorization Core
Matrix primitives, the closed-form rank-1 NMMF, and the A1GM pipeline.
"""
import sys
from pathlib import Path

# Add project root to path so we can import constants
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from .errors import (  # noqa: E402
    A1GMError,
    DivergenceUndefinedError,
    InfeasibleMaskError,
    InputFormatError,
    NonPositiveEntryError,
    NumericFailureError,
    ShapeMismatchError,
)
from .matrix import (  # noqa: E402
    MatrixTriple,
    Rank1Factors,
    as_dense,
    as_mask,
    col_sums,
    kl_div,
    masked_kl,
    nmmf_cost,
    outer,
    permute_rows_cols,
    row_sums,
    total_sum,
)
from .nmmf import best_rank1_nmf, best_rank1_nmmf, reconstruct  # noqa: E402
from .grid import (  # noqa: E402
    A1gmResult,
    GridSets,
    PermutationPair,
    a1gm,
    build_permutations,
    expand_to_grid,
    grid_sets,
    is_grid_like,
)
