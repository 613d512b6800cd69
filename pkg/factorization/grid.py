"""
A1GM — rank-1 missing-value NMF through grid-like masks.

Pipeline:
    1. expand the mask so its zeros form a product set S1×S2 (grid-like)
    2. permute rows/columns so the zeros sit in the bottom-right |S1|×|S2| block
    3. split into X (top-left), Y (bottom-left), Z (top-right) and apply the
       closed-form rank-1 NMMF with alpha = beta = 1
    4. concatenate (w, a) and (h, b) and undo the permutations

Everything is linear in the number of entries.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleMaskError, NonPositiveEntryError, ShapeMismatchError
from .matrix import MatrixTriple, Rank1Factors, as_dense, as_mask, masked_kl, outer, permute_rows_cols
from .nmmf import best_rank1_nmmf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSets:
    """Rows (S1) and columns (S2) that contain at least one missing entry."""
    S1: tuple[int, ...]
    S2: tuple[int, ...]


@dataclass(frozen=True)
class PermutationPair:
    """Row and column permutations; ``perm[k]`` is the source index of slot k."""
    perm1: np.ndarray
    perm2: np.ndarray

    def apply(self, M) -> np.ndarray:
        return permute_rows_cols(M, self.perm1, self.perm2)

    def inverse(self) -> "PermutationPair":
        return PermutationPair(np.argsort(self.perm1), np.argsort(self.perm2))

    def invert(self, M) -> np.ndarray:
        return self.inverse().apply(M)


@dataclass
class A1gmResult:
    c: np.ndarray                  # row factor, length I+N
    d: np.ndarray                  # column factor, length J+M
    increase_rate: float
    masked_cost: float             # against the original mask
    expanded_cost: float = 0.0     # against the grid-expanded mask
    n_missing: int = 0
    n_missing_expanded: int = 0
    grid: GridSets = field(default_factory=lambda: GridSets((), ()))
    triple: MatrixTriple | None = None     # permuted X, Y, Z blocks
    factors: Rank1Factors | None = None    # w, h, a, b in permuted order

    def reconstruction(self) -> np.ndarray:
        return outer(self.c, self.d)


def grid_sets(Phi) -> GridSets:
    Phi = as_mask(Phi, "Phi")
    missing = ~Phi
    S1 = np.flatnonzero(missing.any(axis=1))
    S2 = np.flatnonzero(missing.any(axis=0))
    return GridSets(tuple(int(i) for i in S1), tuple(int(j) for j in S2))


def _grid_mask(shape: tuple[int, int], G: GridSets) -> np.ndarray:
    mask = np.ones(shape, dtype=bool)
    mask[np.ix_(G.S1, G.S2)] = False
    return mask


def is_grid_like(Phi) -> bool:
    """True iff the zeros of Phi are exactly S1×S2."""
    Phi = as_mask(Phi, "Phi")
    return bool(np.array_equal(Phi, _grid_mask(Phi.shape, grid_sets(Phi))))


def expand_to_grid(Phi) -> tuple[np.ndarray, float]:
    """Add missing entries until the mask is grid-like.

    Returns the expanded mask and the increase rate |S1|·|S2| / (#missing),
    which is 1 for a fully observed mask.

    Raises:
        InfeasibleMaskError: every row or every column holds a missing value, so
            no entry of the top-left block would survive.
    """
    Phi = as_mask(Phi, "Phi")
    rows, cols = Phi.shape
    G = grid_sets(Phi)
    n_missing = int((~Phi).sum())
    if n_missing == 0:
        return Phi.copy(), 1.0
    if len(G.S1) == rows or len(G.S2) == cols:
        raise InfeasibleMaskError(
            f"too many missing values: {len(G.S1)}/{rows} rows and "
            f"{len(G.S2)}/{cols} columns contain a missing entry"
        )
    expanded = _grid_mask(Phi.shape, G)
    rate = len(G.S1) * len(G.S2) / n_missing
    logger.debug("grid expansion: %d -> %d missing (rate %.6g)", n_missing, len(G.S1) * len(G.S2), rate)
    return expanded, rate


def _swap_plan(S: tuple[int, ...], n: int) -> np.ndarray:
    perm = np.arange(n)
    block = set(range(n - len(S), n))
    chosen = set(S)
    outside = sorted(chosen - block)          # S ∩ Bᶜ
    vacant = sorted(block - chosen)           # Sᶜ ∩ B
    for i, j in zip(outside, vacant):
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def build_permutations(G: GridSets, rows: int, cols: int) -> PermutationPair:
    """Transpositions that move rows S1 and columns S2 to the trailing block.

    The kth smallest element of S∩Bᶜ is swapped with the kth smallest of Sᶜ∩B,
    so each permutation is its own inverse.
    """
    if len(G.S1) > rows or len(G.S2) > cols:
        raise ShapeMismatchError("grid sets larger than the matrix")
    return PermutationPair(_swap_plan(G.S1, rows), _swap_plan(G.S2, cols))


def a1gm(Phi, T) -> A1gmResult:
    """Rank-1 NMF of T with missing entries Phi == 0, in closed form.

    Optimal whenever Phi is grid-like; otherwise optimal for the expanded mask.
    Values of T at missing positions are never read.

    Raises:
        InfeasibleMaskError: from the grid expansion.
        NonPositiveEntryError: an observed entry of T is <= 0.
    """
    Phi = as_mask(Phi, "Phi")
    T = as_dense(T, "T")
    if Phi.shape != T.shape:
        raise ShapeMismatchError(f"mask shape {Phi.shape} != matrix shape {T.shape}")
    bad = Phi & ~(T > 0)
    if bad.any():
        idx = tuple(np.argwhere(bad)[0])
        raise NonPositiveEntryError("T (observed entries)", idx, T[idx])

    expanded, rate = expand_to_grid(Phi)
    G = grid_sets(Phi)
    rows, cols = T.shape
    perms = build_permutations(G, rows, cols)

    # masked entries are overwritten so that nothing downstream reads them
    P = perms.apply(np.where(Phi, T, 1.0))
    I, J = rows - len(G.S1), cols - len(G.S2)
    triple = MatrixTriple(X=P[:I, :J], Y=P[I:, :J], Z=P[:I, J:])
    F = best_rank1_nmmf(triple, 1.0, 1.0)

    # perm1 and perm2 are involutions, so indexing by them undoes the permutation
    c = np.concatenate([F.w, F.a])[perms.perm1]
    d = np.concatenate([F.h, F.b])[perms.perm2]
    recon = outer(c, d)
    result = A1gmResult(
        c=c,
        d=d,
        increase_rate=rate,
        masked_cost=masked_kl(Phi, T, recon),
        expanded_cost=masked_kl(expanded, T, recon),
        n_missing=int((~Phi).sum()),
        n_missing_expanded=int((~expanded).sum()),
        grid=G,
        triple=triple,
        factors=F,
    )
    logger.info(
        "a1gm %dx%d: blocks I=%d J=%d N=%d M=%d, increase rate %.6g, cost %.6g",
        rows, cols, I, J, len(G.S1), len(G.S2), rate, result.masked_cost,
    )
    return result
