"""
Closed-form best rank-1 NMMF.

For positive X (I×J), Y (N×J), Z (I×M) and weights alpha, beta >= 0 the
minimizer of D(X, w⊗h) + alpha·D(Y, a⊗h) + beta·D(Z, w⊗b) is

    w_i = √S(X) / (S(X) + beta·S(Z)) · (Σ_j X_ij + beta·Σ_m Z_im)
    h_j = √S(X) / (S(X) + alpha·S(Y)) · (Σ_i X_ij + alpha·Σ_n Y_nj)
    a_n = Σ_j Y_nj / √S(X)
    b_m = Σ_i Z_im / √S(X)

One pass over the data, O(IJ + NJ + IM).
"""
from __future__ import annotations

import logging
import math

import numpy as np

from constants import CLAMP_EPS, DEFAULT_ALPHA, DEFAULT_BETA
from .errors import NonPositiveEntryError, NumericFailureError
from .matrix import MatrixTriple, Rank1Factors, col_sums, outer, row_sums

logger = logging.getLogger(__name__)


def _require_positive(block: str, M: np.ndarray, allow_zeros: bool = False) -> None:
    bad = (M < 0) if allow_zeros else (M <= 0)
    bad |= np.isnan(M)
    if bad.any():
        idx = tuple(np.argwhere(bad)[0])
        raise NonPositiveEntryError(block, idx, M[idx])


def _clamp(M: np.ndarray, eps: float) -> np.ndarray:
    return np.where(M < eps, eps, M)


def best_rank1_nmmf(
    T: MatrixTriple,
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
    *,
    clamp_eps: float | None = None,
    allow_zeros: bool = False,
) -> Rank1Factors:
    """Best rank-1 NMMF of a triple (global minimizer of the NMMF cost).

    Args:
        T: the (X, Y, Z) triple; Y and Z may be empty.
        alpha, beta: block weights, both >= 0.
        clamp_eps: if given, entries below it are replaced by it before solving
            (``True`` selects the default ``CLAMP_EPS``).
        allow_zeros: accept zero entries (still non-negative). The formulas stay
            well defined; used by the em-algorithm's m-step.

    Raises:
        NonPositiveEntryError: an entry violates positivity (first index reported).
        ValueError: alpha or beta negative, or S(X) = 0.
    """
    if alpha < 0 or beta < 0:
        raise ValueError(f"alpha and beta must be >= 0, got {alpha}, {beta}")
    X, Y, Z = T.X, T.Y, T.Z
    if clamp_eps is not None:
        eps = CLAMP_EPS if clamp_eps is True else float(clamp_eps)
        X, Y, Z = _clamp(X, eps), _clamp(Y, eps), _clamp(Z, eps)
    for block, M in (("X", X), ("Y", Y), ("Z", Z)):
        _require_positive(block, M, allow_zeros)

    sx = float(X.sum())
    if not sx > 0:
        raise ValueError("S(X) must be positive")
    sy = float(Y.sum())
    sz = float(Z.sum())
    root = math.sqrt(sx)

    w = root / (sx + beta * sz) * (row_sums(X) + beta * row_sums(Z))
    h = root / (sx + alpha * sy) * (col_sums(X) + alpha * col_sums(Y))
    a = row_sums(Y) / root
    b = col_sums(Z) / root

    if not all(np.isfinite(v).all() for v in (w, h, a, b)):
        raise NumericFailureError("closed-form factors are not finite")
    logger.debug("rank-1 NMMF: dims=%s S(X)=%.6g S(Y)=%.6g S(Z)=%.6g", T.dims, sx, sy, sz)
    return Rank1Factors(w=w, h=h, a=a, b=b)


def best_rank1_nmf(X, *, clamp_eps: float | None = None, allow_zeros: bool = False) -> Rank1Factors:
    """Best rank-1 NMF under KL: (w⊗h)_ij = rowsum_i · colsum_j / S(X).

    Same code path as ``best_rank1_nmmf`` with empty Y and Z.
    """
    return best_rank1_nmmf(MatrixTriple(X), clamp_eps=clamp_eps, allow_zeros=allow_zeros)


def reconstruct(F: Rank1Factors) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(w⊗h, a⊗h, w⊗b)."""
    return outer(F.w, F.h), outer(F.a, F.h), outer(F.w, F.b)
