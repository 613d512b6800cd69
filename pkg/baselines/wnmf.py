"""
KL-WNMF — weighted rank-1 NMF by multiplicative updates.

Minimizes the masked KL cost D_Phi(T, w⊗h). Each sweep updates h then w with
epsilon-guarded ratios, so iterates stay non-negative and the cost never
increases (up to the guard). Convergence is checked every ``check_every``
sweeps: stop once (cost_prev - cost_now) / cost_first < tol.
"""
from __future__ import annotations

import logging

import numpy as np

from factorization.errors import InfeasibleMaskError, InputFormatError, ShapeMismatchError
from factorization.matrix import Rank1Factors, as_dense, as_mask, masked_kl

from .config import IterativeConfig, IterativeResult

logger = logging.getLogger(__name__)


def observed_entries(Phi, T) -> tuple[np.ndarray, np.ndarray]:
    Phi = as_mask(Phi, "Phi")
    T = as_dense(T, "T")
    if Phi.shape != T.shape:
        raise ShapeMismatchError(f"mask shape {Phi.shape} != matrix shape {T.shape}")
    if not Phi.any():
        raise InfeasibleMaskError("mask has no observed entries")
    T_obs = np.where(Phi, T, 0.0)
    if not np.isfinite(T_obs).all() or (T_obs < 0).any():
        raise InputFormatError("observed entries must be finite and non-negative")
    return Phi, T_obs


def init_factors(shape: tuple[int, int], seed: int) -> tuple[np.ndarray, np.ndarray]:
    """w, h drawn i.i.d. uniform on [0, 1) from a PCG64 stream seeded by ``seed``."""
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.0, 1.0, size=shape[0])
    h = rng.uniform(0.0, 1.0, size=shape[1])
    return w, h


def wnmf_rank1(Phi, T, cfg: IterativeConfig | None = None) -> IterativeResult:
    """Rank-1 KL-WNMF from a seeded uniform start.

    Raises:
        InfeasibleMaskError: Phi has no observed entry.
        InputFormatError: an observed entry is negative or not finite.
    """
    cfg = cfg or IterativeConfig.default()
    Phi, T_obs = observed_entries(Phi, T)
    W = Phi.astype(np.float64)
    eps = cfg.eps_guard

    w, h = init_factors(T_obs.shape, cfg.seed)
    cost_first = masked_kl(Phi, T_obs, np.outer(w, h))
    cost_prev = cost_first
    trace = [cost_first]
    converged = cost_first == 0.0
    it = 0

    while not converged and it < cfg.max_iter:
        it += 1
        R = W * T_obs / (np.outer(w, h) + eps)
        h = h * (w @ R) / (w @ W + eps)
        R = W * T_obs / (np.outer(w, h) + eps)
        w = w * (R @ h) / (W @ h + eps)

        if it % cfg.check_every == 0 or it == cfg.max_iter:
            cost = masked_kl(Phi, T_obs, np.outer(w, h))
            trace.append(cost)
            if it % cfg.check_every == 0 and (cost_prev - cost) / cost_first < cfg.tol:
                converged = True
            cost_prev = cost

    logger.debug(
        "wnmf: %d iterations, converged=%s, cost %.10g -> %.10g",
        it, converged, trace[0], trace[-1],
    )
    return IterativeResult(
        factors=Rank1Factors(w=w, h=h),
        iterations=it,
        cost_trace=trace,
        converged=converged,
    )


def relative_error(Phi, T, recon_a1gm, recon_wnmf) -> float:
    """D_Phi(T, A1GM) / D_Phi(T, WNMF); 1 means parity.

    Both costs 0 counts as parity; a zero WNMF cost against a positive A1GM
    cost gives inf.
    """
    num = masked_kl(Phi, T, recon_a1gm)
    den = masked_kl(Phi, T, recon_wnmf)
    if den == 0.0:
        return 1.0 if num == 0.0 else float("inf")
    return num / den
