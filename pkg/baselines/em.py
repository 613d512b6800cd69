"""
em-algorithm for rank-1 NMF with missing values.

Fill the missing entries, then alternate
    m-step: closed-form best rank-1 NMF of the filled matrix
    e-step: overwrite the missing entries with that reconstruction
until the masked cost stops changing. On grid-like masks the fixed point is the
A1GM solution.
"""
from __future__ import annotations

import logging

import numpy as np

from factorization.errors import NonPositiveEntryError
from factorization.matrix import masked_kl
from factorization.nmmf import best_rank1_nmf

from .config import IterativeConfig, IterativeResult, load_config
from .wnmf import observed_entries

logger = logging.getLogger(__name__)


def _initial_fill(T_obs: np.ndarray, Phi: np.ndarray, fill) -> float:
    if fill == "mean":
        return float(T_obs[Phi].mean())
    if fill == "zero":
        return 0.0
    value = float(fill)
    if value < 0:
        raise ValueError(f"fill value must be >= 0, got {value}")
    return value


def em_rank1(Phi, T, cfg: IterativeConfig | None = None, fill=None) -> IterativeResult:
    """Rank-1 em-algorithm; stops when |cost change| <= tol · cost, or at max_iter.

    Args:
        fill: initial value of the missing entries: "mean" of the observed
            entries, "zero", or a non-negative number. Defaults to the "em"
            section of config.json, as does cfg.
    """
    cfg = cfg or IterativeConfig.default("em")
    if fill is None:
        fill = load_config().get("em", {}).get("fill", "mean")
    Phi, T_obs = observed_entries(Phi, T)
    bad = Phi & ~(T_obs > 0)
    if bad.any():
        idx = tuple(np.argwhere(bad)[0])
        raise NonPositiveEntryError("T (observed entries)", idx, T_obs[idx])

    filled = np.where(Phi, T_obs, _initial_fill(T_obs, Phi, fill))
    trace: list[float] = []
    converged = False
    F = None
    it = 0
    while it < cfg.max_iter:
        it += 1
        F = best_rank1_nmf(filled, allow_zeros=True)
        recon = np.outer(F.w, F.h)
        cost = masked_kl(Phi, T_obs, recon)
        trace.append(cost)
        filled = np.where(Phi, T_obs, recon)
        if len(trace) > 1 and abs(trace[-2] - cost) <= cfg.tol * max(cost, np.finfo(float).tiny):
            converged = True
            break
        if not (~Phi).any():
            # nothing to impute: one m-step is the answer
            converged = True
            break

    logger.debug("em: %d iterations, converged=%s, cost %.10g", it, converged, trace[-1])
    return IterativeResult(factors=F, iterations=it, cost_trace=trace, converged=converged)
