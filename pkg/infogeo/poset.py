"""
Log-linear model on the L-shaped poset of an NMMF triple.

The triple (X, Y, Z) is laid out on the grid [I+N]×[J+M] with X top-left,
Y bottom-left and Z top-right; the bottom-right N×M corner is not part of the
sample space Ω. With the product order (k, l) <= (s, t) iff k <= s and l <= t,

    p(k, l)  = exp( Σ_{(s,t) <= (k,l)} θ_st )
    η_kl     = Σ_{(s,t) >= (k,l)} p(s, t)

Ω is a down-set of the grid, so the down-set of any element is a full rectangle.
Indices are 0-based: (0, 0) is the bottom element, "one-body" parameters have a
0 index and "two-body" parameters have both indices >= 1.

This module is a verification oracle; solvers never call it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from constants import CONSERVATION_TOL, ETA_TOL, THETA_TOL
from factorization.errors import ShapeMismatchError
from factorization.matrix import MatrixTriple
from factorization.nmmf import _require_positive

logger = logging.getLogger(__name__)


@dataclass
class PosetModel:
    I: int
    J: int
    N: int
    M: int
    omega: np.ndarray    # bool grid, False on the missing corner
    p: np.ndarray        # probabilities, 0 outside Ω
    theta: np.ndarray    # natural parameters, nan outside Ω; theta[0, 0] is the normalizer
    eta: np.ndarray      # expectation parameters, nan outside Ω
    total: float = 1.0   # mass of the triple before normalization

    @property
    def shape(self) -> tuple[int, int]:
        return self.I + self.N, self.J + self.M

    def blocks(self) -> MatrixTriple:
        """The normalized triple (X, Y, Z) carried by p."""
        I, J = self.I, self.J
        return MatrixTriple(X=self.p[:I, :J], Y=self.p[I:, :J], Z=self.p[:I, J:])


@dataclass
class OracleReport:
    theta_ok: bool
    eta_ok: bool
    max_violation: float
    max_theta: float
    max_eta: float

    def to_dict(self) -> dict:
        return {
            "theta_ok": self.theta_ok,
            "eta_ok": self.eta_ok,
            "max_violation": self.max_violation,
            "max_theta": self.max_theta,
            "max_eta": self.max_eta,
        }


def _upset_sums(p: np.ndarray) -> np.ndarray:
    """Σ_{s>=k, t>=l} p[s, t] for every (k, l)."""
    flipped = p[::-1, ::-1]
    return np.cumsum(np.cumsum(flipped, axis=0), axis=1)[::-1, ::-1]


def _solve_theta(p: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """θ_kl = log p(k, l) - Σ_{(s,t) < (k,l)} θ_st, in row-major order.

    Row-major order is a linear extension of the product order. C holds running
    down-set sums of θ (C[k+1, l+1] = Σ_{s<=k, t<=l} θ_st), so each strictly-below
    sum is read off in O(1).
    """
    logp = np.log(np.where(omega, p, 1.0))
    theta = np.zeros_like(p)
    rows, cols = p.shape
    C = np.zeros((rows + 1, cols + 1))
    for k in range(rows):
        for l in range(cols):
            below = C[k, l + 1] + C[k + 1, l] - C[k, l]
            if omega[k, l]:
                theta[k, l] = logp[k, l] - below
            C[k + 1, l + 1] = below + theta[k, l]
    theta[~omega] = np.nan
    return theta


def model_from_triple(T: MatrixTriple) -> PosetModel:
    """Normalize the triple to unit mass and compute θ and η.

    Raises:
        NonPositiveEntryError: any block has an entry <= 0.
    """
    for block, B in (("X", T.X), ("Y", T.Y), ("Z", T.Z)):
        _require_positive(block, B)
    I, J, N, M = T.dims
    grid = np.zeros((I + N, J + M))
    grid[:I, :J] = T.X
    grid[I:, :J] = T.Y
    grid[:I, J:] = T.Z
    omega = np.ones(grid.shape, dtype=bool)
    omega[I:, J:] = False

    total = float(grid.sum())
    if not total > 0:
        raise ValueError("triple has zero mass")
    p = grid / total
    eta = _upset_sums(p)
    eta[~omega] = np.nan
    theta = _solve_theta(p, omega)
    return PosetModel(I=I, J=J, N=N, M=M, omega=omega, p=p, theta=theta, eta=eta, total=total)


def eta_of(model: PosetModel, k: int, l: int) -> float:
    """Up-set sum η_kl; (k, l) must lie in Ω."""
    rows, cols = model.shape
    if not (0 <= k < rows and 0 <= l < cols) or not model.omega[k, l]:
        raise IndexError(f"({k}, {l}) is not an element of the sample space")
    return float(model.eta[k, l])


def theta_of(model: PosetModel) -> np.ndarray:
    """Natural parameters as a grid (nan outside Ω, normalizer at [0, 0])."""
    return model.theta.copy()


def p_from_theta(model: PosetModel) -> np.ndarray:
    """Rebuild p from θ via the log-linear sum over down-sets."""
    theta = np.where(model.omega, model.theta, 0.0)
    logp = np.cumsum(np.cumsum(theta, axis=0), axis=1)
    return np.where(model.omega, np.exp(logp), 0.0)


def one_body_eta(model: PosetModel) -> tuple[np.ndarray, np.ndarray]:
    """(η_k0 for every row k, η_0l for every column l)."""
    return model.eta[:, 0].copy(), model.eta[0, :].copy()


def _eta_factorization_gap(q: np.ndarray) -> float:
    if q.shape[0] < 2 or q.shape[1] < 2:
        return 0.0
    eta = _upset_sums(q / q.sum())
    gap = eta[1:, 1:] - np.outer(eta[1:, 0], eta[0, 1:])
    return float(np.abs(gap).max())


def check_simultaneous_rank1(model: PosetModel, tol: float = THETA_TOL, eta_tol: float = ETA_TOL) -> OracleReport:
    """θ- and η-conditions for simultaneous rank-1 decomposability.

    θ: every two-body θ is 0. η: two-body η factorizes as η_i0·η_0j. The η
    identity needs a rectangular poset, so it is checked on the two rectangles
    [X; Y] and [X, Z] (each renormalized); both are rank-1 exactly when the
    triple shares rank-1 factors.
    """
    two_body = model.omega[1:, 1:]
    max_theta = float(np.abs(model.theta[1:, 1:][two_body]).max()) if two_body.any() else 0.0
    I, J = model.I, model.J
    max_eta = max(
        _eta_factorization_gap(model.p[:, :J]),
        _eta_factorization_gap(model.p[:I, :]),
    )
    report = OracleReport(
        theta_ok=max_theta <= tol,
        eta_ok=max_eta <= eta_tol,
        max_violation=max(max_theta, max_eta),
        max_theta=max_theta,
        max_eta=max_eta,
    )
    if report.theta_ok != report.eta_ok:
        logger.warning("θ and η verdicts disagree: %s", report)
    return report


def conservation_check(input_model: PosetModel, projected_model: PosetModel, tol: float = CONSERVATION_TOL) -> bool:
    """True iff every one-body η of the two models agrees within tol."""
    if (input_model.I, input_model.J, input_model.N, input_model.M) != (
        projected_model.I, projected_model.J, projected_model.N, projected_model.M
    ):
        raise ShapeMismatchError("models live on different sample spaces")
    rows_in, cols_in = one_body_eta(input_model)
    rows_out, cols_out = one_body_eta(projected_model)
    gap = max(np.abs(rows_in - rows_out).max(), np.abs(cols_in - cols_out).max())
    logger.debug("one-body eta gap %.3g", gap)
    return bool(gap <= tol)
