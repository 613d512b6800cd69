"""
Dense matrix primitives, masks and the (masked) KL divergence.

Matrices are float64 numpy arrays in C (row-major) order; masks are boolean
arrays where True marks an observed entry. Empty matrices (0 rows or 0 columns)
are ordinary values.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import kl_div as _kl_elementwise

from .errors import DivergenceUndefinedError, ShapeMismatchError


def as_dense(M, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D float64 C-ordered array."""
    arr = np.ascontiguousarray(M, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def as_mask(Phi, name: str = "mask") -> np.ndarray:
    """Coerce a 0/1 or boolean array to a 2-D boolean mask."""
    arr = np.asarray(Phi)
    if arr.ndim != 2:
        raise ShapeMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.dtype != np.bool_:
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError(f"{name} entries must be 0 or 1")
        arr = arr.astype(bool)
    return np.ascontiguousarray(arr)


def as_vector(v, name: str = "vector") -> np.ndarray:
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeMismatchError(f"{name} must be 1-D, got shape {arr.shape}")
    return arr


def empty(rows: int = 0, cols: int = 0) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.float64)


def _check_same_shape(*arrays: np.ndarray) -> None:
    shapes = {a.shape for a in arrays}
    if len(shapes) > 1:
        raise ShapeMismatchError(f"shape mismatch: {sorted(shapes)}")


@dataclass(frozen=True)
class Rank1Factors:
    """Vectors of a shared-factor rank-1 reconstruction.

    w (I) and h (J) give X ~ w⊗h; a (N) gives Y ~ a⊗h; b (M) gives Z ~ w⊗b.
    """
    w: np.ndarray
    h: np.ndarray
    a: np.ndarray = field(default_factory=lambda: np.zeros(0))
    b: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        for name in ("w", "h", "a", "b"):
            vec = as_vector(getattr(self, name), name)
            if vec.size and not (vec >= 0).all():
                raise ValueError(f"factor {name} has negative entries")
            object.__setattr__(self, name, vec)


@dataclass(frozen=True)
class MatrixTriple:
    """NMMF input: X (I×J), Y (N×J) below X, Z (I×M) beside X."""
    X: np.ndarray
    Y: np.ndarray = None
    Z: np.ndarray = None

    def __post_init__(self):
        X = as_dense(self.X, "X")
        I, J = X.shape
        Y = empty(0, J) if self.Y is None else as_dense(self.Y, "Y")
        Z = empty(I, 0) if self.Z is None else as_dense(self.Z, "Z")
        # an empty block may come in with any zero-size shape
        if Y.size == 0 and Y.shape[1] != J:
            Y = empty(0, J)
        if Z.size == 0 and Z.shape[0] != I:
            Z = empty(I, 0)
        if Y.shape[1] != J:
            raise ShapeMismatchError(f"Y has {Y.shape[1]} columns, X has {J}")
        if Z.shape[0] != I:
            raise ShapeMismatchError(f"Z has {Z.shape[0]} rows, X has {I}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "Z", Z)

    @property
    def dims(self) -> tuple[int, int, int, int]:
        """(I, J, N, M)."""
        return self.X.shape[0], self.X.shape[1], self.Y.shape[0], self.Z.shape[1]


def outer(u, v) -> np.ndarray:
    """Kronecker (outer) product of two vectors."""
    return np.outer(as_vector(u, "u"), as_vector(v, "v"))


def total_sum(M) -> float:
    return float(np.sum(M))


def row_sums(M) -> np.ndarray:
    return np.asarray(M, dtype=np.float64).sum(axis=1)


def col_sums(M) -> np.ndarray:
    return np.asarray(M, dtype=np.float64).sum(axis=0)


def kl_div(X, Yh) -> float:
    """Generalized KL divergence sum(X log(X/Y) - X + Y), with 0·log 0 = 0."""
    X = np.asarray(X, dtype=np.float64)
    Yh = np.asarray(Yh, dtype=np.float64)
    _check_same_shape(X, Yh)
    if X.size == 0:
        return 0.0
    if (X < 0).any():
        raise ValueError("KL divergence needs non-negative data")
    undefined = (Yh <= 0) & (X > 0)
    if undefined.any():
        idx = tuple(int(i) for i in np.argwhere(undefined)[0])
        raise DivergenceUndefinedError(
            f"model entry {idx} is {Yh[idx]!r} where data is {X[idx]!r}"
        )
    return float(np.sum(_kl_elementwise(X, Yh)))


def masked_kl(Phi, X, Yh) -> float:
    """KL divergence over the observed (Phi == 1) entries only.

    Values of X and Yh at masked positions are never read.
    """
    Phi = as_mask(Phi, "Phi")
    X = np.asarray(X, dtype=np.float64)
    Yh = np.asarray(Yh, dtype=np.float64)
    _check_same_shape(Phi, X, Yh)
    return kl_div(X[Phi], Yh[Phi])


def nmmf_cost(T: MatrixTriple, F: Rank1Factors, alpha: float = 1.0, beta: float = 1.0) -> float:
    """D(X, w⊗h) + alpha·D(Y, a⊗h) + beta·D(Z, w⊗b); empty or zero-weighted blocks add 0."""
    I, J, N, M = T.dims
    if (F.w.size, F.h.size, F.a.size, F.b.size) != (I, J, N, M):
        raise ShapeMismatchError(
            f"factor lengths {(F.w.size, F.h.size, F.a.size, F.b.size)} "
            f"do not match triple dims {(I, J, N, M)}"
        )
    cost = kl_div(T.X, outer(F.w, F.h))
    if N and alpha:
        cost += alpha * kl_div(T.Y, outer(F.a, F.h))
    if M and beta:
        cost += beta * kl_div(T.Z, outer(F.w, F.b))
    return cost


def permute_rows_cols(M, perm1, perm2) -> np.ndarray:
    """M[perm1, :][:, perm2]: row k of the result is row perm1[k] of M."""
    return np.asarray(M)[np.ix_(perm1, perm2)]
