"""Shared fixtures and builders for the test suite."""

import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from factorization.matrix import MatrixTriple  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def positive(rng, *shape, low=0.1, high=1.0):
    return rng.uniform(low, high, size=shape)


def random_triple(rng, I, J, N, M) -> MatrixTriple:
    return MatrixTriple(
        X=positive(rng, I, J),
        Y=positive(rng, N, J),
        Z=positive(rng, I, M),
    )


def rank1_triple(rng, I, J, N, M) -> MatrixTriple:
    """A simultaneously rank-1 triple built from random positive generators."""
    w, h = positive(rng, I), positive(rng, J)
    a, b = positive(rng, N), positive(rng, M)
    return MatrixTriple(X=np.outer(w, h), Y=np.outer(a, h), Z=np.outer(w, b))


def grid_instance(rng, rows, cols, n1, n2):
    """Random positive matrix with a random n1×n2 grid of missing entries (nan)."""
    T = positive(rng, rows, cols)
    S1 = rng.choice(rows, size=n1, replace=False)
    S2 = rng.choice(cols, size=n2, replace=False)
    Phi = np.ones((rows, cols), dtype=bool)
    Phi[np.ix_(S1, S2)] = False
    T[~Phi] = np.nan
    return Phi, T
