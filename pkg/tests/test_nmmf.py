"""Closed-form rank-1 NMMF."""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy.optimize import minimize

from factorization.errors import NonPositiveEntryError
from factorization.matrix import MatrixTriple, Rank1Factors, nmmf_cost
from factorization.nmmf import best_rank1_nmf, best_rank1_nmmf, reconstruct

from conftest import random_triple, rank1_triple


def _numeric_optimum(T: MatrixTriple, alpha: float, beta: float) -> float:
    """NMMF cost reached by L-BFGS-B from a flat start."""
    I, J, N, M = T.dims
    cuts = np.cumsum([I, J, N])

    def cost(x):
        w, h, a, b = np.split(x, cuts)
        return nmmf_cost(T, Rank1Factors(w, h, a, b), alpha, beta)

    x0 = np.full(I + J + N + M, np.sqrt(T.X.mean()))
    res = minimize(cost, x0, method="L-BFGS-B", bounds=[(1e-9, None)] * x0.size,
                   options={"ftol": 1e-14, "gtol": 1e-10, "maxiter": 10000})
    return res.fun


class TestClosedForm:

    def test_one_by_one(self):
        F = best_rank1_nmmf(MatrixTriple([[1.0]]))
        assert_allclose(F.w, [1.0])
        assert_allclose(F.h, [1.0])
        assert F.a.size == 0 and F.b.size == 0

    def test_consistent_triple_factors(self):
        T = MatrixTriple([[3.0, 1.0], [6.0, 2.0]], [[3.0, 1.0]], [[2.0], [4.0]])
        F = best_rank1_nmmf(T)
        assert_allclose(F.w, [1.1547005, 2.3094011], rtol=1e-6)
        assert_allclose(F.h, [2.5980762, 0.8660254], rtol=1e-6)
        assert_allclose(F.a, [1.1547005], rtol=1e-6)
        assert_allclose(F.b, [1.7320508], rtol=1e-6)
        WH, AH, WB = reconstruct(F)
        assert_allclose(WH, T.X, rtol=1e-12)
        assert_allclose(AH, T.Y, rtol=1e-12)
        assert_allclose(WB, T.Z, rtol=1e-12)

    @pytest.mark.parametrize("dims", [(3, 3, 1, 1), (4, 2, 3, 0), (2, 5, 0, 2), (6, 4, 2, 3)])
    def test_exact_recovery(self, rng, dims):
        T = rank1_triple(rng, *dims)
        for got, want in zip(reconstruct(best_rank1_nmmf(T)), (T.X, T.Y, T.Z)):
            assert_allclose(got, want, rtol=1e-10)

    @pytest.mark.parametrize("alpha,beta", [(1.0, 1.0), (0.5, 2.0), (3.0, 0.0)])
    def test_beats_numeric_optimizer(self, rng, alpha, beta):
        T = random_triple(rng, 3, 3, 1, 1)
        closed = nmmf_cost(T, best_rank1_nmmf(T, alpha, beta), alpha, beta)
        assert closed <= _numeric_optimum(T, alpha, beta) * (1 + 1e-8)

    def test_mass_conservation(self, rng):
        T = random_triple(rng, 5, 4, 2, 3)
        WH, AH, WB = reconstruct(best_rank1_nmmf(T))
        assert_allclose(WH.sum() + AH.sum() + WB.sum(), T.X.sum() + T.Y.sum() + T.Z.sum(), rtol=1e-12)
        assert_allclose(AH.sum(axis=1), T.Y.sum(axis=1), rtol=1e-12)
        assert_allclose(WB.sum(axis=0), T.Z.sum(axis=0), rtol=1e-12)

    @pytest.mark.parametrize("alpha,beta", [(0.5, 2.0), (3.0, 0.25), (2.0, 0.0)])
    def test_weighted_mass_conservation(self, rng, alpha, beta):
        T = random_triple(rng, 5, 4, 2, 3)
        WH, AH, WB = reconstruct(best_rank1_nmmf(T, alpha, beta))
        assert_allclose(WH.sum(axis=1) + beta * WB.sum(axis=1), T.X.sum(axis=1) + beta * T.Z.sum(axis=1), rtol=1e-12)
        assert_allclose(WH.sum(axis=0) + alpha * AH.sum(axis=0), T.X.sum(axis=0) + alpha * T.Y.sum(axis=0), rtol=1e-12)
        assert WH.sum() == pytest.approx(T.X.sum(), rel=1e-12)
        assert_allclose(AH.sum(axis=1), T.Y.sum(axis=1), rtol=1e-12)
        assert_allclose(WB.sum(axis=0), T.Z.sum(axis=0), rtol=1e-12)

    def test_no_random_guess_does_better(self, rng):
        T = random_triple(rng, 4, 3, 2, 2)
        best = nmmf_cost(T, best_rank1_nmmf(T))
        scale = np.sqrt(T.X.mean())
        for _ in range(1000):
            guess = Rank1Factors(*(rng.uniform(1e-3, 3 * scale, size=n) for n in T.dims))
            assert best <= nmmf_cost(T, guess)


class TestSymmetries:

    def test_row_permutation_moves_w(self, rng):
        T = random_triple(rng, 6, 4, 2, 3)
        p = rng.permutation(6)
        F = best_rank1_nmmf(T)
        G = best_rank1_nmmf(MatrixTriple(T.X[p], T.Y, T.Z[p]))
        assert_allclose(G.w, F.w[p], rtol=1e-12)
        assert_allclose(G.h, F.h, rtol=1e-12)
        assert_allclose(G.a, F.a, rtol=1e-12)
        assert_allclose(G.b, F.b, rtol=1e-12)

    def test_column_permutation_moves_h(self, rng):
        T = random_triple(rng, 4, 6, 3, 2)
        q = rng.permutation(6)
        F = best_rank1_nmmf(T)
        G = best_rank1_nmmf(MatrixTriple(T.X[:, q], T.Y[:, q], T.Z))
        assert_allclose(G.h, F.h[q], rtol=1e-12)
        assert_allclose(G.w, F.w, rtol=1e-12)
        assert_allclose(G.a, F.a, rtol=1e-12)
        assert_allclose(G.b, F.b, rtol=1e-12)

    @pytest.mark.parametrize("alpha,beta", [(0.5, 2.0), (4.0, 0.1)])
    def test_weights_fold_into_blocks(self, rng, alpha, beta):
        T = random_triple(rng, 4, 5, 2, 3)
        F = best_rank1_nmmf(T, alpha, beta)
        G = best_rank1_nmmf(MatrixTriple(T.X, alpha * T.Y, beta * T.Z), 1.0, 1.0)
        assert_allclose(G.w, F.w, rtol=1e-12)
        assert_allclose(G.h, F.h, rtol=1e-12)
        assert_allclose(G.a / alpha, F.a, rtol=1e-12)
        assert_allclose(G.b / beta, F.b, rtol=1e-12)


class TestRank1Nmf:

    def test_uniform(self):
        F = best_rank1_nmf(np.ones((2, 2)))
        assert_allclose(F.w, [1.0, 1.0])
        assert_allclose(F.h, [1.0, 1.0])

    def test_rank1_is_fixed_point(self):
        X = np.array([[3.0, 1.0], [6.0, 2.0]])
        F = best_rank1_nmf(X)
        assert_allclose(np.outer(F.w, F.h), X, rtol=1e-12)

    def test_rowsum_colsum_formula(self):
        F = best_rank1_nmf([[1.0, 2.0], [3.0, 4.0]])
        assert_allclose(np.outer(F.w, F.h), [[1.2, 1.8], [2.8, 4.2]], rtol=1e-12)

    def test_same_path_as_nmmf(self, rng):
        X = rng.uniform(0.1, 1.0, size=(4, 5))
        F, G = best_rank1_nmf(X), best_rank1_nmmf(MatrixTriple(X), 1.0, 1.0)
        assert_array_equal(F.w, G.w)
        assert_array_equal(F.h, G.h)


class TestPreconditions:

    def test_nonpositive_entry_reports_first_index(self):
        with pytest.raises(NonPositiveEntryError) as err:
            best_rank1_nmmf(MatrixTriple([[1.0, 1.0]], Y=[[1.0, 0.0]]))
        assert err.value.block == "Y"
        assert err.value.index == (0, 1)

    def test_nan_rejected(self):
        with pytest.raises(NonPositiveEntryError):
            best_rank1_nmf([[1.0, np.nan]])

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            best_rank1_nmmf(MatrixTriple([[1.0]]), alpha=-1.0)

    def test_clamp_mode(self):
        F = best_rank1_nmf([[0.0, 1.0], [1.0, 1.0]], clamp_eps=True)
        assert np.all(F.w > 0) and np.all(F.h > 0)

    def test_allow_zeros(self):
        F = best_rank1_nmf([[0.0, 2.0], [2.0, 0.0]], allow_zeros=True)
        assert_allclose(np.outer(F.w, F.h), np.ones((2, 2)))

    def test_zero_mass_x(self):
        with pytest.raises(ValueError):
            best_rank1_nmf(np.zeros((2, 2)), allow_zeros=True)
