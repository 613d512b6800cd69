"""End-to-end properties at desk scale (randomized, seeded)."""

import time

import numpy as np
import pytest
from numpy.testing import assert_allclose

from baselines.config import IterativeConfig
from baselines.em import em_rank1
from baselines.wnmf import relative_error, wnmf_rank1
from bench.compare import run_compare
from bench.datasets import gen_corner_missing
from factorization.grid import a1gm
from factorization.matrix import MatrixTriple
from factorization.nmmf import best_rank1_nmmf, reconstruct
from infogeo.poset import check_simultaneous_rank1, conservation_check, model_from_triple

from conftest import grid_instance, random_triple, rank1_triple
from constants import SYNTHETIC_SIZES


def _dims(rng):
    return int(rng.integers(1, 21)), int(rng.integers(1, 21)), int(rng.integers(0, 11)), int(rng.integers(0, 11))


def test_exact_recovery_of_rank1_triples(rng):
    start = time.perf_counter()
    for _ in range(100):
        T = rank1_triple(rng, *_dims(rng))
        for got, want in zip(reconstruct(best_rank1_nmmf(T)), (T.X, T.Y, T.Z)):
            assert_allclose(got, want, rtol=1e-10)
    assert time.perf_counter() - start < 1.0


def test_grid_like_parity_with_wnmf(rng):
    cfg = IterativeConfig(max_iter=20000, tol=1e-9)
    for _ in range(50):
        rows, cols = int(rng.integers(10, 101)), int(rng.integers(10, 51))
        n1 = max(1, int(round(rows * np.sqrt(0.05))))
        n2 = max(1, int(round(cols * np.sqrt(0.05))))
        Phi, T = grid_instance(rng, rows, cols, n1, n2)
        ratio = relative_error(Phi, T, a1gm(Phi, T).reconstruction(), wnmf_rank1(Phi, T, cfg).reconstruction())
        assert 0.999 <= ratio <= 1.001


def test_em_fixed_point(rng):
    cfg = IterativeConfig(max_iter=2000, tol=1e-30)
    for _ in range(20):
        Phi, T = grid_instance(rng, int(rng.integers(6, 16)), int(rng.integers(6, 16)), 2, 2)
        assert_allclose(em_rank1(Phi, T, cfg).reconstruction(), a1gm(Phi, T).reconstruction(), rtol=1e-8)


def test_conservation_law(rng):
    for _ in range(100):
        T = random_triple(rng, *_dims(rng))
        P = MatrixTriple(*reconstruct(best_rank1_nmmf(T)))
        assert conservation_check(model_from_triple(T), model_from_triple(P))
        assert_allclose(np.hstack([P.X, P.Z]).sum(axis=1), np.hstack([T.X, T.Z]).sum(axis=1), rtol=1e-10)
        assert_allclose(np.vstack([P.X, P.Y]).sum(axis=0), np.vstack([T.X, T.Y]).sum(axis=0), rtol=1e-10)
        total_in = T.X.sum() + T.Y.sum() + T.Z.sum()
        assert P.X.sum() + P.Y.sum() + P.Z.sum() == pytest.approx(total_in, rel=1e-10)
        assert P.Y.sum() == pytest.approx(T.Y.sum(), rel=1e-10)
        assert P.Z.sum() == pytest.approx(T.Z.sum(), rel=1e-10)


def test_rank1_characterization_is_two_sided(rng):
    for _ in range(100):
        dims = (int(rng.integers(3, 8)), int(rng.integers(3, 8)), int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        T = random_triple(rng, *dims)
        out = check_simultaneous_rank1(model_from_triple(MatrixTriple(*reconstruct(best_rank1_nmmf(T)))))
        assert out.max_theta <= 1e-8 and out.max_eta <= 1e-8
        generic = check_simultaneous_rank1(model_from_triple(T))
        assert generic.max_theta > 1e-4 and generic.max_eta > 1e-4


def test_permutation_homogeneity(rng):
    for _ in range(50):
        rows, cols = int(rng.integers(4, 20)), int(rng.integers(4, 20))
        Phi, T = grid_instance(rng, rows, cols, int(rng.integers(1, rows)), int(rng.integers(1, cols)))
        p, q = rng.permutation(rows), rng.permutation(cols)
        base = a1gm(Phi, T).reconstruction()
        moved = a1gm(Phi[np.ix_(p, q)], T[np.ix_(p, q)]).reconstruction()
        assert_allclose(moved, base[np.ix_(p, q)], rtol=1e-12)


def test_wnmf_traces_monotone_and_seeded(rng):
    for _ in range(100):
        Phi, T = grid_instance(rng, int(rng.integers(4, 15)), int(rng.integers(4, 15)), 1, 2)
        cfg = IterativeConfig(max_iter=60, check_every=1, tol=1e-15, seed=int(rng.integers(1000)))
        first = wnmf_rank1(Phi, T, cfg).cost_trace
        assert np.all(np.diff(first) <= 1e-9 * first[0])
        assert wnmf_rank1(Phi, T, cfg).cost_trace == first


@pytest.mark.slow
@pytest.mark.parametrize("n", SYNTHETIC_SIZES)
def test_corner_missing_speedup(n):
    report = run_compare(gen_corner_missing(n, 0.05, seed=0), IterativeConfig(), trials=3)
    assert report.relative_runtime < 0.5
