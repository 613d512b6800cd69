"""
A1GM vs KL-WNMF comparison harness and its JSON report.

Each trial times one A1GM run and one WNMF run (fresh WNMF seed per trial) with
a monotonic clock; a warm-up run of each solver is made first and not timed.
Runtimes are reported as medians, errors on the original mask.
"""
from __future__ import annotations

import json
import logging
import statistics
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from baselines.config import IterativeConfig
from baselines.wnmf import relative_error, wnmf_rank1
from factorization.errors import A1GMError
from factorization.grid import a1gm

from .datasets import Dataset

logger = logging.getLogger(__name__)

RUNTIME_FIELDS = ("runtime_a1gm", "runtime_wnmf", "relative_runtime", "runtime_a1gm_sd", "runtime_wnmf_sd")


@dataclass
class BenchReport:
    dataset: str
    shape: tuple
    n_missing: int
    increase_rate: float
    relative_error: float
    runtime_a1gm: float
    runtime_wnmf: float
    relative_runtime: float
    seeds: list
    trials: int
    runtime_a1gm_sd: float = 0.0
    runtime_wnmf_sd: float = 0.0
    wnmf_iterations: list = field(default_factory=list)
    provenance: str = "csv"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        self.shape = tuple(int(s) for s in self.shape)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["shape"] = list(self.shape)
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "BenchReport":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})

    @classmethod
    def from_json(cls, text: str) -> "BenchReport":
        return cls.from_dict(json.loads(text))


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Independent per-trial seeds spawned from one base seed."""
    state = np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)
    return [int(s) for s in state]


def _sd(xs: list[float]) -> float:
    return statistics.stdev(xs) if len(xs) > 1 else 0.0


def run_compare(ds: Dataset, cfg: IterativeConfig | None = None, trials: int = 5) -> BenchReport:
    """Benchmark A1GM against rank-1 KL-WNMF on one dataset.

    Raises:
        A1GMError: from either solver, with the dataset name prefixed to the message.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    cfg = cfg or IterativeConfig.default()
    seeds = trial_seeds(cfg.seed, trials)
    Phi, T = ds.Phi, ds.T

    try:
        # warm-up
        a1gm(Phi, T)
        wnmf_rank1(Phi, T, cfg)

        t_a1gm, t_wnmf, errors, iterations = [], [], [], []
        increase_rate = 1.0
        for k, seed in enumerate(seeds):
            t0 = time.perf_counter()
            res = a1gm(Phi, T)
            t1 = time.perf_counter()
            base = wnmf_rank1(Phi, T, cfg.with_seed(seed))
            t2 = time.perf_counter()

            t_a1gm.append(t1 - t0)
            t_wnmf.append(t2 - t1)
            iterations.append(base.iterations)
            errors.append(relative_error(Phi, T, res.reconstruction(), base.reconstruction()))
            increase_rate = res.increase_rate
            logger.debug("[%s] trial %d: a1gm %.4gs, wnmf %.4gs (%d it)", ds.name, k, t1 - t0, t2 - t1, base.iterations)
    except A1GMError as e:
        e.args = (f"[{ds.name}] {e}",) + e.args[1:]
        raise

    runtime_a1gm = statistics.median(t_a1gm)
    runtime_wnmf = statistics.median(t_wnmf)
    report = BenchReport(
        dataset=ds.name,
        shape=ds.shape,
        n_missing=ds.n_missing,
        increase_rate=increase_rate,
        relative_error=statistics.median(errors),
        runtime_a1gm=runtime_a1gm,
        runtime_wnmf=runtime_wnmf,
        relative_runtime=runtime_a1gm / runtime_wnmf if runtime_wnmf > 0 else float("inf"),
        seeds=seeds,
        trials=trials,
        runtime_a1gm_sd=_sd(t_a1gm),
        runtime_wnmf_sd=_sd(t_wnmf),
        wnmf_iterations=iterations,
        provenance=ds.provenance.value,
    )
    logger.info(
        "[%s] relative error %.6g, relative runtime %.4g",
        ds.name, report.relative_error, report.relative_runtime,
    )
    return report
