"""Iterative solver configuration — defaults live in config.json next to this file."""

import json
import os
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from constants import CHECK_EVERY, EPS_GUARD, MAX_ITER, SEED, TOL
from factorization.matrix import Rank1Factors

CONFIG_PATH = os.path.join(os.path.dirname(__file__), "config.json")


def load_config(path: str = CONFIG_PATH) -> dict:
    with open(path) as f:
        return json.load(f)


@dataclass(frozen=True)
class IterativeConfig:
    max_iter: int = MAX_ITER
    tol: float = TOL
    check_every: int = CHECK_EVERY
    seed: int = SEED
    eps_guard: float = EPS_GUARD

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.check_every < 1:
            raise ValueError(f"check_every must be >= 1, got {self.check_every}")
        if not self.eps_guard > 0:
            raise ValueError(f"eps_guard must be > 0, got {self.eps_guard}")

    @classmethod
    def from_dict(cls, cfg: dict) -> "IterativeConfig":
        known = {k: cfg[k] for k in cls.__dataclass_fields__ if k in cfg}
        return cls(**known)

    @classmethod
    def default(cls, section: str = "iterative") -> "IterativeConfig":
        return cls.from_dict(load_config().get(section, {}))

    def with_seed(self, seed: int) -> "IterativeConfig":
        return replace(self, seed=int(seed))

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class IterativeResult:
    factors: Rank1Factors
    iterations: int
    cost_trace: list = field(default_factory=list)
    converged: bool = False

    def reconstruction(self) -> np.ndarray:
        return np.outer(self.factors.w, self.factors.h)
