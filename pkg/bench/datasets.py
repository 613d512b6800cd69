"""
Benchmark datasets — CSV ingestion with preprocessing, and synthetic generators.

CSV preprocessing, applied in this order:
    1. cells that are empty or hold a missing token (any case) get Phi = 0
    2. negative values are replaced by their absolute value
    3. zeros are replaced by the mean of the observed nonzero absolute values

Synthetic matrices are i.i.d. uniform(0, 1) plus a small floor, with either a
bottom-right corner block or a random S1×S2 grid of missing entries.
"""
from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd

from constants import CSV_DELIMITER, MISSING_TOKENS, SYNTHETIC_FLOOR
from factorization.errors import InputFormatError
from factorization.matrix import as_dense, as_mask

logger = logging.getLogger(__name__)


class Provenance(str, Enum):
    CSV = "csv"
    SYNTHETIC_CORNER = "synthetic-corner"
    SYNTHETIC_GRID = "synthetic-grid"


@dataclass
class Dataset:
    """A matrix with its observation mask; T is nan wherever Phi is False."""
    name: str
    T: np.ndarray
    Phi: np.ndarray
    provenance: Provenance = Provenance.CSV

    def __post_init__(self):
        self.T = as_dense(self.T, "T")
        self.Phi = as_mask(self.Phi, "Phi")
        if self.T.shape != self.Phi.shape:
            raise InputFormatError(f"T {self.T.shape} and Phi {self.Phi.shape} differ in shape")
        self.provenance = Provenance(self.provenance)

    @property
    def shape(self) -> tuple[int, int]:
        return self.T.shape

    @property
    def n_missing(self) -> int:
        return int((~self.Phi).sum())


# === CSV ===

def _read_cells(path, delimiter: str) -> pd.DataFrame:
    """Cells as strings; an empty field stays "" and only short-row padding is nan."""
    try:
        df = pd.read_csv(
            path,
            header=None,
            sep=delimiter,
            dtype=str,
            keep_default_na=False,
            na_values=[],
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError:
        raise InputFormatError(f"{path}: file is empty") from None
    except pd.errors.ParserError as e:
        raise InputFormatError(f"{path}: ragged rows ({e})") from None
    if df.shape[1] == 1:
        # one column: a blank line is an empty cell
        return df.fillna("")
    padded = df.isna().to_numpy()
    # trailing blank lines after the last row carry no cells
    blank = padded.all(axis=1)
    end = len(blank)
    while end and blank[end - 1]:
        end -= 1
    df, padded = df.iloc[:end], padded[:end]
    if padded.any():
        row = int(np.flatnonzero(padded.any(axis=1))[0])
        raise InputFormatError(f"{path}: ragged rows (row {row} is short)")
    if df.empty:
        raise InputFormatError(f"{path}: file is empty")
    return df


def _parse_numeric(cells: pd.DataFrame, missing_tokens, path) -> tuple[np.ndarray, np.ndarray]:
    cells = cells.apply(lambda col: col.str.strip().str.replace("−", "-", regex=False))
    # case-insensitive: "nan" counts like "NaN"
    tokens = {str(t).strip().casefold() for t in missing_tokens} | {""}
    missing = cells.apply(lambda col: col.str.casefold()).isin(tokens).to_numpy()
    values = np.full(cells.shape, np.nan)
    for (i, j), cell in np.ndenumerate(cells.to_numpy()):
        if missing[i, j]:
            continue
        try:
            values[i, j] = float(cell)
        except ValueError:
            raise InputFormatError(f"{path}: non-numeric cell {cell!r} at ({i}, {j})") from None
        if not math.isfinite(values[i, j]):
            raise InputFormatError(f"{path}: non-finite cell {cell!r} at ({i}, {j})")
    return values, ~missing


def preprocess(values: np.ndarray, Phi: np.ndarray) -> np.ndarray:
    """abs() then zero-fill with the mean of observed nonzero magnitudes."""
    T = np.where(Phi, np.abs(values), np.nan)
    nonzero = Phi & (T != 0)
    zeros = Phi & (T == 0)
    if zeros.any():
        if not nonzero.any():
            raise InputFormatError("every observed value is zero")
        T[zeros] = T[nonzero].mean()
    return T


def load_csv(path, missing_tokens=MISSING_TOKENS, delimiter: str = CSV_DELIMITER) -> Dataset:
    """Read a rectangular numeric CSV (no header) into a preprocessed Dataset.

    Raises:
        InputFormatError: ragged rows, a non-numeric cell, or no observed cell.
    """
    cells = _read_cells(path, delimiter)
    values, Phi = _parse_numeric(cells, missing_tokens, path)
    if not Phi.any():
        raise InputFormatError(f"{path}: every cell is missing")
    T = preprocess(values, Phi)
    name = os.path.splitext(os.path.basename(str(path)))[0]
    logger.info("loaded %s: %dx%d, %d missing", name, *T.shape, int((~Phi).sum()))
    return Dataset(name=name, T=T, Phi=Phi, provenance=Provenance.CSV)


def save_csv(ds: Dataset, path, delimiter: str = CSV_DELIMITER) -> None:
    """Write observed values at full precision; missing cells are left empty."""
    frame = pd.DataFrame(np.where(ds.Phi, ds.T, np.nan))
    frame.to_csv(path, sep=delimiter, header=False, index=False, na_rep="")


# === Synthetic ===

def _side_length(n: int, frac: float) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= frac < 1:
        raise ValueError(f"missing fraction must lie in [0, 1), got {frac}")
    # tolerance keeps exact squares like n=4, frac=0.25 from rounding up
    k = max(0, math.ceil(n * math.sqrt(frac) - 1e-9))
    if k >= n:
        raise ValueError(f"missing fraction {frac} leaves no observed row for n={n}")
    return k


def _uniform(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(0.0, 1.0, size=(n, n)) + SYNTHETIC_FLOOR


def gen_corner_missing(n: int, frac: float, seed: int = 0) -> Dataset:
    """n×n positives with a ⌈n√frac⌉-sided missing block in the bottom-right corner."""
    k = _side_length(n, frac)
    rng = np.random.default_rng(seed)
    T = _uniform(n, rng)
    Phi = np.ones((n, n), dtype=bool)
    Phi[n - k:, n - k:] = False
    T[~Phi] = np.nan
    return Dataset(name=f"corner-n{n}-s{seed}", T=T, Phi=Phi, provenance=Provenance.SYNTHETIC_CORNER)


def gen_grid_missing(n: int, frac: float, seed: int = 0) -> Dataset:
    """n×n positives with missing entries on S1×S2 for random S1, S2 of size ⌈n√frac⌉."""
    k = _side_length(n, frac)
    rng = np.random.default_rng(seed)
    T = _uniform(n, rng)
    S1 = np.sort(rng.choice(n, size=k, replace=False))
    S2 = np.sort(rng.choice(n, size=k, replace=False))
    Phi = np.ones((n, n), dtype=bool)
    Phi[np.ix_(S1, S2)] = False
    T[~Phi] = np.nan
    return Dataset(name=f"grid-n{n}-s{seed}", T=T, Phi=Phi, provenance=Provenance.SYNTHETIC_GRID)
