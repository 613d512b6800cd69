"""REST API routes for the a1gm service."""

from __future__ import annotations

import numpy as np
from fastapi import APIRouter
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from bench.cli import verify_result
from bench.datasets import preprocess
from factorization.errors import InputFormatError
from factorization.grid import a1gm

from ..config import ETA_TOL, MAX_ENTRIES, VERSION

router = APIRouter()


class MatrixRequest(BaseModel):
    """Row-major matrix; ``null`` marks a missing cell."""
    matrix: list[list[float | None]]
    preprocess: bool = Field(False, description="abs() negatives and fill zeros before solving")


class VerifyRequest(MatrixRequest):
    tol: float = ETA_TOL


def _to_arrays(req: MatrixRequest) -> tuple[np.ndarray, np.ndarray]:
    rows = req.matrix
    if not rows or not rows[0]:
        raise InputFormatError("matrix is empty")
    if len({len(r) for r in rows}) != 1:
        raise InputFormatError("matrix rows differ in length")
    if len(rows) * len(rows[0]) > MAX_ENTRIES:
        raise InputFormatError(f"matrix larger than {MAX_ENTRIES} entries")
    values = np.array(rows, dtype=np.float64)  # None -> nan
    Phi = ~np.isnan(values)
    if not Phi.any():
        raise InputFormatError("every cell is missing")
    if not np.isfinite(values[Phi]).all():
        raise InputFormatError("observed cells must be finite")
    T = preprocess(values, Phi) if req.preprocess else values
    return Phi, T


@router.get("/api/status")
async def get_status():
    return JSONResponse({"status": "ok", "version": VERSION})


@router.post("/api/factorize")
def factorize(req: MatrixRequest):
    Phi, T = _to_arrays(req)
    res = a1gm(Phi, T)
    return JSONResponse({
        "c": res.c.tolist(),
        "d": res.d.tolist(),
        "masked_cost": res.masked_cost,
        "expanded_cost": res.expanded_cost,
        "increase_rate": res.increase_rate,
        "n_missing": res.n_missing,
        "n_missing_expanded": res.n_missing_expanded,
    })


@router.post("/api/verify")
def verify(req: VerifyRequest):
    Phi, T = _to_arrays(req)
    return JSONResponse(verify_result(Phi, T, req.tol))
