"""a1gm Backend Server — FastAPI app assembly."""

import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from factorization.errors import A1GMError, InputFormatError, ShapeMismatchError

from .api.routes import router as api_router
from .config import LOG_LEVEL, VERSION

logger = logging.getLogger(__name__)

app = FastAPI(title="a1gm", version=VERSION)
app.include_router(api_router)


@app.exception_handler(A1GMError)
async def solver_error(request: Request, exc: A1GMError):
    # 400 for malformed input, 422 for data the solver rejects
    status = 400 if isinstance(exc, (InputFormatError, ShapeMismatchError)) else 422
    logger.info("%s %s -> %d %s", request.method, request.url.path, status, exc)
    return JSONResponse(
        {"status": "error", "error": type(exc).__name__, "message": str(exc)},
        status_code=status,
    )


@app.on_event("startup")
async def announce():
    logging.getLogger().setLevel(LOG_LEVEL.upper())
    print(f"[Server] a1gm {VERSION} ready")
