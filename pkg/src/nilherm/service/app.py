"""FastAPI wrapper around the classification handlers.

Run with ``nilherm serve`` or ``uvicorn nilherm.service.app:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

import nilherm
from nilherm import catalog
from nilherm.errors import NilhermError
from nilherm.service import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="nilherm",
        version=nilherm.__version__,
        description=(
            "Classification of invariant almost Hermitian structures on "
            "6-dimensional nilpotent Lie algebras: point classification, "
            "moduli-space scans and theorem-verification suites."
        ),
    )

    @app.exception_handler(NilhermError)
    async def _domain_error(request: Request, exc: NilhermError):
        return JSONResponse(
            status_code=400,
            content=schemas.ErrorModel(error=str(exc), code=exc.code).model_dump(),
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": nilherm.__version__}

    @app.get("/algebras")
    def algebras():
        return {"catalog": list(catalog.names())}

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.ClassifyRequest):
        return handlers.handle_classify(req)

    @app.post("/scan", response_model=schemas.ScanResponse)
    def scan(req: schemas.ScanRequest):
        return handlers.handle_scan(req)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        return handlers.handle_verify(req)

    @app.post("/cohomology", response_model=schemas.CohomologyResponse)
    def cohomology(req: schemas.CohomologyRequest):
        return handlers.handle_cohomology(req)

    @app.post("/construct-cosymplectic", response_model=schemas.CosymplecticResponse)
    def construct_cosymplectic(req: schemas.CosymplecticRequest):
        return handlers.handle_cosymplectic(req)

    return app


app = create_app()
