"""HTTP front end over the handler layer.

Run with: uvicorn biasedcube.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..cube import InputError, PreconditionError
from . import handlers, models

app = FastAPI(
    title="biasedcube",
    description="Exact analysis of Boolean functions and set families on the p-biased cube.",
    version="0.1.0",
)


@app.exception_handler(InputError)
async def input_error_handler(request: Request, exc: InputError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(PreconditionError)
async def precondition_error_handler(request: Request, exc: PreconditionError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": str(exc), "violations": list(exc.violations)},
    )


@app.get("/healthz")
async def healthz() -> dict:
    return {"status": "ok"}


@app.post("/check", response_model=models.CheckResponse)
async def check(request: models.CheckRequest) -> models.CheckResponse:
    return handlers.check(request)


@app.post("/measure", response_model=models.MeasureResponse)
async def measure(request: models.MeasureRequest) -> models.MeasureResponse:
    return handlers.measure(request)


@app.post("/spectrum", response_model=models.SpectrumResponse)
async def spectrum(request: models.SpectrumRequest) -> models.SpectrumResponse:
    return handlers.spectrum(request)


@app.post("/influence", response_model=models.InfluenceResponse)
async def influence(request: models.InfluenceRequest) -> models.InfluenceResponse:
    return handlers.influence(request)


@app.post("/hitting", response_model=models.HittingResponse)
async def hitting(request: models.HittingRequest) -> models.HittingResponse:
    return handlers.hitting(request)


@app.post("/verify", response_model=models.VerifyResponse)
async def verify(request: models.VerifyRequest) -> models.VerifyResponse:
    return handlers.verify(request)


@app.post("/enumerate", response_model=models.EnumerateResponse)
async def enumerate_families(request: models.EnumerateRequest) -> models.EnumerateResponse:
    return handlers.enumerate_families_handler(request)


@app.post("/search", response_model=models.SearchResponse)
async def search(request: models.SearchRequest) -> models.SearchResponse:
    return handlers.search(request)


@app.post("/sample", response_model=models.SampleResponse)
async def sample(request: models.SampleRequest) -> models.SampleResponse:
    return handlers.sample(request)
