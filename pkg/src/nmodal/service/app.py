"""HTTP front end.  Run with:  uvicorn nmodal.service.app:app

Every endpoint is a stateless wrapper over the handler layer; malformed
formulas, bad frame documents and missing preconditions come back as 400
with the library's message.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..filtration import PreconditionError
from ..formula import ParseError
from . import handlers, schemas

app = FastAPI(
    title="nmodal",
    description="Finite neighborhood models: evaluation, frame transforms, "
    "filtrations and bounded satisfiability search.",
)


@app.exception_handler(ParseError)
@app.exception_handler(PreconditionError)
@app.exception_handler(ValueError)
async def _client_error(request: Request, exc: Exception) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
async def health() -> dict:
    return {"status": "ok"}


@app.post("/parse", response_model=schemas.ParseResponse)
async def parse_formula(req: schemas.ParseRequest) -> schemas.ParseResponse:
    return handlers.parse_formula(req)


@app.post("/eval", response_model=schemas.EvalResponse, response_model_exclude_none=True)
async def eval_model(req: schemas.EvalRequest) -> schemas.EvalResponse:
    return handlers.eval_model(req)


@app.post("/props", response_model=schemas.PropsResponse)
async def frame_props(req: schemas.PropsRequest) -> schemas.PropsResponse:
    return handlers.frame_props(req)


@app.post("/transform", response_model=schemas.TransformResponse)
async def transform_frame(req: schemas.TransformRequest) -> schemas.TransformResponse:
    return handlers.transform_frame(req)


@app.post("/filtrate", response_model=schemas.FiltrateResponse)
async def filtrate_model(req: schemas.FiltrateRequest) -> schemas.FiltrateResponse:
    return handlers.filtrate_model(req)


@app.post("/sat", response_model=schemas.SatResponse, response_model_exclude_none=True)
async def sat_search(req: schemas.SatRequest) -> schemas.SatResponse:
    return handlers.sat_search(req)


@app.post("/lemmas", response_model=schemas.LemmasResponse)
async def run_lemmas(req: schemas.LemmasRequest) -> schemas.LemmasResponse:
    return handlers.run_lemmas(req)
