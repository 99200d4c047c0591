"""Request/response bodies for the HTTP service (and the CLI, which shares
the same handler layer).

Frame and model payloads use the on-disk document layout directly:
{"worlds": n, "box": [masks]} plus an optional "valuation" object.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class FrameDoc(BaseModel):
    worlds: int
    box: list[int]


class ModelDoc(FrameDoc):
    valuation: dict[str, int] = Field(default_factory=dict)


class ParseRequest(BaseModel):
    formula: str


class ParseResponse(BaseModel):
    formula: str
    subformulas: list[str]
    variables: list[str]
    variable_free: bool
    modal_depth: int


class EvalRequest(BaseModel):
    model: ModelDoc
    formula: str
    world: Optional[int] = None


class EvalResponse(BaseModel):
    truth_set: Optional[int] = None
    holds: Optional[bool] = None


class PropsRequest(BaseModel):
    frame: FrameDoc


class AxiomRow(BaseModel):
    axiom: str
    formula: str
    valid: bool
    property: str
    property_holds: bool
    mismatch: bool


class PropsResponse(BaseModel):
    reflexive: bool
    transitive: bool
    monotonic: bool
    regular: bool
    axioms: list[AxiomRow]
    axiom_mismatch: bool


TransformOp = Literal["supplement", "hat", "iclose", "rmclose"]


class TransformRequest(BaseModel):
    frame: FrameDoc
    op: TransformOp


class TransformResponse(BaseModel):
    frame: FrameDoc


FiltrationKindName = Literal["minimal", "transitive", "s04", "emc4"]


class FiltrateRequest(BaseModel):
    model: ModelDoc
    formula: str
    kind: FiltrationKindName


class FiltrationDoc(ModelDoc):
    partition: list[int]
    kind: str


class ClauseReport(BaseModel):
    worlds_ok: bool
    box_failures: list[str]
    valuation_failures: list[str]
    truth_failures: list[str]
    ok: bool


class FiltrateResponse(BaseModel):
    result: FiltrationDoc
    report: ClauseReport


FrameClassName = Literal["E", "E4", "EMC4", "S04"]


class SatRequest(BaseModel):
    formula: str
    frame_class: FrameClassName
    max_worlds: int = 3
    budget: int = 100_000
    seed: int = 0


class SatResponse(BaseModel):
    outcome: Literal["satisfiable", "unknown_up_to_bound"]
    model: Optional[ModelDoc] = None
    world: Optional[int] = None
    max_worlds: Optional[int] = None
    frames_examined: Optional[int] = None


class LemmasRequest(BaseModel):
    level: Literal["quick", "full"] = "quick"
    seed: int = 0


class LemmaRow(BaseModel):
    name: str
    passed: bool
    checked: int
    failures: list[str]
    seconds: float


class LemmasResponse(BaseModel):
    passed: bool
    lemmas: list[LemmaRow]
