"""The operation layer shared by the HTTP app and the CLI.

Each handler maps a request body to a response body and raises library
exceptions (ParseError, PreconditionError, ValueError) untranslated; the two
front ends turn those into HTTP status codes or exit codes as fits.
"""

from __future__ import annotations

from .. import decide, filtration, model, suites, transform
from ..formula import (
    is_variable_free,
    modal_depth,
    parse,
    render,
    subformula_closure,
    variables,
)
from . import schemas

__all__ = [
    "parse_formula",
    "eval_model",
    "frame_props",
    "transform_frame",
    "filtrate_model",
    "sat_search",
    "run_lemmas",
]

_TRANSFORMS = {
    "supplement": transform.supplement,
    "hat": transform.hat_closure,
    "iclose": transform.intersection_closure,
    "rmclose": transform.rm_closure,
}

_FILTRATIONS = {
    "minimal": filtration.minimal_filtration,
    "transitive": filtration.transitive_filtration,
    "s04": filtration.s04_filtration,
    "emc4": filtration.emc4_filtration,
}


def _to_frame(doc: schemas.FrameDoc) -> model.Frame:
    return model.Frame(doc.worlds, tuple(doc.box))


def _to_model(doc: schemas.ModelDoc) -> model.Model:
    return model.Model(_to_frame(doc), doc.valuation)


def _frame_doc(fr: model.Frame) -> schemas.FrameDoc:
    return schemas.FrameDoc(worlds=fr.n, box=list(fr.box))


def _model_doc(m: model.Model) -> schemas.ModelDoc:
    return schemas.ModelDoc(
        worlds=m.frame.n,
        box=list(m.frame.box),
        valuation={name: m.valuation[name] for name in sorted(m.valuation)},
    )


def parse_formula(req: schemas.ParseRequest) -> schemas.ParseResponse:
    f = parse(req.formula)
    return schemas.ParseResponse(
        formula=render(f),
        subformulas=[render(g) for g in subformula_closure(f)],
        variables=sorted(variables(f)),
        variable_free=is_variable_free(req.formula),
        modal_depth=modal_depth(f),
    )


def eval_model(req: schemas.EvalRequest) -> schemas.EvalResponse:
    m = _to_model(req.model)
    f = parse(req.formula)
    if req.world is None:
        return schemas.EvalResponse(truth_set=model.truth_set(m, f))
    return schemas.EvalResponse(holds=model.holds_at(m, req.world, f))


def frame_props(req: schemas.PropsRequest) -> schemas.PropsResponse:
    fr = _to_frame(req.frame)
    report = decide.axiom_report(fr)
    rows = [
        schemas.AxiomRow(
            axiom=c.axiom,
            formula=c.formula,
            valid=c.valid,
            property=c.frame_property,
            property_holds=c.property_holds,
            mismatch=c.mismatch,
        )
        for c in report.checks
    ]
    return schemas.PropsResponse(
        reflexive=model.is_reflexive(fr),
        transitive=model.is_transitive(fr),
        monotonic=model.is_monotonic(fr),
        regular=model.is_regular(fr),
        axioms=rows,
        axiom_mismatch=report.mismatch,
    )


def transform_frame(req: schemas.TransformRequest) -> schemas.TransformResponse:
    fr = _to_frame(req.frame)
    return schemas.TransformResponse(frame=_frame_doc(_TRANSFORMS[req.op](fr)))


def filtrate_model(req: schemas.FiltrateRequest) -> schemas.FiltrateResponse:
    m = _to_model(req.model)
    f = parse(req.formula)
    result = _FILTRATIONS[req.kind](m, f)
    report = filtration.verify_filtration(m, result)
    doc = schemas.FiltrationDoc(
        worlds=result.model.frame.n,
        box=list(result.model.frame.box),
        valuation={n: result.model.valuation[n] for n in sorted(result.model.valuation)},
        partition=list(result.partition.classes),
        kind=result.kind.value,
    )
    return schemas.FiltrateResponse(
        result=doc, report=schemas.ClauseReport(**report.to_dict())
    )


def sat_search(req: schemas.SatRequest) -> schemas.SatResponse:
    f = parse(req.formula)
    cfg = decide.SearchConfig(
        max_worlds=req.max_worlds, sample_budget=req.budget, seed=req.seed
    )
    result = decide.bounded_sat(f, model.FrameClass[req.frame_class], cfg)
    if isinstance(result, decide.Satisfiable):
        return schemas.SatResponse(
            outcome="satisfiable", model=_model_doc(result.model), world=result.world
        )
    return schemas.SatResponse(
        outcome="unknown_up_to_bound",
        max_worlds=result.max_worlds,
        frames_examined=result.frames_examined,
    )


def run_lemmas(req: schemas.LemmasRequest) -> schemas.LemmasResponse:
    results = suites.run_suites(level=req.level, seed=req.seed)
    rows = [
        schemas.LemmaRow(
            name=r.name,
            passed=r.passed,
            checked=r.checked,
            failures=list(r.failures),
            seconds=round(r.seconds, 3),
        )
        for r in results
    ]
    return schemas.LemmasResponse(passed=all(r.passed for r in results), lemmas=rows)
