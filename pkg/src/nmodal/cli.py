"""Command line front end.

Batch only: read arguments and files, compute, print JSON to stdout (human
diagnostics go to stderr) and exit.  Exit codes: 0 success, 1 a property or
verification failure, 2 usage errors (including unparsable formulas),
3 malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import model
from .filtration import PreconditionError
from .formula import ParseError
from .service import handlers, schemas

__all__ = ["main"]


class _InputFileError(Exception):
    pass


def _load_json(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise _InputFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputFileError(f"{path} is not valid JSON: {exc}") from exc


def _load_frame_doc(path: str) -> schemas.FrameDoc:
    try:
        fr = model.frame_from_dict(_load_json(path))
    except ValueError as exc:
        raise _InputFileError(f"{path}: {exc}") from exc
    return schemas.FrameDoc(worlds=fr.n, box=list(fr.box))


def _load_model_doc(path: str) -> schemas.ModelDoc:
    try:
        m = model.model_from_dict(_load_json(path))
    except ValueError as exc:
        raise _InputFileError(f"{path}: {exc}") from exc
    return schemas.ModelDoc(
        worlds=m.frame.n, box=list(m.frame.box), valuation=dict(m.valuation)
    )


def _emit(doc: dict) -> None:
    print(json.dumps(doc))


def _cmd_parse(args: argparse.Namespace) -> int:
    resp = handlers.parse_formula(schemas.ParseRequest(formula=args.formula))
    _emit(resp.model_dump())
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    req = schemas.EvalRequest(
        model=_load_model_doc(args.model), formula=args.formula, world=args.world
    )
    resp = handlers.eval_model(req)
    if args.world is None:
        _emit({"truth_set": resp.truth_set})
    else:
        _emit({"holds": resp.holds})
    return 0


def _cmd_props(args: argparse.Namespace) -> int:
    resp = handlers.frame_props(schemas.PropsRequest(frame=_load_frame_doc(args.frame)))
    _emit(resp.model_dump())
    return 0


def _cmd_transform(args: argparse.Namespace) -> int:
    req = schemas.TransformRequest(frame=_load_frame_doc(args.frame), op=args.op)
    resp = handlers.transform_frame(req)
    _emit(resp.frame.model_dump())
    return 0


def _cmd_filtrate(args: argparse.Namespace) -> int:
    req = schemas.FiltrateRequest(
        model=_load_model_doc(args.model), formula=args.formula, kind=args.kind
    )
    resp = handlers.filtrate_model(req)
    _emit(resp.result.model_dump())
    report = resp.report
    if report.ok:
        print("verification: all clauses hold", file=sys.stderr)
        return 0
    for label, items in (
        ("box clause", report.box_failures),
        ("valuation clause", report.valuation_failures),
        ("truth equality", report.truth_failures),
    ):
        for item in items:
            print(f"verification failed: {label}: {item}", file=sys.stderr)
    if not report.worlds_ok:
        print("verification failed: partition/world clause", file=sys.stderr)
    return 1


def _cmd_sat(args: argparse.Namespace) -> int:
    req = schemas.SatRequest(
        formula=args.formula,
        frame_class=args.frame_class,
        max_worlds=args.max_worlds,
        budget=args.budget,
        seed=args.seed,
    )
    resp = handlers.sat_search(req)
    if resp.outcome == "satisfiable":
        doc = {"outcome": "satisfiable"}
        doc.update(resp.model.model_dump())
        doc["world"] = resp.world
        _emit(doc)
    else:
        _emit(
            {
                "outcome": "unknown_up_to_bound",
                "max_worlds": resp.max_worlds,
                "frames_examined": resp.frames_examined,
            }
        )
    return 0


def _cmd_lemmas(args: argparse.Namespace) -> int:
    resp = handlers.run_lemmas(schemas.LemmasRequest(level=args.level, seed=args.seed))
    for row in resp.lemmas:
        status = "PASS" if row.passed else "FAIL"
        print(
            f"{status} {row.name} (checked={row.checked}, {row.seconds:.2f}s)",
            file=sys.stderr,
        )
        for failure in row.failures:
            print(f"     {failure}", file=sys.stderr)
    _emit(resp.model_dump())
    return 0 if resp.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nmodal",
        description="Finite neighborhood models: evaluate formulas, transform "
        "frames, filtrate models, search for small witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula and show its core form")
    p.add_argument("formula")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("eval", help="truth set of a formula in a model file")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--formula", required=True)
    p.add_argument("--world", type=int, default=None, help="check one world instead")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("props", help="frame properties and the axiom report")
    p.add_argument("--frame", required=True, help="frame JSON file")
    p.set_defaults(func=_cmd_props)

    p = sub.add_parser("transform", help="apply a frame transform")
    p.add_argument("--frame", required=True, help="frame JSON file")
    p.add_argument(
        "--op", required=True, choices=("supplement", "hat", "iclose", "rmclose")
    )
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("filtrate", help="filtrate a model through a formula's subformulas")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--formula", required=True)
    p.add_argument(
        "--kind", required=True, choices=("minimal", "transitive", "s04", "emc4")
    )
    p.set_defaults(func=_cmd_filtrate)

    p = sub.add_parser("sat", help="bounded satisfiability search")
    p.add_argument("--formula", required=True)
    p.add_argument(
        "--class",
        dest="frame_class",
        required=True,
        choices=("E", "E4", "EMC4", "S04"),
    )
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("lemmas", help="run the property suites")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_lemmas)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _InputFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
