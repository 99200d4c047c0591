"""Filtrations: collapse a model to classes of worlds that agree on a
subformula-closed formula set, with box tables repaired so truth of every
formula in the set survives the collapse.

Four constructions are provided:

* minimal: box entries defined only on quotients of truth sets of boxed
  members, empty elsewhere;
* transitive: minimal plus the hat closure of its own table (keeps
  transitivity of the source);
* s04: supplementation of the transitive one (wants a monotonic + transitive
  source);
* emc4: rm-closure of the transitive one (wants a transitive + monotonic +
  regular source).

verify_filtration re-checks the defining clauses and the truth-set equality
from scratch, so it serves as an independent oracle for all four.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .formula import Formula, SubformulaSet, render, subformula_closure
from .model import Frame, Model, Subset, truth_set
from .transform import hat_closure, rm_closure, supplement
from . import model as _model

__all__ = [
    "Partition",
    "partition_worlds",
    "quotient_subset",
    "FiltrationKind",
    "FiltrationResult",
    "PreconditionError",
    "minimal_filtration",
    "transitive_filtration",
    "s04_filtration",
    "emc4_filtration",
    "FiltrationReport",
    "verify_filtration",
    "filtration_result_to_dict",
]


@dataclass(frozen=True)
class Partition:
    """Equivalence classes of source worlds, as bitmasks over the source.

    Classes are indexed in ascending order of their least member (the
    representative), so class i of the quotient is a world i of the filtered
    model.
    """

    source_n: int
    classes: tuple[Subset, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(self.classes))
        union = 0
        for c in self.classes:
            if c == 0:
                raise ValueError("empty partition class")
            if union & c:
                raise ValueError("partition classes overlap")
            union |= c
        if union != (1 << self.source_n) - 1:
            raise ValueError("partition classes do not cover the worlds")
        reps = [(c & -c).bit_length() - 1 for c in self.classes]
        if reps != sorted(reps):
            raise ValueError("partition classes not ordered by representative")

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple((c & -c).bit_length() - 1 for c in self.classes)

    def class_of(self, world: int) -> int:
        for i, c in enumerate(self.classes):
            if c >> world & 1:
                return i
        raise ValueError(f"world {world} out of range")


def partition_worlds(m: Model, subformulas: SubformulaSet) -> Partition:
    """Group worlds by which members of the set they satisfy."""
    masks = [truth_set(m, f) for f in subformulas]
    groups: dict[tuple[bool, ...], int] = {}
    order: list[tuple[bool, ...]] = []
    for w in range(m.frame.n):
        sig = tuple(bool(mask >> w & 1) for mask in masks)
        if sig not in groups:
            groups[sig] = 0
            order.append(sig)
        groups[sig] |= 1 << w
    # First-occurrence order is ascending-representative order.
    return Partition(m.frame.n, tuple(groups[sig] for sig in order))


def quotient_subset(x: Subset, p: Partition) -> Subset:
    """The classes that meet x, as a bitmask over class indices."""
    out = 0
    for i, c in enumerate(p.classes):
        if x & c:
            out |= 1 << i
    return out


class FiltrationKind(str, Enum):
    MINIMAL = "minimal"
    TRANSITIVE = "transitive"
    S04 = "s04"
    EMC4 = "emc4"


@dataclass(frozen=True)
class FiltrationResult:
    model: Model
    partition: Partition
    subformulas: SubformulaSet
    kind: FiltrationKind


class PreconditionError(ValueError):
    """The source model lacks a frame property the construction requires."""


def _as_set(f: Formula | SubformulaSet) -> SubformulaSet:
    if isinstance(f, SubformulaSet):
        return f
    return subformula_closure(f)


def _quotient_valuation(m: Model, p: Partition, s: SubformulaSet) -> dict[str, Subset]:
    # Variables outside the set get the empty set (they carry no claim).
    return {name: quotient_subset(m.value(name), p) for name in s.variable_names()}


def minimal_filtration(m: Model, subformulas: Formula | SubformulaSet) -> FiltrationResult:
    """Define box only where the set forces it: the quotient of |g| maps to
    the quotient of |[]g| for each []g in the set; all other entries are {}.

    Distinct boxed members whose arguments share a quotient must agree on the
    image; a disagreement would contradict the construction's well-definedness
    and raises AssertionError.
    """
    s = _as_set(subformulas)
    p = partition_worlds(m, s)
    k = len(p.classes)
    table = [0] * (1 << k)
    assigned: dict[int, Formula] = {}
    for boxed in s.boxed():
        arg = quotient_subset(truth_set(m, boxed.child), p)
        img = quotient_subset(truth_set(m, boxed), p)
        if arg in assigned:
            if table[arg] != img:
                raise AssertionError(
                    f"box table ill-defined: {render(assigned[arg])} and "
                    f"{render(boxed)} disagree on a shared quotient argument"
                )
        else:
            assigned[arg] = boxed
            table[arg] = img
    filtered = Model(Frame(k, tuple(table)), _quotient_valuation(m, p, s))
    return FiltrationResult(filtered, p, s, FiltrationKind.MINIMAL)


def transitive_filtration(m: Model, subformulas: Formula | SubformulaSet) -> FiltrationResult:
    """Union the minimal table with its own hat closure.

    For a transitive source this is again a filtration and its frame is
    transitive; for a reflexive source the frame is reflexive.
    """
    base = minimal_filtration(m, subformulas)
    hat = hat_closure(base.model.frame)
    table = tuple(a | b for a, b in zip(base.model.frame.box, hat.box))
    filtered = Model(Frame(base.model.frame.n, table), base.model.valuation)
    return FiltrationResult(filtered, base.partition, base.subformulas, FiltrationKind.TRANSITIVE)


def _require(m: Model, props: tuple[str, ...]) -> None:
    for prop in props:
        if not _model.PROPERTY_CHECKS[prop](m.frame):
            raise PreconditionError(f"{prop} precondition failed")


def s04_filtration(m: Model, subformulas: Formula | SubformulaSet) -> FiltrationResult:
    """Supplementation of the transitive filtration.

    Requires a monotonic and transitive source; the output frame is monotonic
    and transitive, and reflexive when the source is.
    """
    _require(m, ("monotonic", "transitive"))
    base = transitive_filtration(m, subformulas)
    filtered = Model(supplement(base.model.frame), base.model.valuation)
    return FiltrationResult(filtered, base.partition, base.subformulas, FiltrationKind.S04)


def emc4_filtration(m: Model, subformulas: Formula | SubformulaSet) -> FiltrationResult:
    """rm-closure of the transitive filtration.

    Requires a transitive, monotonic and regular source; the output frame is
    monotonic, regular and transitive.
    """
    _require(m, ("transitive", "monotonic", "regular"))
    base = transitive_filtration(m, subformulas)
    filtered = Model(rm_closure(base.model.frame), base.model.valuation)
    return FiltrationResult(filtered, base.partition, base.subformulas, FiltrationKind.EMC4)


@dataclass(frozen=True)
class FiltrationReport:
    """Outcome of re-checking a FiltrationResult against its source model."""

    worlds_ok: bool
    box_failures: tuple[str, ...]
    valuation_failures: tuple[str, ...]
    truth_failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return (
            self.worlds_ok
            and not self.box_failures
            and not self.valuation_failures
            and not self.truth_failures
        )

    def to_dict(self) -> dict:
        return {
            "worlds_ok": self.worlds_ok,
            "box_failures": list(self.box_failures),
            "valuation_failures": list(self.valuation_failures),
            "truth_failures": list(self.truth_failures),
            "ok": self.ok,
        }


def verify_filtration(m: Model, result: FiltrationResult) -> FiltrationReport:
    """Re-check every defining clause plus the truth-set equality.

    * worlds: the partition is exactly the agreement classes of the set, and
      the filtered frame lives on the class indices;
    * box: for each []g in the set, the filtered table maps the quotient of
      |g| to the quotient of |[]g|;
    * valuation: each variable in the set is valued at the quotient of its
      source value;
    * truth: for every member f, the filtered truth set equals the quotient
      of the source truth set.
    """
    s = result.subformulas
    p = result.partition
    filtered = result.model
    worlds_ok = (
        p.source_n == m.frame.n
        and partition_worlds(m, s).classes == p.classes
        and filtered.frame.n == len(p.classes)
    )

    box_failures = []
    for boxed in s.boxed():
        arg = quotient_subset(truth_set(m, boxed.child), p)
        img = quotient_subset(truth_set(m, boxed), p)
        if filtered.frame.box[arg] != img:
            box_failures.append(render(boxed))

    valuation_failures = []
    for name in s.variable_names():
        if filtered.value(name) != quotient_subset(m.value(name), p):
            valuation_failures.append(name)

    truth_failures = []
    for f in s:
        if truth_set(filtered, f) != quotient_subset(truth_set(m, f), p):
            truth_failures.append(render(f))

    return FiltrationReport(
        worlds_ok, tuple(box_failures), tuple(valuation_failures), tuple(truth_failures)
    )


def filtration_result_to_dict(result: FiltrationResult) -> dict:
    doc = _model.model_to_dict(result.model)
    doc["partition"] = list(result.partition.classes)
    doc["kind"] = result.kind.value
    return doc
