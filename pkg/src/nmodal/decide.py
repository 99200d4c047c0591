"""Bounded satisfiability search over small frames, plus per-frame axiom
reports.

The searcher is sound and bounded-complete only: a Satisfiable answer carries
a re-verified witness; UnknownUpToBound means no witness was found among the
candidates examined up to the world bound, nothing more.  Small world counts
are searched exhaustively (every box table), larger ones by seeded random
sampling, so results are reproducible for a fixed config.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .formula import Formula, Neg, render, variables
from .generate import random_frame, random_kripke_frame, random_reflexive_frame
from .model import (
    AXIOMS,
    PROPERTY_CHECKS,
    PROPERTY_FOR_AXIOM,
    Frame,
    FrameClass,
    Model,
    holds_at,
    satisfies_class,
    truth_set,
    valid_on_frame,
)
from .transform import rm_closure, supplement

__all__ = [
    "SearchConfig",
    "Satisfiable",
    "UnknownUpToBound",
    "SatResult",
    "bounded_sat",
    "countermodel",
    "AxiomCheck",
    "AxiomReport",
    "axiom_report",
]


@dataclass(frozen=True)
class SearchConfig:
    """max_worlds caps the frame size; world counts up to exhaustive_limit are
    enumerated outright, the rest get sample_budget random candidates each."""

    max_worlds: int = 3
    exhaustive_limit: int = 2
    sample_budget: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")
        if self.sample_budget < 0:
            raise ValueError("sample_budget must be nonnegative")
        if self.exhaustive_limit > self.max_worlds:
            object.__setattr__(self, "exhaustive_limit", self.max_worlds)


@dataclass(frozen=True)
class Satisfiable:
    model: Model
    world: int


@dataclass(frozen=True)
class UnknownUpToBound:
    max_worlds: int
    frames_examined: int


SatResult = Union[Satisfiable, UnknownUpToBound]


def _exhaustive_frames(n: int) -> Iterator[Frame]:
    size = 1 << n
    for table in itertools.product(range(size), repeat=size):
        yield Frame(n, table)


def _strategies(c: FrameClass) -> tuple[Callable[[random.Random, int], Frame], ...]:
    """Candidate generators biased toward the class; candidates still pass
    through satisfies_class before any valuation is tried."""
    uniform = random_frame
    if c is FrameClass.E:
        return (uniform,)
    if c is FrameClass.E4:
        return (
            uniform,
            lambda rng, n: random_kripke_frame(rng, n, transitive=True),
        )
    if c is FrameClass.EMC4:
        return (
            uniform,
            lambda rng, n: random_kripke_frame(rng, n, transitive=True),
            lambda rng, n: rm_closure(random_frame(rng, n)),
        )
    # S04: preorder relations give monotone + regular + transitive + reflexive
    return (
        uniform,
        lambda rng, n: random_kripke_frame(rng, n, transitive=True, reflexive=True),
        lambda rng, n: supplement(random_reflexive_frame(rng, n)),
    )


_FULL_ENUM_CAP = 512
_SAMPLED_VALUATIONS = 64


def _search_frame(
    fr: Frame, f: Formula, names: tuple[str, ...], rng: random.Random | None
) -> tuple[Model, int] | None:
    """A (model, world) witness on this frame, or None.

    Valuations are enumerated when there are few, sampled otherwise (sampling
    only happens in the randomized phase, where missing one is acceptable)."""
    size = fr.size
    total = size ** len(names)
    if rng is None or total <= _FULL_ENUM_CAP:
        assignments = itertools.product(range(size), repeat=len(names))
    else:
        assignments = (
            tuple(rng.randrange(size) for _ in names) for _ in range(_SAMPLED_VALUATIONS)
        )
    for assignment in assignments:
        m = Model(fr, dict(zip(names, assignment)))
        mask = truth_set(m, f)
        if mask:
            return m, (mask & -mask).bit_length() - 1
    return None


def bounded_sat(f: Formula, c: FrameClass, cfg: SearchConfig = SearchConfig()) -> SatResult:
    """Search for a class-c model of f with at most cfg.max_worlds worlds.

    Candidates are examined in ascending world count; the first witness found
    is re-verified (frame class and truth at the world) before being returned.
    """
    rng = random.Random(cfg.seed)
    names = tuple(sorted(variables(f)))
    examined = 0
    for n in range(1, cfg.max_worlds + 1):
        if n <= cfg.exhaustive_limit:
            candidates: Iterator[Frame] = _exhaustive_frames(n)
        else:
            strategies = _strategies(c)
            candidates = (
                strategies[i % len(strategies)](rng, n) for i in range(cfg.sample_budget)
            )
        for fr in candidates:
            examined += 1
            if not satisfies_class(fr, c):
                continue
            found = _search_frame(fr, f, names, rng if n > cfg.exhaustive_limit else None)
            if found is not None:
                m, w = found
                if not satisfies_class(m.frame, c) or not holds_at(m, w, f):
                    raise AssertionError("witness failed re-verification")
                return Satisfiable(m, w)
    return UnknownUpToBound(cfg.max_worlds, examined)


def countermodel(f: Formula, c: FrameClass, cfg: SearchConfig = SearchConfig()) -> SatResult:
    """A class-c model falsifying f somewhere: satisfiability of ~f."""
    return bounded_sat(Neg(f), c, cfg)


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    formula: str
    valid: bool
    frame_property: str
    property_holds: bool

    @property
    def mismatch(self) -> bool:
        return self.valid != self.property_holds

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "formula": self.formula,
            "valid": self.valid,
            "property": self.frame_property,
            "property_holds": self.property_holds,
            "mismatch": self.mismatch,
        }


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def mismatch(self) -> bool:
        return any(check.mismatch for check in self.checks)

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "mismatch": self.mismatch}


def axiom_report(fr: Frame) -> AxiomReport:
    """Validity of each axiom on the frame next to its frame property.

    The two columns must agree on every frame; a mismatch row would be a bug
    in one of the two routes, which is exactly what the report exists to
    surface.
    """
    checks = []
    for name, axiom in AXIOMS.items():
        prop = PROPERTY_FOR_AXIOM[name]
        checks.append(
            AxiomCheck(
                axiom=name,
                formula=render(axiom),
                valid=valid_on_frame(fr, axiom),
                frame_property=prop,
                property_holds=PROPERTY_CHECKS[prop](fr),
            )
        )
    return AxiomReport(tuple(checks))
