"""Finite neighborhood frames and models over bitmask subsets.

A frame is a world count n (1..16) plus a table `box` of length 2^n: entry
`box[X]` is the subset of worlds where "box holds of X".  Subsets of worlds
are plain unsigned ints, world i <-> bit i (little-endian: world 0 is bit 0),
so subset algebra is `& | ^ ~`-on-masked-ints and the table is just a tuple.

Everything here is immutable and pure; values can be shared freely across
threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .formula import Box, Formula, Neg, Var, parse, variables

__all__ = [
    "Subset",
    "MAX_WORLDS",
    "full_mask",
    "subset_le",
    "iter_worlds",
    "Frame",
    "validate_frame",
    "Valuation",
    "Model",
    "truth_set",
    "holds_at",
    "valid_on_frame",
    "logical_consequence",
    "is_reflexive",
    "is_transitive",
    "is_monotonic",
    "is_regular",
    "PROPERTY_CHECKS",
    "AXIOMS",
    "AXIOM_FOR_PROPERTY",
    "PROPERTY_FOR_AXIOM",
    "FrameClass",
    "satisfies_class",
    "kripke_to_neighborhood",
    "frame_to_dict",
    "frame_from_dict",
    "model_to_dict",
    "model_from_dict",
]

Subset = int
MAX_WORLDS = 16


def full_mask(n: int) -> Subset:
    return (1 << n) - 1


def subset_le(a: Subset, b: Subset) -> bool:
    """a is a subset of b."""
    return a | b == b


def iter_worlds(x: Subset) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Frame:
    """(W, box) with W = {0, .., n-1} and box a total table on subsets."""

    n: int
    box: tuple[Subset, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError("world count must be an integer")
        if not 1 <= self.n <= MAX_WORLDS:
            raise ValueError(f"world count must be between 1 and {MAX_WORLDS}")
        object.__setattr__(self, "box", tuple(self.box))
        size = 1 << self.n
        if len(self.box) != size:
            raise ValueError(f"box table must have length {size}, got {len(self.box)}")
        full = size - 1
        for x, entry in enumerate(self.box):
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise ValueError(f"box[{x}] must be an integer")
            if not 0 <= entry <= full:
                raise ValueError(f"box[{x}] = {entry} exceeds the world range")

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def full(self) -> Subset:
        return (1 << self.n) - 1


def validate_frame(n: int, table: Iterable[Subset]) -> Frame:
    """Build a frame, checking n and the table; raises ValueError otherwise."""
    return Frame(n, tuple(table))


Valuation = Mapping[str, Subset]


@dataclass(frozen=True)
class Model:
    frame: Frame
    valuation: Valuation = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "valuation", dict(self.valuation))
        full = self.frame.full
        for name, mask in self.valuation.items():
            if not isinstance(mask, int) or isinstance(mask, bool) or not 0 <= mask <= full:
                raise ValueError(f"valuation of {name!r} is not a subset of the worlds")

    def value(self, name: str) -> Subset:
        # Unmapped variables denote the empty set.
        return self.valuation.get(name, 0)


def truth_set(m: Model, f: Formula) -> Subset:
    """|f| in m, as a bitmask.  Memoizes on (shared) subformulas."""
    full = m.frame.full
    box = m.frame.box
    memo: dict[Formula, Subset] = {}

    def go(g: Formula) -> Subset:
        cached = memo.get(g)
        if cached is not None:
            return cached
        if isinstance(g, Var):
            result = m.value(g.name)
        elif isinstance(g, Neg):
            result = full & ~go(g.child)
        elif isinstance(g, Box):
            result = box[go(g.child)]
        else:
            result = go(g.left) & go(g.right)
        memo[g] = result
        return result

    return go(f)


def holds_at(m: Model, w: int, f: Formula) -> bool:
    if not 0 <= w < m.frame.n:
        raise ValueError(f"world {w} out of range for {m.frame.n} worlds")
    return bool(truth_set(m, f) >> w & 1)


def valid_on_frame(fr: Frame, f: Formula) -> bool:
    """True iff f holds everywhere under every valuation of its variables.

    Enumerates all 2^(n*k) valuations, so it refuses when n*k > 24.
    """
    names = sorted(variables(f))
    k = len(names)
    if fr.n * k > 24:
        raise ValueError(
            f"validity check refused: {fr.n} worlds x {k} variables "
            f"exceeds the 2^24 valuation budget"
        )
    full = fr.full
    for assignment in itertools.product(range(fr.size), repeat=k):
        m = Model(fr, dict(zip(names, assignment)))
        if truth_set(m, f) != full:
            return False
    return True


def logical_consequence(
    models: Iterable[Model], premises: Iterable[Formula], conclusion: Formula
) -> bool:
    """Every world of every given model satisfying all premises satisfies the
    conclusion.  This checks only the supplied finite collection; it carries
    no completeness meaning beyond it.
    """
    premises = tuple(premises)
    for m in models:
        where = m.frame.full
        for p in premises:
            where &= truth_set(m, p)
        if not subset_le(where, truth_set(m, conclusion)):
            return False
    return True


# ---------------------------------------------------------------------------
# Frame properties.  Each is the exhaustive defining inclusion over all
# subsets (or pairs of subsets), which is fine at the table sizes we keep.

def is_reflexive(fr: Frame) -> bool:
    """box[X] is a subset of X, for every X."""
    return all(subset_le(fr.box[x], x) for x in range(fr.size))


def is_transitive(fr: Frame) -> bool:
    """box[X] is a subset of box[box[X]], for every X."""
    box = fr.box
    return all(subset_le(box[x], box[box[x]]) for x in range(fr.size))


def is_monotonic(fr: Frame) -> bool:
    """X subset of Y implies box[X] subset of box[Y]."""
    box = fr.box
    full = fr.full
    for x in range(fr.size):
        bx = box[x]
        y = x
        while True:  # enumerate supersets of x
            if not subset_le(bx, box[y]):
                return False
            if y == full:
                break
            y = (y + 1) | x
    return True


def is_regular(fr: Frame) -> bool:
    """box[X] & box[Y] is a subset of box[X & Y], for all X, Y."""
    box = fr.box
    for x in range(fr.size):
        bx = box[x]
        for y in range(x, fr.size):
            if not subset_le(bx & box[y], box[x & y]):
                return False
    return True


PROPERTY_CHECKS = {
    "reflexive": is_reflexive,
    "transitive": is_transitive,
    "monotonic": is_monotonic,
    "regular": is_regular,
}

# The axiom schemas and the frame property each one corresponds to
# (validity of the axiom on a frame is equivalent to the property).
AXIOMS: dict[str, Formula] = {
    "T": parse("[]p -> p"),
    "M": parse("[](p & q) -> ([]p & []q)"),
    "C": parse("([]p & []q) -> [](p & q)"),
    "4": parse("[]p -> [][]p"),
}
PROPERTY_FOR_AXIOM = {"T": "reflexive", "M": "monotonic", "C": "regular", "4": "transitive"}
AXIOM_FOR_PROPERTY = {v: k for k, v in PROPERTY_FOR_AXIOM.items()}
_AXIOM_ORDER = ("T", "M", "C", "4")


class FrameClass(Enum):
    """Frame classes named by their axiom systems; values are the defining
    frame properties."""

    E = frozenset()
    E4 = frozenset({"transitive"})
    EMC4 = frozenset({"transitive", "monotonic", "regular"})
    S04 = frozenset({"transitive", "monotonic", "reflexive"})

    @property
    def properties(self) -> frozenset[str]:
        return self.value

    @property
    def axiom_names(self) -> tuple[str, ...]:
        return tuple(a for a in _AXIOM_ORDER if PROPERTY_FOR_AXIOM[a] in self.value)


def satisfies_class(fr: Frame, c: FrameClass) -> bool:
    return all(PROPERTY_CHECKS[p](fr) for p in c.properties)


def kripke_to_neighborhood(n: int, relation: Iterable[tuple[int, int]]) -> Frame:
    """box[X] = the worlds whose relational successors all lie in X.

    The result is always monotonic and regular; a transitive (reflexive)
    relation yields a transitive (reflexive) frame.
    """
    succ = [0] * n
    for w, v in relation:
        if not (0 <= w < n and 0 <= v < n):
            raise ValueError(f"relation pair ({w}, {v}) out of range for {n} worlds")
        succ[w] |= 1 << v
    table = []
    for x in range(1 << n):
        members = 0
        for w in range(n):
            if subset_le(succ[w], x):
                members |= 1 << w
        table.append(members)
    return Frame(n, tuple(table))


# ---------------------------------------------------------------------------
# JSON documents.  {"worlds": n, "box": [..]} for frames; models add
# {"valuation": {"p": mask, ..}}.  Readers ignore unknown keys so documents
# produced by richer operations (partitions, witness metadata) stay loadable.

def frame_to_dict(fr: Frame) -> dict:
    return {"worlds": fr.n, "box": list(fr.box)}


def model_to_dict(m: Model) -> dict:
    doc = frame_to_dict(m.frame)
    doc["valuation"] = {name: m.valuation[name] for name in sorted(m.valuation)}
    return doc


def frame_from_dict(doc: object) -> Frame:
    if not isinstance(doc, dict):
        raise ValueError("frame document must be a JSON object")
    if "worlds" not in doc or "box" not in doc:
        raise ValueError('frame document needs "worlds" and "box"')
    n = doc["worlds"]
    table = doc["box"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError('"worlds" must be an integer')
    if not isinstance(table, list):
        raise ValueError('"box" must be a list of subset masks')
    return Frame(n, tuple(table))


def model_from_dict(doc: object) -> Model:
    fr = frame_from_dict(doc)
    valuation = doc.get("valuation", {})  # type: ignore[union-attr]
    if valuation is None:
        valuation = {}
    if not isinstance(valuation, dict):
        raise ValueError('"valuation" must be an object mapping names to masks')
    for name in valuation:
        Var(name)  # perform the name validation
    return Model(fr, valuation)
