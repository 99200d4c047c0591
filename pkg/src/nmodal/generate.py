"""Seeded random generators for frames, relations, models and formulas.

Everything takes an explicit random.Random so callers stay reproducible.
"""

from __future__ import annotations

import random
from typing import Sequence

from .formula import And, Box, Formula, Neg, Var, modal_depth
from .model import Frame, Model, Subset, kripke_to_neighborhood
from .transform import intersection_closure

__all__ = [
    "random_frame",
    "random_reflexive_frame",
    "random_regular_frame",
    "random_relation",
    "transitive_closure",
    "random_kripke_frame",
    "random_valuation",
    "random_model",
    "random_formula",
    "random_variable_free_text",
]


def random_frame(rng: random.Random, n: int) -> Frame:
    """Uniform over all box tables."""
    size = 1 << n
    bits = rng.getrandbits(n * size)
    mask = size - 1
    return Frame(n, tuple(bits >> (n * i) & mask for i in range(size)))


def random_reflexive_frame(rng: random.Random, n: int) -> Frame:
    """Uniform over reflexive tables: each entry is masked down into its index."""
    fr = random_frame(rng, n)
    return Frame(n, tuple(entry & x for x, entry in enumerate(fr.box)))


def random_regular_frame(rng: random.Random, n: int) -> Frame:
    """Regular by construction: the intersection closure of a random table."""
    return intersection_closure(random_frame(rng, n))


def random_relation(
    rng: random.Random, n: int, density: float = 0.35
) -> set[tuple[int, int]]:
    return {(w, v) for w in range(n) for v in range(n) if rng.random() < density}


def transitive_closure(relation: set[tuple[int, int]], n: int) -> set[tuple[int, int]]:
    closed = set(relation)
    for k in range(n):
        for i in range(n):
            if (i, k) in closed:
                for j in range(n):
                    if (k, j) in closed:
                        closed.add((i, j))
    return closed


def random_kripke_frame(
    rng: random.Random,
    n: int,
    transitive: bool = False,
    reflexive: bool = False,
    density: float = 0.35,
) -> Frame:
    rel = random_relation(rng, n, density)
    if reflexive:
        rel |= {(w, w) for w in range(n)}
    if transitive:
        rel = transitive_closure(rel, n)
    return kripke_to_neighborhood(n, rel)


def random_valuation(rng: random.Random, n: int, names: Sequence[str]) -> dict[str, Subset]:
    return {name: rng.getrandbits(n) for name in names}


def random_model(
    rng: random.Random, n: int, names: Sequence[str] = ("p", "q", "r")
) -> Model:
    return Model(random_frame(rng, n), random_valuation(rng, n, names))


def random_formula(
    rng: random.Random,
    names: Sequence[str] = ("p", "q", "r"),
    depth: int = 3,
    max_modal_depth: int | None = None,
) -> Formula:
    """Random AST with the given depth budget; optionally resamples until the
    box nesting stays within max_modal_depth."""
    while True:
        f = _random_formula(rng, names, depth)
        if max_modal_depth is None or modal_depth(f) <= max_modal_depth:
            return f


def _random_formula(rng: random.Random, names: Sequence[str], depth: int) -> Formula:
    if depth <= 0 or rng.random() < 0.25:
        return Var(rng.choice(names))
    roll = rng.random()
    if roll < 0.30:
        return Neg(_random_formula(rng, names, depth - 1))
    if roll < 0.60:
        return Box(_random_formula(rng, names, depth - 1))
    return And(
        _random_formula(rng, names, depth - 1),
        _random_formula(rng, names, depth - 1),
    )


def random_variable_free_text(rng: random.Random, depth: int = 3) -> str:
    """Surface syntax built only from top/bot and connectives."""
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice(("top", "bot"))
    roll = rng.random()
    if roll < 0.25:
        return "~" + _vf_tight(rng, depth - 1)
    if roll < 0.45:
        return "[]" + _vf_tight(rng, depth - 1)
    if roll < 0.6:
        return "<>" + _vf_tight(rng, depth - 1)
    op = rng.choice((" & ", " | ", " -> "))
    return _vf_tight(rng, depth - 1) + op + _vf_tight(rng, depth - 1)


def _vf_tight(rng: random.Random, depth: int) -> str:
    text = random_variable_free_text(rng, depth)
    if any(ch in text for ch in "&|-"):
        return "(" + text + ")"
    return text
