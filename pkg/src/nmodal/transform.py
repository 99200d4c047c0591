"""Frame transforms: supplementation, hat closure, intersection closure, and
their composition.

All four take a frame and return a new frame on the same worlds; inputs are
never mutated.
"""

from __future__ import annotations

from .model import Frame, subset_le

__all__ = [
    "supplement",
    "hat_closure",
    "intersection_closure",
    "intersection_closure_by_enumeration",
    "rm_closure",
]


def supplement(fr: Frame) -> Frame:
    """Close the table upward: box#[X] = union of box[Y] over all Y subset of X.

    Computed by the subset-lattice cumulative union (one pass per bit), which
    is O(2^n * n) instead of the naive O(4^n).  The result is always
    monotonic, and supplementation preserves reflexivity, transitivity and
    regularity.
    """
    table = list(fr.box)
    for i in range(fr.n):
        bit = 1 << i
        for x in range(fr.size):
            if x & bit:
                table[x] |= table[x ^ bit]
    return Frame(fr.n, tuple(table))


def hat_closure(fr: Frame) -> Frame:
    """X maps to itself when X is in the image of the box table, else to {}."""
    image = set(fr.box)
    return Frame(fr.n, tuple(x if x in image else 0 for x in range(fr.size)))


def intersection_closure(fr: Frame) -> Frame:
    """box*[X] = union of box[X1] & .. & box[Xk] over decompositions X = X1 & .. & Xk.

    Membership is decided without enumerating decompositions: every part of a
    decomposition of X is a superset of X, so w is in box*[X] iff the family
    F = {Y superset of X : w in box[Y]} is nonempty and intersects exactly to
    X (F itself is then a witnessing decomposition).  The result is always
    regular and extends the input table pointwise.
    """
    box = fr.box
    full = fr.full
    table = []
    for x in range(fr.size):
        members = 0
        for w in range(fr.n):
            wbit = 1 << w
            meet = full
            found = False
            y = x
            while True:  # supersets of x, ascending
                if box[y] & wbit:
                    found = True
                    meet &= y
                if y == full:
                    break
                y = (y + 1) | x
            if found and meet == x:
                members |= wbit
        table.append(members)
    return Frame(fr.n, tuple(table))


def intersection_closure_by_enumeration(fr: Frame) -> Frame:
    """Reference oracle for intersection_closure: enumerate every family of
    supersets of X outright and union the meets of their box values.

    Exponential in 2^n, so it refuses beyond 3 worlds; it exists to be checked
    against the fast route, not to be used.
    """
    if fr.n > 3:
        raise ValueError("enumeration oracle refuses frames with more than 3 worlds")
    box = fr.box
    full = fr.full
    table = []
    for x in range(fr.size):
        supersets = [y for y in range(fr.size) if subset_le(x, y)]
        members = 0
        for pick in range(1, 1 << len(supersets)):
            meet_idx = full
            meet_box = full
            for j, y in enumerate(supersets):
                if pick >> j & 1:
                    meet_idx &= y
                    meet_box &= box[y]
            if meet_idx == x:
                members |= meet_box
        table.append(members)
    return Frame(fr.n, tuple(table))


def rm_closure(fr: Frame, verify: bool = False) -> Frame:
    """Intersection closure followed by supplementation.

    The two closures commute; with verify=True the other order is computed
    too and a disagreement raises AssertionError (that would be a bug here,
    never expected data).
    """
    result = supplement(intersection_closure(fr))
    if verify:
        other = intersection_closure(supplement(fr))
        if result.box != other.box:
            raise AssertionError(
                "closure order mismatch: supplement-after-intersection and "
                "intersection-after-supplement disagree"
            )
    return result
