"""Local moves on Gauss codes: virtualization, Kauffman's twist, and R1/R2
insertions used to fuzz invariance."""

from __future__ import annotations

import random
from typing import Callable

from .diagram import Diagram, Passage, Role

# A location is a gap in a component code: (component index, gap index), where
# gap j sits just before passage j and gap len(code) is the end of the word.
Location = tuple[int, int]


def _check(d: Diagram, p: int) -> None:
    if not 0 <= p < d.crossing_count:
        raise KeyError(f"unknown crossing {p}")


def virtualize(d: Diagram, p: int) -> Diagram:
    """Replace real crossing ``p`` by a virtual one, i.e. delete its passages."""
    _check(d, p)
    return Diagram.from_components(
        [[q for q in comp if q.crossing != p] for comp in d.components]
    )


def kauffman_twist(d: Diagram, p: int) -> Diagram:
    """Exchange the over and under passages of ``p``, keeping the sign.

    Flanking the mirrored crossing by two virtual crossings turns the former
    over strand into the under strand of a crossing of the same sign.
    """
    _check(d, p)
    comps = []
    for comp in d.components:
        comps.append([
            Passage(q.crossing, q.role.opposite, q.sign) if q.crossing == p else q for q in comp
        ])
    return Diagram.from_components(comps)


def _gap(d: Diagram, loc: Location) -> None:
    ci, j = loc
    if not 0 <= ci < len(d.components):
        raise IndexError(f"no component {ci}")
    if not 0 <= j <= len(d.components[ci]):
        raise IndexError(f"gap {j} out of range for component {ci} of length {len(d.components[ci])}")


def insert_r1(d: Diagram, location: Location, sign: int = 1, over_first: bool = True) -> Diagram:
    """Insert a kink: two adjacent passages of one new crossing."""
    _gap(d, location)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    new = d.crossing_count
    first, second = (Role.OVER, Role.UNDER) if over_first else (Role.UNDER, Role.OVER)
    comps = [list(c) for c in d.components]
    ci, j = location
    comps[ci][j:j] = [Passage(new, first, sign), Passage(new, second, sign)]
    return Diagram.from_components(comps)


def insert_r2(
    d: Diagram,
    loc1: Location,
    loc2: Location,
    sign: int = 1,
    reverse: bool = False,
) -> Diagram:
    """Push the strand at ``loc1`` over the strand at ``loc2``.

    Two new crossings of opposite signs; the upper strand meets them in the
    order (j, k), the lower strand in the same order, or reversed when the
    strands run antiparallel (``reverse=True``).
    """
    _gap(d, loc1)
    _gap(d, loc2)
    if loc1 == loc2:
        raise IndexError("R2 needs two distinct gaps")
    if loc1[0] == loc2[0] and {loc1[1], loc2[1]} == {0, len(d.components[loc1[0]])}:
        raise IndexError("gaps 0 and len(code) are the same gap of a cyclic word")
    j, k = d.crossing_count, d.crossing_count + 1
    upper = [Passage(j, Role.OVER, sign), Passage(k, Role.OVER, -sign)]
    lower = [Passage(j, Role.UNDER, sign), Passage(k, Role.UNDER, -sign)]
    if reverse:
        lower.reverse()
    comps = [list(c) for c in d.components]
    # insert at the later gap first so the earlier index stays valid
    for (ci, g), block in sorted([(loc1, upper), (loc2, lower)], key=lambda t: t[0], reverse=True):
        comps[ci][g:g] = block
    return Diagram.from_components(comps)


def random_gap(d: Diagram, rng: random.Random) -> Location:
    ci = rng.randrange(len(d.components))
    return ci, rng.randrange(len(d.components[ci]) + 1)


def random_invariance_move(d: Diagram, rng: random.Random) -> tuple[str, Diagram]:
    """Apply one randomly chosen f-preserving move; returns its name too."""
    choices: list[tuple[str, Callable[[], Diagram]]] = [
        ("r1", lambda: insert_r1(d, random_gap(d, rng), rng.choice((1, -1)), rng.random() < 0.5)),
    ]
    if d.crossing_count:
        choices.append(("twist", lambda: kauffman_twist(d, rng.randrange(d.crossing_count))))
    gaps = [(ci, g) for ci, comp in enumerate(d.components) for g in range(max(1, len(comp)))]
    if len(gaps) >= 2:
        def r2() -> Diagram:
            a, b = rng.sample(gaps, 2)
            return insert_r2(d, a, b, rng.choice((1, -1)), rng.random() < 0.5)
        choices.append(("r2", r2))
    name, move = rng.choice(choices)
    return name, move()
