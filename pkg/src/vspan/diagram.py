"""Virtual link diagrams as signed Gauss codes.

A diagram is a list of components, each a cyclic word of passages through
real crossings.  Virtual crossings leave no trace in the code.  A component
with no passages is a free loop, written ``()``.

Text grammar::

    diagram   := component (";" component)*
    component := "()" | token+
    token     := ("O" | "U") label ("+" | "-")

Labels are arbitrary nonnegative integers in the input; internally crossings
are renumbered ``0..c-1`` in order of first appearance and emitted 1-based.

This module is also the single source of truth for the dart conventions
shared by the state sum and the surface code.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence


class GaussCodeError(ValueError):
    """Syntax error in a Gauss code string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DiagramValidationError(ValueError):
    """A Gauss code that parses but does not describe a diagram."""


class Role(str, Enum):
    OVER = "O"
    UNDER = "U"

    @property
    def opposite(self) -> "Role":
        return Role.UNDER if self is Role.OVER else Role.OVER


@dataclass(frozen=True)
class Passage:
    crossing: int
    role: Role
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise DiagramValidationError(f"sign must be +1 or -1, got {self.sign!r}")
        if not isinstance(self.role, Role):
            object.__setattr__(self, "role", Role(self.role))


# Dart slots of crossing k are 4*k + slot.
OI, OO, UI, UO = 0, 1, 2, 3

# Counterclockwise order of the four slots around a crossing.
_ROTATION = {1: (OI, UI, OO, UO), -1: (OI, UO, OO, UI)}


def dart(crossing: int, role: Role, outgoing: bool) -> int:
    slot = (OO if outgoing else OI) if role is Role.OVER else (UO if outgoing else UI)
    return 4 * crossing + slot


def rotation_order(sign: int) -> tuple[int, int, int, int]:
    """Slots of a crossing of the given sign in counterclockwise order."""
    return _ROTATION[sign]


def _corner_pairs(sign: int, corner_after_over: bool) -> tuple[tuple[int, int], tuple[int, int]]:
    rot = _ROTATION[sign]
    pairs = []
    for i, s in enumerate(rot):
        nxt = rot[(i + 1) % 4]
        if (s in (OI, OO)) == corner_after_over:
            pairs.append((s, nxt))
    return pairs[0], pairs[1]


def splice_pairs(sign: int, kind: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """Slot pairs reconnected by an A- or B-splice at a crossing of ``sign``.

    The corner counterclockwise after an over slot is an A-corner.  An
    A-splice merges the two A-corners, so the resulting arcs hug the two
    B-corners and pair their slots; a B-splice does the opposite.
    """
    if kind == "A":
        return _corner_pairs(sign, corner_after_over=False)
    if kind == "B":
        return _corner_pairs(sign, corner_after_over=True)
    raise ValueError(f"splice kind must be 'A' or 'B', got {kind!r}")


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple[frozenset[int], ...]

    @property
    def m(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True, eq=True)
class Diagram:
    """A validated virtual link diagram.

    Build through :func:`parse_gauss` or :meth:`Diagram.from_components`; both
    normalize crossing ids to ``0..c-1`` in first-appearance order.
    """

    components: tuple[tuple[Passage, ...], ...]
    labels: tuple[int, ...] = field(default=(), compare=False, repr=False)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_components(
        cls,
        components: Iterable[Sequence[Passage | tuple]],
        labels: Sequence[int] | None = None,
    ) -> "Diagram":
        """Validate and normalize raw component words.

        Passages may be given as :class:`Passage` or ``(crossing, role, sign)``
        tuples.  ``labels`` optionally names the external label of each raw
        crossing id; by default labels are the 1-based emitted ids.
        """
        raw = []
        for comp in components:
            word = []
            for p in comp:
                if not isinstance(p, Passage):
                    p = Passage(p[0], Role(p[1]), p[2])
                word.append(p)
            raw.append(word)
        if not raw:
            raise DiagramValidationError("a diagram needs at least one component")

        seen: dict[int, list[Passage]] = {}
        order: list[int] = []
        for word in raw:
            for p in word:
                if p.crossing not in seen:
                    seen[p.crossing] = []
                    order.append(p.crossing)
                seen[p.crossing].append(p)
        for k in order:
            ps = seen[k]
            name = labels[k] if labels is not None else k
            if len(ps) != 2:
                raise DiagramValidationError(f"crossing {name} occurs {len(ps)} times, expected 2")
            if ps[0].role is ps[1].role:
                raise DiagramValidationError(f"crossing {name} has two {ps[0].role.name} passages")
            if ps[0].sign != ps[1].sign:
                raise DiagramValidationError(f"crossing {name} has inconsistent signs")

        renum = {k: i for i, k in enumerate(order)}
        comps = tuple(
            tuple(Passage(renum[p.crossing], p.role, p.sign) for p in word) for word in raw
        )
        if labels is not None:
            ext = tuple(labels[k] for k in order)
        else:
            ext = tuple(range(1, len(order) + 1))
        return cls(comps, ext)

    # -- basic queries ----------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return sum(len(c) for c in self.components) // 2

    def crossings(self) -> range:
        return range(self.crossing_count)

    @property
    def free_loops(self) -> int:
        return sum(1 for c in self.components if not c)

    def sign(self, crossing: int) -> int:
        return self.signs[crossing]

    @property
    def signs(self) -> tuple[int, ...]:
        out = [0] * self.crossing_count
        for comp in self.components:
            for p in comp:
                out[p.crossing] = p.sign
        return tuple(out)

    def locate(self, crossing: int) -> dict[Role, tuple[int, int]]:
        """Positions ``(component, index)`` of both passages of a crossing."""
        self._check_crossing(crossing)
        where = {}
        for ci, comp in enumerate(self.components):
            for j, p in enumerate(comp):
                if p.crossing == crossing:
                    where[p.role] = (ci, j)
        return where

    def crossing_from_label(self, label: int) -> int:
        """Internal id of the crossing written as ``label`` in the source code."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no crossing labelled {label}") from None

    def _check_crossing(self, crossing: int) -> None:
        if not 0 <= crossing < self.crossing_count:
            raise KeyError(f"unknown crossing {crossing}")

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges of the underlying 4-valent graph as ``(out_dart, in_dart)``."""
        for comp in self.components:
            n = len(comp)
            for j, p in enumerate(comp):
                q = comp[(j + 1) % n]
                yield dart(p.crossing, p.role, True), dart(q.crossing, q.role, False)

    def alpha(self) -> list[int]:
        """Edge involution on darts."""
        a = [0] * (4 * self.crossing_count)
        for o, i in self.edges():
            a[o] = i
            a[i] = o
        return a

    # -- text -----------------------------------------------------------

    def to_gauss(self) -> str:
        parts = []
        for comp in self.components:
            if not comp:
                parts.append("()")
            else:
                parts.append(
                    "".join(f"{p.role.value}{p.crossing + 1}{'+' if p.sign > 0 else '-'}" for p in comp)
                )
        return " ; ".join(parts)

    def __str__(self) -> str:
        return self.to_gauss()

    def to_json(self) -> dict:
        return {
            "components": [
                [{"id": p.crossing + 1, "role": p.role.value, "sign": p.sign} for p in comp]
                for comp in self.components
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        try:
            comps = [
                [(int(t["id"]), Role(t["role"]), int(t["sign"])) for t in comp]
                for comp in data["components"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramValidationError(f"malformed diagram JSON: {exc}") from exc
        return cls.from_components(comps)

    def canonical_key(self) -> str:
        """Representative string invariant under relabeling, rotation of each
        component and reordering of components.  Exponential in the number of
        components; meant for tests and small diagrams."""
        from itertools import permutations

        best = None
        comps = self.components
        for perm in permutations(range(len(comps))):
            for key in _rotations_key([comps[i] for i in perm]):
                if best is None or key < best:
                    best = key
        return best or ""


def _rotations_key(comps: list[tuple[Passage, ...]]) -> Iterator[str]:
    from itertools import product

    ranges = [range(max(1, len(c))) for c in comps]
    for shifts in product(*ranges):
        rotated = [c[s:] + c[:s] for c, s in zip(comps, shifts)]
        yield Diagram.from_components(rotated).to_gauss()


_TOKEN = re.compile(r"([OU])(\d+)([+\-−])")


def parse_gauss(text: str) -> Diagram:
    """Parse the textual Gauss-code notation into a validated :class:`Diagram`.

    >>> parse_gauss("O1+U2+O3+U1+O2+U3+").crossing_count
    3
    """
    comps: list[list[tuple[int, Role, int]]] = []
    pos = 0
    n = len(text)
    current: list[tuple[int, Role, int]] = []
    tokens_in_current = 0
    free = False

    def close(at: int) -> None:
        nonlocal current, tokens_in_current, free
        if not tokens_in_current and not free:
            raise GaussCodeError("empty component", at)
        comps.append(current)
        current, tokens_in_current, free = [], 0, False

    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == ";":
            close(pos)
            pos += 1
            continue
        if text.startswith("()", pos):
            if tokens_in_current or free:
                raise GaussCodeError("'()' must stand alone in its component", pos)
            free = True
            pos += 2
            continue
        if free:
            raise GaussCodeError("'()' must stand alone in its component", pos)
        m = _TOKEN.match(text, pos)
        if m is None:
            end = pos
            while end < n and not text[end].isspace() and text[end] != ";":
                end += 1
                if end < n and text[end] in "OU" and end > pos:
                    break
            tok = text[pos:end] or text[pos]
            if re.fullmatch(r"[OU]\d+", tok):
                raise GaussCodeError(f"sign missing on token {tok!r}", pos)
            raise GaussCodeError(f"bad token {tok!r}", pos)
        role = Role(m.group(1))
        sign = 1 if m.group(3) == "+" else -1
        current.append((int(m.group(2)), role, sign))
        tokens_in_current += 1
        pos = m.end()
    close(pos)
    labels = sorted({k for comp in comps for k, _, _ in comp})
    idx = {k: i for i, k in enumerate(labels)}
    # from_components reports errors by raw id, so hand it the external labels
    raw = [[(idx[k], r, s) for k, r, s in comp] for comp in comps]
    return Diagram.from_components(raw, labels=labels)


def writhe(d: Diagram) -> int:
    return sum(d.signs)


def connected_components(d: Diagram) -> ComponentPartition:
    """Group components linked through chains of shared real crossings."""
    parent = list(range(len(d.components)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[int, int] = {}
    for ci, comp in enumerate(d.components):
        for p in comp:
            if p.crossing in owner:
                a, b = find(owner[p.crossing]), find(ci)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                owner[p.crossing] = ci
    groups: dict[int, set[int]] = {}
    for ci in range(len(d.components)):
        groups.setdefault(find(ci), set()).add(ci)
    return ComponentPartition(tuple(frozenset(g) for _, g in sorted(groups.items())))


def is_alternating(d: Diagram) -> bool:
    """Roles alternate along every component, read cyclically.

    A free loop is vacuously alternating.  A component with a single passage
    is not: its only edge returns to the same passage, so the passage is its
    own cyclic neighbour.
    """
    for comp in d.components:
        n = len(comp)
        if n == 0:
            continue
        if n == 1:
            return False
        for j in range(n):
            if comp[j].role is comp[(j + 1) % n].role:
                return False
    return True
