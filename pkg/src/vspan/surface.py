"""Abstract link diagram of a virtual diagram as a combinatorial map.

Each real crossing is a vertex with four darts in counterclockwise order
(see :func:`vspan.diagram.rotation_order`).  Edges pair an out-dart with the
next in-dart along its component.  Boundary components of the surface are
the orbits of ``rotation o edge``.  Free loops are annuli: one component,
two boundary circles, genus zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .diagram import (
    OI, OO, UI, UO,
    Diagram,
    Passage,
    Role,
    connected_components,
    is_alternating,
    rotation_order,
    splice_pairs,
)
from .statesum import special_states, trace_state


class GenusError(RuntimeError):
    """Euler characteristic bookkeeping produced a non-integral or negative genus."""


class NotAlternatingError(ValueError):
    pass


BLACK, WHITE = "black", "white"


@dataclass(frozen=True)
class CombMap:
    rotation: tuple[int, ...]   # counterclockwise successor of each dart
    edge: tuple[int, ...]       # fixed-point-free involution
    free_loops: int

    @property
    def vertices(self) -> int:
        return len(self.rotation) // 4

    @property
    def edge_count(self) -> int:
        return len(self.edge) // 2

    def face_permutation(self) -> list[int]:
        return [self.rotation[self.edge[d]] for d in range(len(self.edge))]


def build_comb_map(d: Diagram) -> CombMap:
    c = d.crossing_count
    rot = [0] * (4 * c)
    for k, sgn in enumerate(d.signs):
        order = rotation_order(sgn)
        for i, s in enumerate(order):
            rot[4 * k + s] = 4 * k + order[(i + 1) % 4]
    return CombMap(tuple(rot), tuple(d.alpha()), d.free_loops)


def _orbits(perm: list[int]) -> tuple[list[int], int]:
    label = [-1] * len(perm)
    n = 0
    for s in range(len(perm)):
        if label[s] >= 0:
            continue
        x = s
        while label[x] < 0:
            label[x] = n
            x = perm[x]
        n += 1
    return label, n


@dataclass(frozen=True)
class SurfaceSummary:
    boundary_count: int
    genus: int
    m: int
    crossing_count: int
    # boundary-component id of the corner ending at each dart, per crossing in
    # counterclockwise order starting from the over-in corner
    corner_faces: tuple[tuple[int, int, int, int], ...]
    face_of_dart: tuple[int, ...] = field(repr=False, default=())
    # (inner, outer) boundary ids of each free-loop annulus
    annuli: tuple[tuple[int, int], ...] = field(repr=False, default=())

    def is_proper_crossing(self, p: int) -> bool:
        return len(set(self.corner_faces[p])) == 4

    @property
    def proper(self) -> bool:
        return all(len(set(f)) == 4 for f in self.corner_faces)

    def to_json(self) -> dict:
        return {
            "boundary": self.boundary_count,
            "genus": self.genus,
            "m": self.m,
            "proper": self.proper,
            "crossings": [
                {"id": k + 1, "proper": len(set(f)) == 4, "faces": list(f)}
                for k, f in enumerate(self.corner_faces)
            ],
        }


def boundary_components(cmap: CombMap, signs: tuple[int, ...]) -> tuple[list[int], int, list[tuple[int, int]]]:
    """Face label of each dart, face count (annuli included), and annulus face ids."""
    label, n = _orbits(cmap.face_permutation())
    # the inverse composition traces the same surface
    inv = [cmap.edge[_inverse(cmap.rotation)[x]] for x in range(len(cmap.edge))]
    assert _orbits(inv)[1] == n, "face orbit count depends on composition order"
    annuli = []
    for _ in range(cmap.free_loops):
        annuli.append((n, n + 1))
        n += 2
    return label, n, annuli


def _inverse(perm: tuple[int, ...]) -> list[int]:
    inv = [0] * len(perm)
    for i, x in enumerate(perm):
        inv[x] = i
    return inv


def genus(d: Diagram) -> SurfaceSummary:
    """Supporting genus from ``(2m + c - #boundary) / 2``."""
    cmap = build_comb_map(d)
    label, nfaces, annuli = boundary_components(cmap, d.signs)
    m = connected_components(d).m
    c = d.crossing_count
    twice = 2 * m + c - nfaces
    if twice < 0 or twice % 2:
        raise GenusError(f"2m + c - #boundary = {twice} for {d.to_gauss()}")
    corners = []
    for k, sgn in enumerate(d.signs):
        corners.append(tuple(label[4 * k + s] for s in rotation_order(sgn)))
    return SurfaceSummary(
        boundary_count=nfaces,
        genus=twice // 2,
        m=m,
        crossing_count=c,
        corner_faces=tuple(corners),
        face_of_dart=tuple(label),
        annuli=tuple(annuli),
    )


def is_proper_crossing(d: Diagram, p: int) -> bool:
    if not 0 <= p < d.crossing_count:
        raise KeyError(f"unknown crossing {p}")
    return genus(d).is_proper_crossing(p)


def is_proper(d: Diagram) -> bool:
    return genus(d).proper


# ---------------------------------------------------------------------------
# checkerboard colorings


def _adjacency(d: Diagram, s: SurfaceSummary) -> list[tuple[int, int]]:
    """Pairs of boundary components across every half-edge."""
    rot = build_comb_map(d).rotation
    pairs = [(s.face_of_dart[x], s.face_of_dart[rot[x]]) for x in range(len(rot))]
    pairs.extend(s.annuli)
    return pairs


def checkerboard(d: Diagram) -> tuple[str, ...] | None:
    """Some 2-coloring of boundary components with adjacent ones distinct,
    or ``None`` when the face adjacency graph is not bipartite."""
    s = genus(d)
    adj: list[list[int]] = [[] for _ in range(s.boundary_count)]
    for a, b in _adjacency(d, s):
        if a == b:
            return None
        adj[a].append(b)
        adj[b].append(a)
    color: list[str | None] = [None] * s.boundary_count
    for root in range(s.boundary_count):
        if color[root] is not None:
            continue
        color[root] = BLACK
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                want = WHITE if color[x] == BLACK else BLACK
                if color[y] is None:
                    color[y] = want
                    queue.append(y)
                elif color[y] != want:
                    return None
    return tuple(color)  # type: ignore[arg-type]


def is_checkerboard(d: Diagram, coloring: tuple[str, ...]) -> bool:
    s = genus(d)
    return len(coloring) == s.boundary_count and all(
        coloring[a] != coloring[b] for a, b in _adjacency(d, s)
    )


def canonical_coloring(d: Diagram) -> tuple[str, ...]:
    """Walking rule: leaving a crossing as the over strand, the boundary on the
    right is black; leaving as the under strand, it is white.  The boundary on
    the left gets the other color.  Free-loop annuli color their first
    boundary black."""
    if not is_alternating(d):
        raise NotAlternatingError("canonical coloring needs an alternating diagram")
    s = genus(d)
    rot = build_comb_map(d).rotation
    color: list[str | None] = [None] * s.boundary_count

    def put(face: int, value: str) -> None:
        if color[face] is not None and color[face] != value:
            raise AssertionError(f"walking rule is incoherent on {d.to_gauss()}")
        color[face] = value

    for k in range(d.crossing_count):
        for slot, right in ((OO, BLACK), (UO, WHITE)):
            x = 4 * k + slot
            put(s.face_of_dart[x], right)
            put(s.face_of_dart[rot[x]], WHITE if right == BLACK else BLACK)
    for inner, outer in s.annuli:
        put(inner, BLACK)
        put(outer, WHITE)
    if any(c is None for c in color):
        raise AssertionError("walking rule left a boundary component uncolored")
    return tuple(color)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# state loops versus boundary components


@dataclass(frozen=True)
class StateBoundaryBijection:
    loops_a: int
    loops_b: int
    boundary_count: int
    # boundary component matched with each loop of the all-A / all-B state
    a_to_face: tuple[int, ...]
    b_to_face: tuple[int, ...]
    # per proper crossing: (two all-A loops differ, two all-B loops differ)
    distinct_at_proper: dict[int, tuple[bool, bool]]

    @property
    def ok(self) -> bool:
        return (
            self.loops_a + self.loops_b == self.boundary_count
            and all(a and b for a, b in self.distinct_at_proper.values())
        )


def _loop_faces(d: Diagram, s: SurfaceSummary, kind: str, labels: list[int], nloops: int) -> list[int]:
    """Boundary component hugged by each loop of the pure ``kind`` state."""
    rot = build_comb_map(d).rotation
    target: list[int | None] = [None] * nloops
    for k, sgn in enumerate(d.signs):
        for a, b in splice_pairs(sgn, kind):
            x, y = 4 * k + a, 4 * k + b
            # the arc runs along the corner between x and y
            face = s.face_of_dart[y] if rot[x] == y else s.face_of_dart[x]
            loop = labels[x]
            if target[loop] is None:
                target[loop] = face
            elif target[loop] != face:
                raise AssertionError(f"{kind}-loop {loop} runs along two boundary components")
    # free loops come last in the loop labels; pair with an annulus side
    base = nloops - d.free_loops
    for i, (inner, outer) in enumerate(s.annuli):
        target[base + i] = inner if kind == "A" else outer
    if any(t is None for t in target):
        raise AssertionError("state loop without a boundary component")
    return target  # type: ignore[return-value]


def state_boundary_bijection(d: Diagram) -> StateBoundaryBijection:
    """Match loops of the all-A and all-B states with boundary components.

    Each all-A loop bounds an annulus with a black boundary component and
    each all-B loop one with a white component, for the canonical coloring.
    Raises ``AssertionError`` if the matching is not a bijection onto the
    right color classes.
    """
    if not is_alternating(d):
        raise NotAlternatingError("the state-boundary bijection needs an alternating diagram")
    s = genus(d)
    colors = canonical_coloring(d)
    sa, sb = special_states(d)
    la, na = trace_state(d, sa)
    lb, nb = trace_state(d, sb)
    fa = _loop_faces(d, s, "A", la, na)
    fb = _loop_faces(d, s, "B", lb, nb)
    if len(set(fa)) != na or len(set(fb)) != nb or set(fa) & set(fb):
        raise AssertionError("state loops do not map injectively to boundary components")
    if any(colors[f] != BLACK for f in fa) or any(colors[f] != WHITE for f in fb):
        raise AssertionError("state loops matched with boundary of the wrong color")
    distinct = {}
    for k, sgn in enumerate(d.signs):
        if not s.is_proper_crossing(k):
            continue
        (a0, _), (a1, _) = splice_pairs(sgn, "A")
        (b0, _), (b1, _) = splice_pairs(sgn, "B")
        distinct[k] = (la[4 * k + a0] != la[4 * k + a1], lb[4 * k + b0] != lb[4 * k + b1])
    return StateBoundaryBijection(
        loops_a=na,
        loops_b=nb,
        boundary_count=s.boundary_count,
        a_to_face=tuple(fa),
        b_to_face=tuple(fb),
        distinct_at_proper=distinct,
    )


# ---------------------------------------------------------------------------
# v-alternating diagrams


def v_alternating_witness(d: Diagram) -> tuple[Diagram, int] | None:
    """A proper alternating diagram that yields ``d`` when one of its real
    crossings is virtualized, with the id of that crossing; ``None`` if
    there is none.

    Virtual crossings leave no trace in a Gauss code, so undoing a
    virtualization means inserting an over and an under passage of one new
    crossing into two gaps of the code.  Every placement and both signs are
    tried; alternation prunes most of them before the surface is built.
    """
    gaps = [(ci, j) for ci, comp in enumerate(d.components) for j in range(max(1, len(comp)))]
    new = d.crossing_count
    for over in gaps:
        for under in gaps:
            if over == under:
                continue
            for sgn in (1, -1):
                comps = [list(c) for c in d.components]
                # insert at the later gap first so the earlier index stays valid
                for (ci, j), role in sorted([(over, Role.OVER), (under, Role.UNDER)], reverse=True):
                    comps[ci].insert(j, Passage(new, role, sgn))
                cand = Diagram.from_components(comps)
                if is_alternating(cand) and genus(cand).proper:
                    ci, j = over
                    return cand, cand.components[ci][j].crossing
    return None


def is_v_alternating(d: Diagram) -> bool:
    return v_alternating_witness(d) is not None
