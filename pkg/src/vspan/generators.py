"""Diagram families and random samplers."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import OI, OO, UI, UO, Diagram, Passage, Role, is_alternating, parse_gauss, rotation_order


class SamplingBudgetError(RuntimeError):
    def __init__(self, attempts: int, what: str):
        super().__init__(f"no {what} found after {attempts} attempts")
        self.attempts = attempts


class GeneratorSelfCheckError(AssertionError):
    """A family member failed the properties it is constructed to have."""


# ---------------------------------------------------------------------------
# 2-braid family


def _check_rs(rs) -> list[int]:
    rs = [int(r) for r in rs]
    if not rs:
        raise ValueError("need at least one twist block")
    if any(r == 0 for r in rs):
        raise ValueError("twist blocks must be nonzero")
    return rs


def _braid_closure(word: list[int | None]) -> Diagram:
    """Closure of a 2-strand braid word.

    Entries are +1 / -1 for a positive or negative real crossing (left strand
    over for +1) and ``None`` for a virtual crossing.
    """
    words: list[list[Passage]] = []
    visited = set()
    ncross = sum(1 for w in word if w is not None)
    for start in (0, 1):
        if start in visited:
            continue
        comp: list[Passage] = []
        pos = start
        while True:
            visited.add(pos)
            k = 0
            for w in word:
                if w is None:
                    pos = 1 - pos
                    continue
                over = (pos == 0) == (w > 0)
                comp.append(Passage(k, Role.OVER if over else Role.UNDER, w))
                pos = 1 - pos
                k += 1
            if pos == start:
                break
        words.append(comp)
    assert sum(len(c) for c in words) == 2 * ncross
    return Diagram.from_components(words)


def gen_K(rs) -> Diagram:
    """Closed 2-braid with blocks of ``|r_i|`` crossings of sign ``sign(r_i)``,
    each block followed by one virtual crossing."""
    word: list[int | None] = []
    for r in _check_rs(rs):
        word.extend([1 if r > 0 else -1] * abs(r))
        word.append(None)
    return _braid_closure(word)


def reduce_K(rs) -> Diagram:
    """The diagram with the same f-polynomial as ``gen_K(rs)``: the closed
    (2, r)-torus braid for even s, followed by one virtual crossing for odd s,
    where r is the sum of the blocks."""
    rs = _check_rs(rs)
    r = sum(rs)
    word: list[int | None] = [1 if r > 0 else -1] * abs(r)
    if len(rs) % 2:
        word.append(None)
    return _braid_closure(word)


# ---------------------------------------------------------------------------
# dart-level builder


@dataclass
class _Net:
    """Crossings with signs, and edges from out-darts to in-darts."""

    signs: list[int]
    succ: dict[int, int] = field(default_factory=dict)
    free_loops: int = 0

    @classmethod
    def from_diagram(cls, d: Diagram) -> "_Net":
        return cls(list(d.signs), dict(d.edges()), d.free_loops)

    # slots at the corners of a crossing drawn with both strands going up
    @staticmethod
    def corners(sign: int) -> dict[str, int]:
        if sign > 0:
            return {"SW": OI, "SE": UI, "NE": OO, "NW": UO}
        return {"SW": UI, "SE": OI, "NE": UO, "NW": OO}

    def twist(self, x: int, k: int) -> None:
        """Replace crossing ``x`` by ``k`` crossings of the same sign stacked
        vertically (the 2-braid ``sigma^k`` with both strands going up)."""
        if k < 1:
            raise ValueError("twist region needs at least one crossing")
        sgn = self.signs[x]
        pos = self.corners(sgn)
        chain = [x] + list(range(len(self.signs), len(self.signs) + k - 1))
        self.signs.extend([sgn] * (k - 1))
        first, last = chain[0], chain[-1]
        moved = {
            4 * x + pos["SW"]: 4 * first + pos["SW"],
            4 * x + pos["SE"]: 4 * first + pos["SE"],
            4 * x + pos["NW"]: 4 * last + pos["NW"],
            4 * x + pos["NE"]: 4 * last + pos["NE"],
        }
        succ = {moved.get(o, o): moved.get(i, i) for o, i in self.succ.items()}
        for a, b in zip(chain, chain[1:]):
            succ[4 * a + pos["NW"]] = 4 * b + pos["SW"]
            succ[4 * a + pos["NE"]] = 4 * b + pos["SE"]
        self.succ = succ

    def disjoint_union(self, other: "_Net") -> int:
        """Append ``other``; returns the offset added to its crossing ids."""
        off = len(self.signs)
        self.signs.extend(other.signs)
        for o, i in other.succ.items():
            self.succ[o + 4 * off] = i + 4 * off
        self.free_loops += other.free_loops
        return off

    def band(self, out1: int, out2: int) -> None:
        """Connected sum along the edges leaving ``out1`` and ``out2``."""
        i1, i2 = self.succ[out1], self.succ[out2]
        self.succ[out1], self.succ[out2] = i2, i1

    def to_diagram(self) -> Diagram:
        other = {OI: OO, UI: UO}
        seen = set()
        comps: list[list[Passage]] = []
        for k in range(len(self.signs)):
            for slot in (OI, UI):
                start = 4 * k + slot
                if start in seen:
                    continue
                comp = []
                x = start
                while x not in seen:
                    seen.add(x)
                    c, s = divmod(x, 4)
                    comp.append(Passage(c, Role.OVER if s == OI else Role.UNDER, self.signs[c]))
                    x = self.succ[4 * c + other[s]]
                comps.append(comp)
        comps.extend([] for _ in range(self.free_loops))
        return Diagram.from_components(comps)


# ---------------------------------------------------------------------------
# proper alternating family of prescribed genus

# One-component proper alternating diagram of supporting genus 1 with 8
# crossings; found by rejection sampling and checked by _self_check.
_GENUS_ONE_PIECE = "O1-U2-O3-U4-O5-U6-O7+U8+O6-U1-O8+U3-O2-U5-O4-U7+"


def twist_region(d: Diagram, p: int, k: int) -> Diagram:
    """Replace crossing ``p`` by a twist region of ``k`` crossings."""
    net = _Net.from_diagram(d)
    net.twist(p, k)
    return net.to_diagram()


def connected_sum(d1: Diagram, d2: Diagram) -> Diagram:
    """Band two diagrams together along an edge leaving an over passage in each."""
    net = _Net.from_diagram(d1)
    off = net.disjoint_union(_Net.from_diagram(d2))
    net.band(_first_over_out(d1, 0), _first_over_out(d2, off))
    return net.to_diagram()


def _first_over_out(d: Diagram, off: int, skip: int = 0) -> int:
    outs = [4 * (k + off) + OO for k in range(d.crossing_count)]
    return outs[skip]


def gen_Dnr(n: int, r: int, check: bool = True) -> Diagram:
    """Proper alternating diagram with supporting genus ``n`` and
    ``10n + r - 2`` crossings.

    A chain of ``n`` genus-one pieces of 8 crossings joined by connected
    sums, with one crossing of the first piece opened into a twist region
    of ``2(n-1) + r + 1`` crossings.  One component whenever ``r`` is even.
    """
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    piece = parse_gauss(_GENUS_ONE_PIECE)
    net = _Net.from_diagram(piece)
    prev = 0
    for i in range(1, n):
        off = net.disjoint_union(_Net.from_diagram(piece))
        # leave the previous piece through a different edge than it was entered
        net.band(4 * (prev + 1) + OO if i > 1 else 4 * prev + OO, 4 * off + OO)
        prev = off
    net.twist(0, 2 * (n - 1) + r + 1)
    d = net.to_diagram()
    if check:
        _self_check(d, n, 10 * n + r - 2, f"D({n},{r})")
    return d


def _self_check(d: Diagram, g: int, c: int, name: str) -> None:
    from .surface import genus

    s = genus(d)
    problems = []
    if not is_alternating(d):
        problems.append("not alternating")
    if not s.proper:
        problems.append("not proper")
    if s.genus != g:
        problems.append(f"genus {s.genus} != {g}")
    if d.crossing_count != c:
        problems.append(f"{d.crossing_count} crossings != {c}")
    if problems:
        raise GeneratorSelfCheckError(f"{name}: " + ", ".join(problems))


# ---------------------------------------------------------------------------
# random diagrams


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def _draw_alternating(c: int, rng: random.Random, components: int | None) -> list[list[tuple[Role, int, int]]]:
    mu = components if components is not None else rng.randint(1, min(3, c))
    if not 1 <= mu <= c:
        raise ValueError(f"cannot split {c} crossings into {mu} alternating components")
    lengths = [2 * x for x in _composition(rng, c, mu)]
    overs, unders = [], []
    for ci, n in enumerate(lengths):
        flip = rng.random() < 0.5
        for j in range(n):
            (overs if (j % 2 == 0) != flip else unders).append((ci, j))
    rng.shuffle(unders)
    slots: list[list] = [[None] * n for n in lengths]
    for k, (o, u) in enumerate(zip(overs, unders)):
        sgn = rng.choice((1, -1))
        slots[o[0]][o[1]] = (Role.OVER, k, sgn)
        slots[u[0]][u[1]] = (Role.UNDER, k, sgn)
    return slots


def random_alternating(c: int, rng: random.Random, components: int | None = None) -> Diagram:
    """One draw of an alternating diagram (not filtered for properness)."""
    slots = _draw_alternating(c, rng, components)
    return Diagram.from_components([[Passage(k, r, s) for r, k, s in w] for w in slots])


def _has_kink(slots) -> bool:
    """Some crossing has its two passages cyclically adjacent; such a
    crossing sees one boundary component twice, so it is never proper."""
    for word in slots:
        n = len(word)
        for j in range(n):
            if word[j][1] == word[(j + 1) % n][1]:
                return True
    return False


def _quick_proper(slots, c: int) -> bool:
    """Properness straight from the raw words, without building a Diagram.

    Same dart conventions as the surface module, which re-checks every
    accepted draw.
    """
    alpha = [0] * (4 * c)
    for word in slots:
        n = len(word)
        for j, (role, k, _) in enumerate(word):
            role2, k2, _ = word[(j + 1) % n]
            o = 4 * k + (OO if role is Role.OVER else UO)
            i = 4 * k2 + (OI if role2 is Role.OVER else UI)
            alpha[o], alpha[i] = i, o
    rot = [0] * (4 * c)
    for word in slots:
        for role, k, sgn in word:
            if role is Role.OVER:
                order = rotation_order(sgn)
                for t in range(4):
                    rot[4 * k + order[t]] = 4 * k + order[(t + 1) % 4]
    label = [-1] * (4 * c)
    n = 0
    for x0 in range(4 * c):
        if label[x0] < 0:
            x = x0
            while label[x] < 0:
                label[x] = n
                x = rot[alpha[x]]
            n += 1
    return all(len({label[4 * k], label[4 * k + 1], label[4 * k + 2], label[4 * k + 3]}) == 4 for k in range(c))


def random_proper_alternating(
    c: int,
    seed: int,
    components: int | None = None,
    max_attempts: int = 200000,
) -> Diagram:
    """Rejection sampler: random over/under chord pairings with random signs,
    kept when every crossing is proper.  Deterministic in ``seed``.

    ``components=None`` draws the number of components (1 to 3) afresh on
    every attempt.
    """
    from .surface import is_proper

    if c < 1:
        raise ValueError("need at least one crossing")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        slots = _draw_alternating(c, rng, components)
        if _has_kink(slots) or not _quick_proper(slots, c):
            continue
        d = Diagram.from_components([[Passage(k, r, s) for r, k, s in w] for w in slots])
        if not is_proper(d):
            raise AssertionError(f"fast properness test disagrees on {d.to_gauss()}")
        return d
    raise SamplingBudgetError(max_attempts, f"proper alternating diagram with {c} crossings")


def random_diagram(c: int, seed: int, components: int | None = None, free_loops: int = 0) -> Diagram:
    """Arbitrary virtual diagram: random passage order, roles and signs."""
    rng = random.Random(seed)
    if c == 0:
        return Diagram.from_components([[] for _ in range(max(1, free_loops))])
    mu = components if components is not None else rng.randint(1, min(3, 2 * c))
    lengths = _composition(rng, 2 * c, mu)
    tokens = []
    for k in range(c):
        sgn = rng.choice((1, -1))
        tokens += [Passage(k, Role.OVER, sgn), Passage(k, Role.UNDER, sgn)]
    rng.shuffle(tokens)
    comps, pos = [], 0
    for n in lengths:
        comps.append(tokens[pos:pos + n])
        pos += n
    comps.extend([] for _ in range(free_loops))
    return Diagram.from_components(comps)
