"""Kauffman bracket state sums and the normalized f-polynomial."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import _kernel
from .diagram import Diagram, Passage, Role, splice_pairs, writhe
from .laurent import DELTA, LaurentPoly

DEFAULT_MAX_CROSSINGS = 26
ENV_MAX_CROSSINGS = "VSPAN_MAX_CROSSINGS"


class CrossingLimitError(RuntimeError):
    """The diagram has more crossings than the state-sum limit allows."""


State = tuple[str, ...]


@dataclass(frozen=True)
class BracketTerm:
    natural: int
    loops: int


def crossing_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(ENV_MAX_CROSSINGS)
    return int(env) if env else DEFAULT_MAX_CROSSINGS


def _check_limit(d: Diagram, max_crossings: int | None) -> None:
    limit = crossing_limit(max_crossings)
    if d.crossing_count > limit:
        raise CrossingLimitError(
            f"diagram has {d.crossing_count} crossings, state-sum limit is {limit} "
            f"(raise it with --max-crossings or {ENV_MAX_CROSSINGS})"
        )


def _as_state(d: Diagram, state: Sequence[str] | Mapping[int, str]) -> State:
    c = d.crossing_count
    if isinstance(state, Mapping):
        missing = [k for k in range(c) if k not in state]
        if missing or len(state) != c:
            raise ValueError(f"state must assign every crossing; missing {missing}")
        state = [state[k] for k in range(c)]
    state = tuple(state)
    if len(state) != c:
        raise ValueError(f"state has {len(state)} entries, diagram has {c} crossings")
    for s in state:
        if s not in ("A", "B"):
            raise ValueError(f"splice choice must be 'A' or 'B', got {s!r}")
    return state


def _splice_partner(d: Diagram, state: State) -> list[int]:
    beta = [0] * (4 * d.crossing_count)
    for k, (sgn, kind) in enumerate(zip(d.signs, state)):
        for a, b in splice_pairs(sgn, kind):
            beta[4 * k + a] = 4 * k + b
            beta[4 * k + b] = 4 * k + a
    return beta


def trace_state(d: Diagram, state: Sequence[str] | Mapping[int, str]) -> tuple[list[int], int]:
    """Loop label of every dart in the given state, and the total loop count.

    Free loops are numbered after the loops through crossings.
    """
    state = _as_state(d, state)
    alpha = d.alpha()
    beta = _splice_partner(d, state)
    label = [-1] * len(alpha)
    loops = 0
    for start in range(len(alpha)):
        if label[start] >= 0:
            continue
        x = start
        while True:
            label[x] = loops
            y = alpha[x]
            label[y] = loops
            x = beta[y]
            if x == start:
                break
        loops += 1
    return label, loops + d.free_loops


def state_loops(d: Diagram, state: Sequence[str] | Mapping[int, str]) -> BracketTerm:
    state = _as_state(d, state)
    _, loops = trace_state(d, state)
    return BracketTerm(natural=state.count("A") - state.count("B"), loops=loops)


def special_states(d: Diagram) -> tuple[State, State]:
    c = d.crossing_count
    return ("A",) * c, ("B",) * c


def modified_states(d: Diagram, base: str, j: int) -> Iterator[State]:
    """All states differing from the pure ``base`` state at exactly ``j`` crossings."""
    c = d.crossing_count
    if base not in ("A", "B"):
        raise ValueError(f"base must be 'A' or 'B', got {base!r}")
    if not 0 <= j <= c:
        raise ValueError(f"j={j} out of range 0..{c}")
    other = "B" if base == "A" else "A"
    for flips in combinations(range(c), j):
        s = [base] * c
        for k in flips:
            s[k] = other
        yield tuple(s)


def term_poly(term: BracketTerm) -> LaurentPoly:
    return DELTA ** (term.loops - 1) * LaurentPoly.monomial(1, term.natural)


# ---------------------------------------------------------------------------
# splicing a diagram into a diagram


def splice(d: Diagram, p: int, kind: str) -> Diagram:
    """Diagram obtained by an A- or B-splice at crossing ``p``.

    The reconnected strands are re-oriented by traversal; a crossing whose
    strands end up with exactly one reversed strand changes sign, which keeps
    its rotation (and hence every bracket term) unchanged.
    """
    if not 0 <= p < d.crossing_count:
        raise KeyError(f"unknown crossing {p}")
    alpha = d.alpha()
    link = {}
    for a, b in splice_pairs(d.sign(p), kind):
        link[4 * p + a] = 4 * p + b
        link[4 * p + b] = 4 * p + a
    n = len(alpha)
    visited = [False] * n
    # other end of the strand through a passage
    strand = {OI_: OO_ for OI_, OO_ in ((0, 1), (1, 0), (2, 3), (3, 2))}

    traced: list[list[tuple[int, Role, bool]]] = []
    free = d.free_loops
    order = [x for x in range(n) if x // 4 != p] + [x for x in range(n) if x // 4 == p]
    for start in order:
        if visited[start]:
            continue
        word: list[tuple[int, Role, bool]] = []
        x = start
        # walk: x is the dart we arrive at through an edge, or the start
        while True:
            visited[x] = True
            k, slot = divmod(x, 4)
            if k == p:
                y = link[x]
            else:
                y = 4 * k + strand[slot]
                role = Role.OVER if slot in (0, 1) else Role.UNDER
                word.append((k, role, slot in (0, 2)))
            visited[y] = True
            x = alpha[y]
            if x == start:
                break
        if word:
            traced.append(word)
        else:
            free += 1

    flips = [0] * d.crossing_count
    for word in traced:
        for k, _, forward in word:
            if not forward:
                flips[k] ^= 1
    signs = d.signs
    comps: list[list[Passage]] = []
    for word in traced:
        comps.append([Passage(k, role, signs[k] * (-1 if flips[k] else 1)) for k, role, _ in word])
    comps.extend([] for _ in range(free))
    return Diagram.from_components(comps)


# ---------------------------------------------------------------------------
# bracket engines


def _pairs_array(d: Diagram) -> np.ndarray:
    c = d.crossing_count
    pairs = np.zeros((c, 2, 4), dtype=np.int64)
    for k, sgn in enumerate(d.signs):
        for ch, kind in enumerate("AB"):
            (a, b), (e, f) = splice_pairs(sgn, kind)
            pairs[k, ch] = (4 * k + a, 4 * k + b, 4 * k + e, 4 * k + f)
    return pairs


def state_histogram(
    d: Diagram,
    *,
    max_crossings: int | None = None,
    workers: int = 1,
    compiled: bool = True,
) -> np.ndarray:
    """Counts ``h[b, l]`` of states with ``b`` B-splices and ``l`` loops.

    Loop counts include free loops.  States are visited in Gray-code order;
    with ``workers > 1`` the state space is split by fixing the splices of
    the first few crossings and the parts are summed.
    """
    _check_limit(d, max_crossings)
    c = d.crossing_count
    nfree = d.free_loops
    hist = np.zeros((c + 1, 2 * c + 1), dtype=np.int64)
    if c == 0:
        out = np.zeros((1, nfree + 1), dtype=np.int64)
        out[0, nfree] = 1
        return out
    alpha = np.asarray(d.alpha(), dtype=np.int64)
    pairs = _pairs_array(d)
    if workers <= 1:
        _kernel.histogram(alpha, pairs, np.zeros(0, dtype=np.int64), 0, hist, compiled)
    else:
        nprefix = min(c, max(1, (workers - 1).bit_length() + 2))
        prefixes = [np.array(bits, dtype=np.int64) for bits in product((0, 1), repeat=nprefix)]
        parts = [np.zeros_like(hist) for _ in prefixes]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(
                lambda args: _kernel.histogram(alpha, pairs, args[0], nprefix, args[1], compiled),
                zip(prefixes, parts),
            ))
        for part in parts:
            hist += part
    out = np.zeros((c + 1, 2 * c + 1 + nfree), dtype=np.int64)
    out[:, nfree:] = hist
    return out


class FrontierTooWideError(RuntimeError):
    """The frontier engine would track more boundary pairings than allowed."""


def _frontier_order(d: Diagram) -> list[int]:
    """Greedy crossing order keeping few edges between done and pending crossings."""
    c = d.crossing_count
    alpha = d.alpha()
    nbrs = [[alpha[4 * k + s] // 4 for s in range(4)] for k in range(c)]
    done = [False] * c
    order: list[int] = []
    for _ in range(c):
        best, key = -1, None
        for k in range(c):
            if done[k]:
                continue
            inside = sum(1 for q in nbrs[k] if done[q] or q == k)
            # prefer closing edges, then opening few new ones, then low ids
            score = (-(2 * inside - 4), k)
            if key is None or score < key:
                best, key = k, score
        done[best] = True
        order.append(best)
    return order


def state_histogram_frontier(d: Diagram, *, max_pairings: int = 200_000) -> np.ndarray:
    """Same histogram as :func:`state_histogram`, by contracting crossings one
    at a time.

    The processed part of the diagram is a tangle whose open ends are the
    darts with an unprocessed neighbour.  For each way those ends can be
    paired up inside the tangle, the engine keeps the counts of partial
    states by number of B-splices and closed loops.  Cost grows with the
    number of pairings rather than with 2^c, so long twist regions and chains
    of connected sums stay cheap whatever their crossing number.
    """
    c = d.crossing_count
    nfree = d.free_loops
    width = 2 * c + 1
    if c == 0:
        out = np.zeros((1, nfree + 1), dtype=np.int64)
        out[0, nfree] = 1
        return out
    alpha = d.alpha()
    splice = [
        [[(4 * k + a, 4 * k + b) for a, b in splice_pairs(sgn, kind)] for kind in "AB"]
        for k, sgn in enumerate(d.signs)
    ]
    done = [False] * c
    states: dict[tuple, np.ndarray] = {(): np.zeros((1, width), dtype=np.int64)}
    states[()][0, 0] = 1
    for step, k in enumerate(_frontier_order(d)):
        done[k] = True
        nxt: dict[tuple, np.ndarray] = {}
        for key, hist in states.items():
            for ch in (0, 1):
                part = {}
                for a, b in key:
                    part[a], part[b] = b, a
                for a, b in splice[k][ch]:
                    part[a], part[b] = b, a
                is_open = {x: not done[alpha[x] // 4] for x in part}
                seen = set()
                pairs = []
                for x in part:
                    if x in seen or not is_open[x]:
                        continue
                    seen.add(x)
                    y = part[x]
                    seen.add(y)
                    while not is_open[y]:
                        z = alpha[y]
                        seen.add(z)
                        y = part[z]
                        seen.add(y)
                    pairs.append((min(x, y), max(x, y)))
                closed = 0
                for x in part:
                    if x in seen:
                        continue
                    closed += 1
                    y = x
                    while y not in seen:
                        seen.add(y)
                        z = part[y]
                        seen.add(z)
                        y = alpha[z]
                new_key = tuple(sorted(pairs))
                nb = hist.shape[0] + ch
                acc = nxt.get(new_key)
                if acc is None:
                    acc = np.zeros((step + 2, width), dtype=np.int64)
                    nxt[new_key] = acc
                acc[ch:nb, closed:] += hist[:, : width - closed]
        if len(nxt) > max_pairings:
            raise FrontierTooWideError(
                f"{len(nxt)} boundary pairings after {step + 1} crossings (limit {max_pairings})"
            )
        states = nxt
    (hist,) = states.values()
    out = np.zeros((c + 1, width + nfree), dtype=np.int64)
    out[:, nfree:] = hist
    return out


def bracket_from_histogram(hist: np.ndarray, c: int) -> LaurentPoly:
    total = LaurentPoly.zero()
    delta_pows: dict[int, LaurentPoly] = {}
    for b, loops in zip(*np.nonzero(hist)):
        b, loops = int(b), int(loops)
        if loops not in delta_pows:
            delta_pows[loops] = DELTA ** (loops - 1)
        total = total + delta_pows[loops].shift(c - 2 * b) * int(hist[b, loops])
    return total


def bracket_naive(d: Diagram, *, max_crossings: int | None = None) -> LaurentPoly:
    """Plain enumeration of all 2^c states, recomputing loops each time."""
    _check_limit(d, max_crossings)
    counts: dict[tuple[int, int], int] = {}
    for state in product("AB", repeat=d.crossing_count):
        t = state_loops(d, state)
        counts[(t.natural, t.loops)] = counts.get((t.natural, t.loops), 0) + 1
    total = LaurentPoly.zero()
    for (nat, loops), n in counts.items():
        total = total + term_poly(BracketTerm(nat, loops)) * n
    return total


def bracket_skein(d: Diagram, *, max_crossings: int | None = None) -> LaurentPoly:
    """Recursive expansion by splicing, peeling off free loops as factors of delta."""
    _check_limit(d, max_crossings)

    def rec(e: Diagram) -> LaurentPoly:
        if e.crossing_count == 0:
            return DELTA ** (len(e.components) - 1)
        if e.free_loops and len(e.components) > e.free_loops:
            core = Diagram.from_components([c for c in e.components if c])
            return DELTA ** e.free_loops * rec(core)
        return rec(splice(e, 0, "A")).shift(1) + rec(splice(e, 0, "B")).shift(-1)

    return rec(d)


ENGINES = ("gray", "frontier", "naive", "skein")


def bracket(
    d: Diagram,
    *,
    engine: str = "gray",
    max_crossings: int | None = None,
    workers: int = 1,
) -> LaurentPoly:
    """Kauffman bracket, normalized so that a single free loop has value 1."""
    if engine == "gray":
        hist = state_histogram(d, max_crossings=max_crossings, workers=workers)
        return bracket_from_histogram(hist, d.crossing_count)
    if engine == "frontier":
        return bracket_from_histogram(state_histogram_frontier(d), d.crossing_count)
    if engine == "naive":
        return bracket_naive(d, max_crossings=max_crossings)
    if engine == "skein":
        return bracket_skein(d, max_crossings=max_crossings)
    raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")


def f_from_bracket(br: LaurentPoly, w: int) -> LaurentPoly:
    # (-A^3)^(-w) = (-1)^w A^(-3w)
    return br.shift(-3 * w) * (-1 if w % 2 else 1)


def f_poly(d: Diagram, **kwargs) -> LaurentPoly:
    return f_from_bracket(bracket(d, **kwargs), writhe(d))


def span_f(d: Diagram, **kwargs) -> int:
    return f_poly(d, **kwargs).span()
