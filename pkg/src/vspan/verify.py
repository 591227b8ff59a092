"""Executable checks of the span formulas for alternating and v-alternating
diagrams, and of the state-counting claims behind them.

Every verifier returns a :class:`Report`.  A verifier whose hypotheses fail
on the given diagram returns an ``inapplicable`` report instead of raising,
so batch runs record the situation and carry on.
"""

from __future__ import annotations

import hashlib
import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any

import numpy as np

from .diagram import Diagram, connected_components, is_alternating, writhe
from .generators import SamplingBudgetError, gen_Dnr, random_diagram, random_proper_alternating
from .moves import virtualize
from .statesum import (
    bracket_from_histogram,
    crossing_limit,
    f_from_bracket,
    special_states,
    state_histogram,
    state_loops,
)
from .surface import SurfaceSummary, boundary_components, build_comb_map, genus, state_boundary_bijection

PASS, FAIL, INAPPLICABLE = "pass", "fail", "inapplicable"

# exhaustive state checks go through the full histogram up to this size and
# fall back to explicit enumeration of S(j) for small j beyond it
FULL_STATE_CHECK_LIMIT = 16
DEFAULT_J_BUDGET = 3


def digest(d: Diagram) -> str:
    return hashlib.sha256(d.to_gauss().encode()).hexdigest()[:16]


@dataclass
class Report:
    subject: str
    diagram: str
    measured: dict[str, Any] = field(default_factory=dict)
    predicted: dict[str, Any] = field(default_factory=dict)
    verdict: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    applicable: bool = True

    @classmethod
    def for_diagram(cls, d: Diagram) -> "Report":
        return cls(subject=digest(d), diagram=d.to_gauss())

    def check(self, name: str, measured: Any, predicted: Any) -> bool:
        self.measured[name] = measured
        self.predicted[name] = predicted
        ok = measured == predicted
        self.verdict[name] = ok
        return ok

    def assert_true(self, name: str, ok: bool, note: str | None = None) -> bool:
        self.verdict[name] = bool(ok)
        if not ok and note:
            self.notes.append(note)
        return bool(ok)

    def mark_inapplicable(self, reason: str) -> "Report":
        self.applicable = False
        self.notes.append(reason)
        self.verdict.clear()
        return self

    @property
    def status(self) -> str:
        if not self.applicable:
            return INAPPLICABLE
        return PASS if all(self.verdict.values()) else FAIL

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "diagram": self.diagram,
            "status": self.status,
            "measured": self.measured,
            "predicted": self.predicted,
            "verdict": self.verdict,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# shared measurements


@dataclass(frozen=True)
class _Measure:
    c: int
    m: int
    surface: SurfaceSummary
    loops_a: int
    loops_b: int
    hist: np.ndarray

    @property
    def genus(self) -> int:
        return self.surface.genus

    @property
    def boundary(self) -> int:
        return self.surface.boundary_count


def _measure(d: Diagram, workers: int = 1, max_crossings: int | None = None) -> _Measure:
    s = genus(d)
    hist = state_histogram(d, workers=workers, max_crossings=max_crossings)
    sa, sb = special_states(d)
    return _Measure(
        c=d.crossing_count,
        m=s.m,
        surface=s,
        loops_a=state_loops(d, sa).loops,
        loops_b=state_loops(d, sb).loops,
        hist=hist,
    )


def _f_and_bracket(d: Diagram, hist: np.ndarray):
    br = bracket_from_histogram(hist, d.crossing_count)
    return br, f_from_bracket(br, writhe(d))


def _applicability(d: Diagram) -> str | None:
    if not is_alternating(d):
        return "not alternating; span formula not applicable"
    if not genus(d).proper:
        return "not proper; span formula not applicable"
    return None


# ---------------------------------------------------------------------------
# span of proper alternating diagrams


def verify_alt_span(d: Diagram, *, workers: int = 1, max_crossings: int | None = None) -> Report:
    """span f = 4(c - g + m - 1) for proper alternating ``d``.

    Also checks the intermediate identities of the proof: the extreme
    degrees of the bracket come from the all-A and all-B states, and the
    loop counts of those states add up to the number of boundary components.
    """
    rep = Report.for_diagram(d)
    reason = _applicability(d)
    if reason:
        return rep.mark_inapplicable(reason)
    ms = _measure(d, workers, max_crossings)
    br, f = _f_and_bracket(d, ms.hist)
    c, g, m = ms.c, ms.genus, ms.m
    rep.measured.update(c=c, g=g, m=m, boundary=ms.boundary, loops_a=ms.loops_a, loops_b=ms.loops_b)
    rep.check("span", f.span(), 4 * (c - g + m - 1))
    rep.check("bracket_maxdeg", br.maxdeg(), c + 2 * ms.loops_a - 2)
    rep.check("bracket_mindeg", br.mindeg(), -c - 2 * ms.loops_b + 2)
    rep.check("loops_a_plus_loops_b", ms.loops_a + ms.loops_b, ms.boundary)
    return rep


def verify_valt_span(
    d: Diagram,
    p: int,
    *,
    workers: int = 1,
    max_crossings: int | None = None,
) -> Report:
    """span f(D') = 4(c' - g' + m - 1) + 2 for D' = ``d`` with crossing ``p``
    virtualized, where ``d`` is proper alternating.

    Sub-checks: three fewer boundary components, genus up by one, and one
    loop fewer in each of the all-A and all-B states.
    """
    rep = Report.for_diagram(d)
    if not 0 <= p < d.crossing_count:
        raise KeyError(f"unknown crossing {p}")
    rep.measured["crossing"] = d.labels[p]
    reason = _applicability(d)
    if reason:
        return rep.mark_inapplicable(reason)
    if not genus(d).is_proper_crossing(p):
        return rep.mark_inapplicable(f"crossing {d.labels[p]} is not proper")
    before = _measure(d, workers, max_crossings)
    dv = virtualize(d, p)
    after = _measure(dv, workers, max_crossings)
    br, f = _f_and_bracket(dv, after.hist)
    c, g, m = after.c, after.genus, after.m
    rep.measured.update(
        virtualized=dv.to_gauss(), c=c, g=g, m=m,
        boundary=after.boundary, loops_a=after.loops_a, loops_b=after.loops_b,
    )
    rep.check("span", f.span(), 4 * (c - g + m - 1) + 2)
    rep.check("boundary_drop", after.boundary, before.boundary - 3)
    rep.check("genus_increment", g, before.genus + 1)
    rep.check("loops_a_drop", after.loops_a, before.loops_a - 1)
    rep.check("loops_b_drop", after.loops_b, before.loops_b - 1)
    rep.check("bracket_maxdeg", br.maxdeg(), c + 2 * after.loops_a - 2)
    rep.check("bracket_mindeg", br.mindeg(), -c - 2 * after.loops_b + 2)
    if m != before.m:
        rep.notes.append(f"virtualizing changed the number of connected components from {before.m} to {m}")
    return rep


def verify_genus_bookkeeping(d: Diagram) -> Report:
    """2m + c - #boundary is even and nonnegative, for any diagram."""
    rep = Report.for_diagram(d)
    cmap = build_comb_map(d)
    _, nfaces, _ = boundary_components(cmap, d.signs)
    m = connected_components(d).m
    twice = 2 * m + d.crossing_count - nfaces
    rep.measured.update(c=d.crossing_count, m=m, boundary=nfaces, twice_genus=twice)
    rep.assert_true("even", twice % 2 == 0)
    rep.assert_true("nonnegative", twice >= 0)
    return rep


# ---------------------------------------------------------------------------
# classicality


class Classicality(str, Enum):
    NOT_CLASSICAL = "NotClassical"
    INCONCLUSIVE = "Inconclusive"


def classicality_obstruction(d: Diagram, *, workers: int = 1, max_crossings: int | None = None) -> Classicality:
    """A classical link has span divisible by four; anything else is not classical."""
    hist = state_histogram(d, workers=workers, max_crossings=max_crossings)
    _, f = _f_and_bracket(d, hist)
    return Classicality.NOT_CLASSICAL if f.span() % 4 else Classicality.INCONCLUSIVE


# ---------------------------------------------------------------------------
# state-counting claims


def _loop_ranges(d: Diagram, base: str, jmax: int, hist: np.ndarray | None) -> dict[int, tuple[int, int]]:
    """(min, max) loop count over states differing from the pure ``base``
    state in exactly j crossings, for j = 1..jmax."""
    c = d.crossing_count
    out = {}
    if hist is not None:
        for j in range(1, jmax + 1):
            row = hist[j if base == "A" else c - j]
            nz = np.nonzero(row)[0]
            out[j] = (int(nz[0]), int(nz[-1]))
        return out
    other = "B" if base == "A" else "A"
    for j in range(1, jmax + 1):
        lo, hi = None, None
        for flips in combinations(range(c), j):
            state = [base] * c
            for k in flips:
                state[k] = other
            n = state_loops(d, state).loops
            lo = n if lo is None else min(lo, n)
            hi = n if hi is None else max(hi, n)
        out[j] = (lo, hi)  # type: ignore[assignment]
    return out


def _state_source(
    d: Diagram, j_budget: int | None, workers: int, max_crossings: int | None
) -> tuple[int, np.ndarray | None]:
    c = d.crossing_count
    if c <= min(FULL_STATE_CHECK_LIMIT, crossing_limit(max_crossings)) and (j_budget is None or j_budget >= c):
        return c, state_histogram(d, workers=workers, max_crossings=max_crossings)
    return min(c, j_budget if j_budget is not None else DEFAULT_J_BUDGET), None


def verify_state_claims(
    d: Diagram,
    *,
    j_budget: int | None = None,
    virtualized: bool = True,
    workers: int = 1,
    max_crossings: int | None = None,
) -> Report:
    """Loop counts of states near the all-A and all-B states.

    For proper alternating ``d``: each one-flip state has exactly one loop
    fewer than the pure state, and j flips give at most ``#S + j - 2`` loops.
    With ``virtualized`` the weaker bounds for each v-alternating derivative
    are checked too: one flip gives between ``#S' - 1`` and ``#S'`` loops, and
    j flips at most ``#S' + j - 1``.

    ``j_budget`` caps j; by default diagrams up to 16 crossings are checked
    for every j and larger ones for j up to 3.
    """
    rep = Report.for_diagram(d)
    reason = _applicability(d)
    if reason:
        return rep.mark_inapplicable(reason)
    if d.crossing_count == 0:
        rep.notes.append("no crossings; claims are vacuous")
        return rep
    sa, sb = special_states(d)
    pure = {"A": state_loops(d, sa).loops, "B": state_loops(d, sb).loops}
    rep.measured.update(loops_a=pure["A"], loops_b=pure["B"])
    jmax, hist = _state_source(d, j_budget, workers, max_crossings)
    rep.measured["j_checked"] = jmax
    bij = state_boundary_bijection(d)
    rep.assert_true("state_boundary_bijection", bij.ok, "all-A / all-B loops do not match boundary components")
    for base in "AB":
        ranges = _loop_ranges(d, base, jmax, hist)
        lo, hi = ranges[1]
        rep.check(f"one_flip_{base}", [lo, hi], [pure[base] - 1, pure[base] - 1])
        worst = [j for j, (_, h) in ranges.items() if h > pure[base] + j - 2]
        rep.assert_true(f"j_flip_bound_{base}", not worst, f"{base}: j-flip bound exceeded at j={worst}")
    if virtualized:
        s = genus(d)
        bad: list[str] = []
        for p in range(d.crossing_count):
            if not s.is_proper_crossing(p):
                continue
            dv = virtualize(d, p)
            if dv.crossing_count == 0:
                continue
            sa_, sb_ = special_states(dv)
            pv = {"A": state_loops(dv, sa_).loops, "B": state_loops(dv, sb_).loops}
            jv, hv = _state_source(dv, j_budget, workers, max_crossings)
            for base in "AB":
                ranges = _loop_ranges(dv, base, jv, hv)
                lo, hi = ranges[1]
                if not pv[base] - 1 <= lo <= hi <= pv[base]:
                    bad.append(f"crossing {d.labels[p]} {base}: one flip gives {lo}..{hi} loops, pure {pv[base]}")
                over = [j for j, (_, h) in ranges.items() if h > pv[base] + j - 1]
                if over:
                    bad.append(f"crossing {d.labels[p]} {base}: j-flip bound exceeded at j={over}")
        rep.notes.extend(bad)
        rep.assert_true("virtualized_bounds", not bad)
    return rep


# ---------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    samples: int = 0
    checks: dict[str, dict[str, int]] = field(default_factory=dict)
    # crossing number -> sorted distinct spans / genera of proper alternating samples
    spans: dict[int, list[int]] = field(default_factory=dict)
    genera: dict[int, list[int]] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, name: str, rep: Report) -> None:
        tally = self.checks.setdefault(name, {PASS: 0, FAIL: 0, INAPPLICABLE: 0})
        tally[rep.status] += 1
        if rep.status == FAIL:
            self.failures.append({"check": name, **rep.to_json()})

    def pass_rate(self, name: str) -> float | None:
        t = self.checks.get(name)
        if not t or not t[PASS] + t[FAIL]:
            return None
        return t[PASS] / (t[PASS] + t[FAIL])

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "checks": {k: {**v, "pass_rate": self.pass_rate(k)} for k, v in self.checks.items()},
            "spans": {str(c): v for c, v in sorted(self.spans.items())},
            "genera": {str(c): v for c, v in sorted(self.genera.items())},
            "failures": self.failures,
            "notes": self.notes,
        }


def _family_members(c_max: int, n_max: int = 3) -> list[tuple[str, Diagram]]:
    out = []
    for n in range(1, n_max + 1):
        for r in range(0, c_max - (10 * n - 2) + 1):
            out.append((f"D({n},{r})", gen_Dnr(n, r)))
    return out


def census(
    c_max: int,
    samples: int,
    seed: int = 0,
    *,
    families: bool = False,
    general: bool = True,
    workers: int = 1,
    max_crossings: int | None = None,
) -> CensusReport:
    """Sample proper alternating diagrams with 2..c_max crossings (cycling
    through crossing numbers) and run every applicable verifier.

    ``general`` adds one unrestricted random diagram per sample, used for the
    genus bookkeeping and the classicality obstruction.  ``families`` adds
    the members of the D(n, r) family that fit within ``c_max``.  Per crossing
    number the report lists the distinct spans and genera seen among proper
    alternating diagrams.
    """
    limit = crossing_limit(max_crossings)
    if c_max > limit:
        raise ValueError(f"c_max={c_max} exceeds the state-sum limit {limit}")
    kw = {"workers": workers, "max_crossings": max_crossings}
    rep = CensusReport()
    spans: dict[int, set[int]] = defaultdict(set)
    genera: dict[int, set[int]] = defaultdict(set)
    if samples <= 0 and not families:
        return rep
    rng = random.Random(seed)
    pool: list[tuple[str, Diagram]] = []
    if c_max >= 2:
        for i in range(samples):
            c = 2 + i % (c_max - 1)
            s = rng.getrandbits(32)
            try:
                pool.append((f"random(c={c}, seed={s})", random_proper_alternating(c, s)))
            except SamplingBudgetError as exc:
                rep.notes.append(f"c={c} seed={s}: {exc}")
    elif samples > 0:
        rep.notes.append("no proper alternating diagram has fewer than two crossings")
    if families:
        pool.extend(_family_members(c_max))

    for name, d in pool:
        rep.samples += 1
        alt = verify_alt_span(d, **kw)
        rep.record("alt_span", alt)
        if alt.applicable:
            spans[d.crossing_count].add(alt.measured["span"])
            genera[d.crossing_count].add(alt.measured["g"])
        if d.crossing_count <= 12:
            rep.record("state_claims", verify_state_claims(d, **kw))
        for p in range(d.crossing_count):
            rep.record("valt_span", verify_valt_span(d, p, **kw))
        verdict = classicality_obstruction(d, **kw)
        ok = Report.for_diagram(d)
        ok.assert_true("alternating_is_inconclusive", verdict is Classicality.INCONCLUSIVE)
        rep.record("classicality", ok)

    if general:
        for i in range(samples):
            c = 1 + i % c_max
            d = random_diagram(c, rng.getrandbits(32))
            rep.samples += 1
            rep.record("genus_bookkeeping", verify_genus_bookkeeping(d))

    rep.spans = {c: sorted(v) for c, v in spans.items()}
    rep.genera = {c: sorted(v) for c, v in genera.items()}
    return rep
