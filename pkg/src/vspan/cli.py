"""Command-line front end.

Diagrams are given inline as Gauss codes, as ``@path`` naming a file with
one diagram per line (blank lines and ``#`` comments skipped), or as ``-``
for the same format on stdin.

Exit status: 0 success or pass, 1 parse/validation error, 2 a verifier
failed, 3 a verifier was not applicable, 4 a resource limit was hit.  In
batch mode the most severe outcome wins, ranked 1 > 4 > 2 > 3 > 0.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Iterable

from .diagram import DiagramValidationError, GaussCodeError, connected_components, is_alternating, parse_gauss, writhe
from .generators import SamplingBudgetError, gen_Dnr, gen_K, random_diagram, random_proper_alternating
from .statesum import ENGINES, ENV_MAX_CROSSINGS, CrossingLimitError, FrontierTooWideError, bracket, f_from_bracket, state_histogram
from .surface import checkerboard, genus, is_v_alternating
from .verify import (
    FAIL,
    INAPPLICABLE,
    PASS,
    census,
    classicality_obstruction,
    verify_alt_span,
    verify_state_claims,
    verify_valt_span,
)

EXIT_OK, EXIT_PARSE, EXIT_FAIL, EXIT_INAPPLICABLE, EXIT_LIMIT = 0, 1, 2, 3, 4
_SEVERITY = {EXIT_OK: 0, EXIT_INAPPLICABLE: 1, EXIT_FAIL: 2, EXIT_LIMIT: 3, EXIT_PARSE: 4}
_STATUS_EXIT = {PASS: EXIT_OK, FAIL: EXIT_FAIL, INAPPLICABLE: EXIT_INAPPLICABLE}


def worst(codes: Iterable[int]) -> int:
    return max(codes, key=_SEVERITY.__getitem__, default=EXIT_OK)


class _Input:
    def __init__(self, source: str, text: str):
        self.source = source
        self.text = text


def _read_inputs(arg: str) -> list[_Input]:
    if arg == "-":
        lines, origin = sys.stdin.read().splitlines(), "<stdin>"
    elif arg.startswith("@"):
        path = arg[1:]
        with open(path, encoding="utf-8") as fh:
            lines, origin = fh.read().splitlines(), path
    else:
        return [_Input("<arg>", arg)]
    out = []
    for i, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(_Input(f"{origin}:{i}", line))
    return out


def _emit(args: argparse.Namespace, payload, text: str | None = None) -> None:
    if args.json or text is None:
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _per_diagram(args: argparse.Namespace, action: Callable[[object], int]) -> int:
    codes = []
    for item in _read_inputs(args.diagram):
        try:
            d = parse_gauss(item.text)
        except GaussCodeError as exc:
            print(f"{item.source}: parse error: {exc}", file=sys.stderr)
            print(f"  {item.text}\n  {' ' * exc.position}^", file=sys.stderr)
            codes.append(EXIT_PARSE)
            continue
        except DiagramValidationError as exc:
            print(f"{item.source}: invalid diagram: {exc}", file=sys.stderr)
            codes.append(EXIT_PARSE)
            continue
        try:
            codes.append(action(d))
        except (CrossingLimitError, FrontierTooWideError) as exc:
            print(f"{item.source}: {exc}", file=sys.stderr)
            codes.append(EXIT_LIMIT)
        except KeyError as exc:
            print(f"{item.source}: {exc.args[0]}", file=sys.stderr)
            codes.append(EXIT_PARSE)
    return worst(codes)


def _limits(args: argparse.Namespace) -> dict:
    return {"max_crossings": args.max_crossings, "workers": args.threads}


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args):
    def run(d):
        s = genus(d)
        payload = {
            "diagram": d.to_gauss(),
            "valid": True,
            "crossings": d.crossing_count,
            "components": len(d.components),
            "free_loops": d.free_loops,
            "m": s.m,
            "writhe": writhe(d),
            "alternating": is_alternating(d),
            "proper": s.proper,
        }
        _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items()))
        return EXIT_OK
    return _per_diagram(args, run)


def _bracket_cmd(args, normalized: bool):
    def run(d):
        br = bracket(d, engine=args.engine, **_limits(args))
        p = f_from_bracket(br, writhe(d)) if normalized else br
        _emit(args, {"diagram": d.to_gauss(), "terms": p.to_json()}, str(p))
        return EXIT_OK
    return _per_diagram(args, run)


def cmd_bracket(args):
    return _bracket_cmd(args, normalized=False)


def cmd_f(args):
    return _bracket_cmd(args, normalized=True)


def cmd_span(args):
    def run(d):
        sp = f_from_bracket(bracket(d, engine=args.engine, **_limits(args)), writhe(d)).span()
        _emit(args, {"diagram": d.to_gauss(), "span": sp}, str(sp))
        return EXIT_OK
    return _per_diagram(args, run)


def cmd_genus(args):
    def run(d):
        print(json.dumps(genus(d).to_json()))
        return EXIT_OK
    return _per_diagram(args, run)


def cmd_classify(args):
    def run(d):
        s = genus(d)
        alt = is_alternating(d)
        coloring = checkerboard(d)
        payload = {
            "diagram": d.to_gauss(),
            "alternating": alt,
            "proper": s.proper,
            "v_alternating": is_v_alternating(d),
            "connected": connected_components(d).m == 1,
            "classical_genus": s.genus == 0,
            "genus": s.genus,
            "checkerboard_colorable": coloring is not None,
            "checkerboard": list(coloring) if coloring is not None else None,
            "obstruction": classicality_obstruction(d, **_limits(args)).value,
        }
        _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items()))
        return EXIT_OK
    return _per_diagram(args, run)


def cmd_verify(args):
    def run(d):
        if args.which == "alt":
            reports = [verify_alt_span(d, **_limits(args))]
        elif args.which == "valt":
            if args.crossing is not None:
                ps = [d.crossing_from_label(args.crossing)]
            else:
                ps = list(range(d.crossing_count))
            reports = [verify_valt_span(d, p, **_limits(args)) for p in ps]
            if not reports:
                print(f"{d.to_gauss()}: no crossing to virtualize", file=sys.stderr)
                return EXIT_INAPPLICABLE
        else:
            reports = [verify_state_claims(d, j_budget=args.j_budget, workers=args.threads, max_crossings=args.max_crossings)]
        for r in reports:
            print(json.dumps(r.to_json()))
        return worst(_STATUS_EXIT[r.status] for r in reports)
    return _per_diagram(args, run)


def cmd_gen(args):
    try:
        if args.family == "k":
            rs = [int(x) for tok in args.rs for x in tok.split(",") if x.strip()]
            d = gen_K(rs)
        elif args.family == "dnr":
            d = gen_Dnr(args.n, args.r)
        else:
            make = random_proper_alternating if args.proper else random_diagram
            d = make(args.crossings, args.seed)
    except SamplingBudgetError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_LIMIT
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    if args.json:
        print(json.dumps(d.to_json()))
    else:
        print(d.to_gauss())
    return EXIT_OK


def cmd_census(args):
    try:
        rep = census(
            args.cmax, args.samples, args.seed,
            families=args.families, workers=args.threads, max_crossings=args.max_crossings,
        )
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_LIMIT
    print(json.dumps(rep.to_json(), indent=2))
    return EXIT_OK if rep.all_passed else EXIT_FAIL


def cmd_bench(args):
    d = random_diagram(args.crossings, args.seed)
    times = []
    try:
        state_histogram(d, max_crossings=args.max_crossings, workers=args.threads)  # warm up the jit
        for _ in range(args.reps):
            t0 = time.perf_counter()
            state_histogram(d, max_crossings=args.max_crossings, workers=args.threads)
            times.append(time.perf_counter() - t0)
    except CrossingLimitError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_LIMIT
    best = min(times)
    payload = {
        "crossings": args.crossings,
        "states": 2 ** args.crossings,
        "reps": args.reps,
        "threads": args.threads,
        "best_seconds": best,
        "states_per_second": 2 ** args.crossings / best if best > 0 else None,
    }
    _emit(args, payload, f"{payload['states_per_second']:.3e} states/s (c={args.crossings}, best of {args.reps})")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker threads for the state sum")
    common.add_argument(
        "--max-crossings", type=int, default=None,
        help=f"state-sum crossing limit (default 26, or ${ENV_MAX_CROSSINGS})",
    )

    p = argparse.ArgumentParser(prog="vspan", description="Bracket, f-polynomial and genus of virtual link diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def diagram_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("diagram", help="Gauss code, @file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    diagram_cmd("info", cmd_info, "validate and summarize")
    for name, func, text in (
        ("bracket", cmd_bracket, "bracket polynomial"),
        ("f", cmd_f, "f polynomial"),
        ("span", cmd_span, "span of the f-polynomial"),
    ):
        sp = diagram_cmd(name, func, text)
        sp.add_argument(
            "--engine", choices=ENGINES, default="gray",
            help="gray: Gray-code state sum; frontier: crossing-by-crossing contraction, "
            "fast for long twist regions at any crossing number",
        )
    diagram_cmd("genus", cmd_genus, "supporting surface summary as JSON")
    diagram_cmd("classify", cmd_classify, "all predicates")

    sp = sub.add_parser("verify", parents=[common], help="check the span formulas on a diagram")
    sp.add_argument("which", choices=("alt", "valt", "claims"))
    sp.add_argument("diagram")
    sp.add_argument("--crossing", type=int, default=None, help="crossing label to virtualize (valt)")
    sp.add_argument("--j-budget", type=int, default=None, help="largest number of flipped splices (claims)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", parents=[common], help="generate a diagram")
    gsub = sp.add_subparsers(dest="family", required=True)
    k = gsub.add_parser("k", parents=[common], help="2-braid family, e.g. 'gen k 2,-1,3' or 'gen k -1 2'")
    k.add_argument("rs", nargs="+")
    dn = gsub.add_parser("dnr", parents=[common], help="genus-n proper alternating family")
    dn.add_argument("n", type=int)
    dn.add_argument("r", type=int)
    rnd = gsub.add_parser("random", parents=[common], help="seeded random diagram")
    rnd.add_argument("--crossings", type=int, required=True)
    rnd.add_argument("--seed", type=int, default=0)
    rnd.add_argument("--any", dest="proper", action="store_false",
                     help="any virtual diagram instead of a proper alternating one")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("census", parents=[common], help="sample diagrams and run every verifier")
    sp.add_argument("--cmax", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--families", action="store_true", help="include family members up to --cmax")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("bench", parents=[common], help="state-sum throughput")
    sp.add_argument("--crossings", type=int, required=True)
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, which would read as a failed check
        return EXIT_OK if exc.code in (0, None) else EXIT_PARSE
    try:
        return args.func(args)
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
