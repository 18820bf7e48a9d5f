"""Command line entry point: ``rank1lab search|analyze|build|lyapunov``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cyclic_covers import EXAMPLES, build_origami, validate_cover
from .cylinders import configuration_check, direction_decomposition, parse_slope
from .degeneration import pinch, rank1_filter
from .errors import InvalidDirection, IoFailure, Rank1LabError
from .lyapunov import random_walk_exponents
from .origami import Origami, canonical_form, genus, loads, stratum
from .search import FILTERS, SearchJob, run_search
from .sl2z import cusps, orbit

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace("H(", "").rstrip(")").split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _filters(text: str) -> list[str]:
    out = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in out if x not in FILTERS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown filter(s) {bad}; choose from {list(FILTERS)}")
    return out


def _read_origami(path: str) -> Origami:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _emit(obj, out: str | None = None):
    text = json.dumps(obj, separators=(",", ":"))
    if out:
        try:
            Path(out).write_text(text + "\n")
        except OSError as exc:
            raise IoFailure(f"cannot write {out}: {exc}") from exc
    else:
        print(text)


def direction_report(o: Origami, q: int, p: int) -> dict:
    d = direction_decomposition(o, q, p)
    cr = configuration_check(d)
    dc = pinch(o, d)
    rec = {
        "direction": [q, p],
        "cylinders": [{"w": c.circumference, "h": c.height} for c in d.cylinders],
        "equal_circumference": cr.equal_circumference,
        "chain_is_single_cycle": cr.chain_is_single_cycle,
        "boundary_parity_ok": cr.boundary_parity_ok,
        "pass": cr.passed,
        "pinch": {
            "verdict": dc.verdict.value,
            "parts": [
                {"zero_orders": list(pt.zero_orders), "poles": pt.poles, "genus": pt.genus}
                for pt in dc.graph.vertices
            ],
            "edges": [[a, b] for a, b, *_ in dc.graph.edges],
            "detail": dc.detail,
        },
    }
    if not cr.passed:
        rec["reason"] = cr.reason()
    return rec


def cmd_analyze(args) -> int:
    o = _read_origami(args.input)
    if args.orbit:
        _emit(orbit(o).to_dict(), args.out)
        return EXIT_OK
    if args.direction:
        q, p = parse_slope(args.direction)
        _emit(direction_report(o, q, p), args.out)
        return EXIT_OK
    orb = orbit(o)
    reports = [direction_report(o, *c.direction) for c in cusps(orb)]
    rec = {
        "origami": o.to_dict(),
        "genus": genus(o),
        "stratum": list(stratum(o).zero_orders),
        "orbit_size": len(orb),
        "directions": reports,
        "pass": all(r["pass"] for r in reports),
    }
    if genus(o) >= 2:
        rec["filter_report"] = rank1_filter(o, orb=orb).to_dict()
    _emit(rec, args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    if args.example:
        o = EXAMPLES[args.example]()
    else:
        vals = args.cyclic
        if len(vals) != 5:
            raise UsageError("--cyclic expects N,a1,a2,a3,a4")
        o = canonical_form(build_origami(validate_cover(vals[0], vals[1:])))
    _emit(o.to_dict(), args.out)
    return EXIT_OK


def cmd_lyapunov(args) -> int:
    o = _read_origami(args.input)
    est = random_walk_exponents(o, args.steps, args.seed, walk=args.walk)
    _emit(est.to_dict(), args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.min_squares < 1 or args.max_squares < args.min_squares:
        if not args.input:
            raise UsageError("need 1 <= --min-squares <= --max-squares")
    job = SearchJob(
        strata=[tuple(sorted(s, reverse=True)) for s in (args.stratum or [])],
        min_squares=args.min_squares,
        max_squares=args.max_squares,
        filters=args.filters,
        steps=args.steps,
        seed=args.seed,
        tol=args.tol,
        output_path=args.out,
        inputs=args.input or [],
    )
    summary = run_search(job, resume=args.resume, threads=args.threads)
    _emit(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rank1lab", description="Square-tiled surfaces and rank-one filters.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("search", help="enumerate origamis and filter one candidate per orbit")
    s.add_argument("--stratum", type=_ints, action="append", help="zero orders, e.g. 1,1 (repeatable)")
    s.add_argument("--min-squares", type=int, default=1)
    s.add_argument("--max-squares", type=int, default=0)
    s.add_argument("--filters", type=_filters, default=["config", "pinch"])
    s.add_argument("--steps", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=0.05)
    s.add_argument("--out", required=True)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--input", action="append", help="file of explicit candidates, one origami per line")
    s.set_defaults(func=cmd_search)

    a = sub.add_parser("analyze", help="cylinder decompositions, configuration and pinch reports")
    a.add_argument("--input", required=True)
    a.add_argument("--direction", help="slope p/q; 0/1 is horizontal, 1/0 vertical")
    a.add_argument("--orbit", action="store_true", help="dump the SL(2,Z)-orbit instead")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("build", help="construct a square-tiled cyclic cover")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--cyclic", type=_ints, help="N,a1,a2,a3,a4")
    g.add_argument("--example", choices=sorted(EXAMPLES))
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    ly = sub.add_parser("lyapunov", help="estimate the normalised Lyapunov spectrum")
    ly.add_argument("--input", required=True)
    ly.add_argument("--steps", type=int, default=1_000_000)
    ly.add_argument("--seed", type=int, default=0)
    ly.add_argument("--walk", choices=("gauss", "uniform"), default="gauss")
    ly.add_argument("--out")
    ly.set_defaults(func=cmd_lyapunov)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidDirection) as exc:
        print(f"rank1lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Rank1LabError, OSError) as exc:
        print(f"rank1lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
