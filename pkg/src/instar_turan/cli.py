"""Command-line interface: ``instar-turan <subcommand> ...``.

Exit codes: 0 success, 1 negative result (witness, reject, violation),
2 usage or input error, 3 resource guard (exact-mode time or order limit).
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .constructions import ConstructionParams, construct_lower, fixture, parse_y_scheme
from .detect import find_subdivision
from .errors import GuardExceeded, InstarError
from .io import ReportDocument, emit_report, read_arclist, serialize_arclist
from .search import EVIDENCE, SearchConfig, solve
from .verify import LEMMA_IDS, THEOREM_IDS, check_extremal_family, run_lemma, verify_theorem

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _n_range(text):
    lo, sep, hi = text.partition("..")
    try:
        lo, hi = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _emit_text(text, path, out):
    if path in (None, "-"):
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _report(task, params, seed, results, elapsed, args):
    timing = {"elapsed_ms": int(elapsed * 1000)} if args.timing else None
    return emit_report(ReportDocument(task, params, seed, __version__, results, timing))


# -- subcommands ------------------------------------------------------------------


def cmd_construct(args, out):
    params = ConstructionParams(args.n, args.k, args.split, parse_y_scheme(args.y_scheme))
    g = construct_lower(params)
    _emit_text(serialize_arclist(g), args.output, out)
    if args.output not in (None, "-"):
        out.write(f"wrote {args.output}: {g.n} vertices, {g.num_arcs} arcs\n")
    return EXIT_OK


def cmd_fixture(args, out):
    g = fixture(args.id)
    _emit_text(serialize_arclist(g), args.output, out)
    if args.output not in (None, "-"):
        out.write(f"wrote {args.output}: {g.n} vertices, {g.num_arcs} arcs\n")
    return EXIT_OK


def cmd_check(args, out):
    g = read_arclist(args.file)
    w = find_subdivision(g, args.k)
    if w is None:
        out.write(f"FREE ({g.num_arcs} arcs)\n")
        return EXIT_OK
    out.write(f"WITNESS center={w.center} spokes={list(w.spokes)} leaves={list(w.leaves)}\n")
    return EXIT_NEGATIVE


def cmd_extremal_check(args, out):
    g = read_arclist(args.file)
    ok, why = check_extremal_family(g, args.k)
    out.write("ACCEPT\n" if ok else f"REJECT {why}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_turan(args, out):
    if args.mode == "heuristic" and args.seed is None:
        raise UsageError("--seed is required in heuristic mode")
    cfg = SearchConfig(
        mode=args.mode,
        seed=args.seed,
        restarts=args.restarts,
        iterations=args.iterations,
        time_limit=args.time_limit,
        threads=args.threads,
        exact_order_guard=args.max_order,
    )
    start = time.monotonic()
    res = solve(args.n, args.k, cfg)
    params = {
        "n": args.n,
        "k": args.k,
        "mode": args.mode,
        "restarts": args.restarts,
        "iterations": args.iterations,
        "threads": args.threads,
        "time_limit_ms": None if args.time_limit is None else int(args.time_limit * 1000),
        "max_order": args.max_order,
    }
    text = _report("turan", params, args.seed, res.payload(), time.monotonic() - start, args)
    if args.json:
        _emit_text(text, args.json, out)
        out.write(f"value {res.value} ({res.kind})\n")
    else:
        out.write(text)
    if args.mode != "heuristic" and res.kind == EVIDENCE:
        return EXIT_GUARD
    return EXIT_OK


def cmd_verify(args, out):
    lo, hi = args.n_range
    randomized = args.target in LEMMA_IDS or args.target in ("1.1", "1.2")
    if randomized and args.seed is None:
        raise UsageError(f"--seed is required for target {args.target}")
    start = time.monotonic()
    if args.target in LEMMA_IDS:
        report = run_lemma(args.target, range(lo, hi + 1), args.instances, args.seed)
    else:
        cfg = None
        if args.target in ("1.1", "1.2"):
            cfg = SearchConfig(mode="heuristic", seed=args.seed, restarts=args.restarts, iterations=args.iterations)
        report = verify_theorem(args.target, range(lo, hi + 1), cfg)
    params = {
        "target": args.target,
        "n_range": [lo, hi],
        "instances": args.instances,
        "restarts": args.restarts,
        "iterations": args.iterations,
    }
    text = _report("verify", params, args.seed, report.payload(), time.monotonic() - start, args)
    if args.json:
        _emit_text(text, args.json, out)
        status = "PASS" if report.passed else "FAIL"
        out.write(
            f"{status} {args.target}: {report.instances} instances, {report.hits} hits, "
            f"{len(report.violations)} violations\n"
        )
    else:
        out.write(text)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


# -- parser -------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="instar-turan", description="Oriented Turan numbers of subdivided in-stars.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="write the lower-bound construction as an arc list")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--split", type=int, help="size of the zero-in-degree side")
    c.add_argument("--y-scheme", default="circulant", help="circulant | cycles:a,b,... | offsets:a,b,...")
    c.add_argument("-o", "--output", help="output file (default: stdout)")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("check", help="test an arc-list graph for S_{k,1}")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("turan", help="compute or bound the oriented Turan number")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--mode", choices=("exact", "heuristic", "enumerate"), default="exact")
    c.add_argument("--seed", type=int)
    c.add_argument("--restarts", type=int, default=50)
    c.add_argument("--iterations", type=int, default=30)
    c.add_argument("--time-limit", type=float, help="wall-clock seconds")
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--max-order", type=int, default=7, help="largest order accepted by exact search")
    c.add_argument("--json", help="write the JSON report here instead of stdout")
    c.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    c.set_defaults(func=cmd_turan)

    c = sub.add_parser("extremal-check", help="test membership in the k=2 / k=3 extremal family")
    c.add_argument("--k", type=int, required=True, choices=(2, 3))
    c.add_argument("file")
    c.set_defaults(func=cmd_extremal_check)

    c = sub.add_parser("verify", help="run a lemma or theorem check")
    c.add_argument("--target", required=True, choices=THEOREM_IDS + LEMMA_IDS)
    c.add_argument("--n-range", type=_n_range, required=True, metavar="A..B")
    c.add_argument("--seed", type=int)
    c.add_argument("--instances", type=int, default=1000, help="random instances for lemma targets")
    c.add_argument("--restarts", type=int, default=50, help="heuristic restarts per order")
    c.add_argument("--iterations", type=int, default=30)
    c.add_argument("--json", help="write the JSON report here instead of stdout")
    c.add_argument("--timing", action="store_true")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("fixture", help="write a named fixture graph")
    c.add_argument("--id", required=True, help="H1..H7, star:K or subdiv:K")
    c.add_argument("-o", "--output", help="output file (default: stdout)")
    c.set_defaults(func=cmd_fixture)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except GuardExceeded as exc:
        err.write(f"guard: {exc}\n")
        return EXIT_GUARD
    except (InstarError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"error: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
