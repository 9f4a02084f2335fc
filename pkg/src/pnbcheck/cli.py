"""Command-line entry point.

Exit codes: 0 reachable, 1 unreachable, 2 error or bad usage.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from .checker import CheckOptions, check, evaluate
from .errors import PnbError
from .expr import subexpr
from .library import blocking_cap, counter_expr
from .oracle import flatten, search
from .semantics import DEFAULT_STATE_BUDGET
from .textio import StatsReport, emit_dot_net, emit_dot_nfa, parse_file

log = logging.getLogger("pnbcheck")

EXIT_REACHABLE, EXIT_UNREACHABLE, EXIT_ERROR = 0, 1, 2


def _flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--reduce", choices=["none", "trim", "standard"],
                   help="reduction applied to every intermediate automaton (default: standard)")
    p.add_argument("--no-memo", action="store_true", help="disable memoisation of compositions")
    p.add_argument("--mode", choices=["full", "boundary-complete"],
                   help="step enumeration for leaf semantics (default: boundary-complete)")
    p.add_argument("--budget", type=int, help=f"state budget (default: {DEFAULT_STATE_BUDGET})")
    p.add_argument("--assoc", choices=["greedy", "tree"],
                   help="association of ';' chains (default: greedy)")
    p.add_argument("--stats", metavar="PATH", help="write a JSON statistics document")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    flags = _flags()
    parser = argparse.ArgumentParser(
        prog="pnbcheck",
        description="Compositional reachability checking for Petri nets with boundaries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[flags], help="decide reachability compositionally")
    c.add_argument("file")
    c.add_argument("--engine", choices=["compositional", "monolithic"])

    o = sub.add_parser("oracle", parents=[flags], help="monolithic search with a witness")
    o.add_argument("file")

    b = sub.add_parser("bench", parents=[flags], help="time a built-in net family")
    b.add_argument("family", choices=["counter"])
    b.add_argument("--n", type=int, required=True, help="number of bits")
    b.add_argument("--engine", choices=["compositional", "monolithic"], default="compositional")
    b.add_argument("--target", help="target bit string (default: all ones)")
    b.add_argument("--blocking-cap", action="store_true",
                   help="use a cap that refuses the overflow carry")
    b.add_argument("--header", action="store_true", help="print the CSV header first")

    d = sub.add_parser("dot", parents=[flags], help="emit Graphviz for a net or an automaton")
    d.add_argument("file")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--net", metavar="NAME", help="a net defined in the file")
    g.add_argument("--nfa", metavar="NODE",
                   help="reduced automaton of the expression node at path NODE (e.g. r, r.0.1)")
    d.add_argument("--show-silent", action="store_true", help="draw silent self-loops")
    return parser


def _options(args, file_options: dict | None = None) -> CheckOptions:
    fo = dict(file_options or {})

    def pick(flag, key, default):
        val = getattr(args, flag, None)
        if val is not None:
            return val
        return fo.get(key, default)

    memo = fo.get("memo", "on") not in ("off", "false", "no", "0")
    if args.no_memo:
        memo = False
    try:
        return CheckOptions(
            reduce_level=pick("reduce", "reduce", "standard"),
            memo=memo,
            step_mode=pick("mode", "mode", "boundary-complete"),
            budget=int(pick("budget", "budget", DEFAULT_STATE_BUDGET)),
            engine=pick("engine", "engine", "compositional"),
            assoc=pick("assoc", "assoc", "greedy"),
        )
    except ValueError as exc:
        raise PnbError(f"bad option: {exc}") from exc


def _write_stats(path, result, opts):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(StatsReport.from_result(result, opts).to_json() + "\n")


def _need_expr(pf, path):
    if pf.expr is None:
        raise PnbError(f"{path}: no 'expr' line")
    return pf.expr


def cmd_check(args) -> int:
    pf = parse_file(args.file)
    opts = _options(args, pf.options)
    result = check(_need_expr(pf, args.file), opts)
    print("REACHABLE" if result.reachable else "UNREACHABLE")
    log.info("%d composition(s), %d memo hit(s), %.3fs",
             len(result.stats), result.memo_hits, result.total_time)
    if args.stats:
        _write_stats(args.stats, result, opts)
    return EXIT_REACHABLE if result.reachable else EXIT_UNREACHABLE


def cmd_oracle(args) -> int:
    pf = parse_file(args.file)
    opts = _options(args, pf.options)
    opts.engine = "monolithic"
    problem = flatten(_need_expr(pf, args.file))
    t0 = time.perf_counter()
    res = search(problem, budget=opts.budget)
    elapsed = time.perf_counter() - t0
    print("REACHABLE" if res.reachable else "UNREACHABLE")
    if res.reachable:
        print(f"distance: {res.distance}")
        for k, name in enumerate(res.witness_names, 1):
            print(f"{k:6d}  {name}")
    log.info("%d marking(s) explored in %.3fs", res.explored, elapsed)
    if args.stats:
        from .checker import CheckResult

        verdict = "reachable" if res.reachable else "unreachable"
        _write_stats(args.stats, CheckResult(verdict, total_time=elapsed, distance=res.distance),
                     opts)
    return EXIT_REACHABLE if res.reachable else EXIT_UNREACHABLE


def cmd_bench(args) -> int:
    opts = _options(args)
    opts.engine = args.engine
    e = counter_expr(args.n, target=args.target, cap=blocking_cap() if args.blocking_cap else None)
    t0 = time.perf_counter()
    result = check(e, opts)
    elapsed = time.perf_counter() - t0
    if args.header:
        print("family,engine,n,verdict,seconds")
    print(f"counter,{args.engine},{args.n},{result.verdict},{elapsed:.6f}")
    if args.stats:
        _write_stats(args.stats, result, opts)
    return EXIT_REACHABLE if result.reachable else EXIT_UNREACHABLE


def cmd_dot(args) -> int:
    pf = parse_file(args.file)
    if args.net:
        if args.net not in pf.nets:
            raise PnbError(f"no net named {args.net!r} in {args.file}")
        sys.stdout.write(emit_dot_net(pf.nets[args.net]))
    elif args.nfa:
        opts = _options(args, pf.options)
        node = subexpr(_need_expr(pf, args.file), args.nfa)
        sys.stdout.write(emit_dot_nfa(evaluate(node, opts), args.show_silent, name=args.nfa))
    else:
        problem = flatten(_need_expr(pf, args.file))
        sys.stdout.write(emit_dot_net(problem.net, problem.init))
    return 0


COMMANDS = {"check": cmd_check, "oracle": cmd_oracle, "bench": cmd_bench, "dot": cmd_dot}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (PnbError, OSError, ValueError) as exc:
        print(f"pnbcheck: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
