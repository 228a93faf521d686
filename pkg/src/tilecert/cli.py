"""Command-line interface: ``tilecert prove``, ``tilecert replay`` and the hidden ``oracle``."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import StrategySyntaxError, TpdbSyntaxError
from .oracles import EnumBounds, oc_pairs_enum, reach_enum, rfc_enum, roc_enum
from .srs import parse_tpdb, render_tpdb, show_word, word
from .strategy import YES, Budget, auto_prove, parse_strategy, replay, replay_step, run_strategy
from .traceio import from_json, to_json, to_text

EXIT_YES, EXIT_MAYBE, EXIT_INPUT = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit_tpdb(trace, directory: str) -> None:
    os.makedirs(directory, exist_ok=True)
    problems = [trace.initial]
    cur = trace.initial
    for step in trace.steps:
        cur, _ = replay_step(cur, step)
        problems.append(cur)
    names = ["input"] + [s.name.lower() + (f"{s.params['k']}" if "k" in s.params else "")
                         for s in trace.steps]
    for i, (p, name) in enumerate(zip(problems, names)):
        with open(os.path.join(directory, f"{i:02d}-{name}.srs"), "w", encoding="utf-8") as fh:
            fh.write(render_tpdb(p) + "\n")


def cmd_prove(args) -> int:
    try:
        problem = parse_tpdb(_read(args.input))
        strategy = parse_strategy(args.strategy) if args.strategy else None
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (TpdbSyntaxError, StrategySyntaxError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    budget = Budget(timeout=args.timeout, tile_cap=args.tile_cap, max_steps=args.max_steps)
    if strategy is None:
        trace = auto_prove(problem, budget)
    else:
        trace = run_strategy(problem, strategy, budget)
    rendered = to_json(trace) if args.format == "json" else to_text(trace)
    sys.stdout.write(rendered)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(to_json(trace) if args.trace.endswith(".json") else rendered)
    if args.emit_tpdb:
        _emit_tpdb(trace, args.emit_tpdb)
    if args.plot:
        from .report import plot_sizes

        plot_sizes(trace, args.plot)
    return EXIT_YES if trace.verdict == YES else EXIT_MAYBE


def cmd_replay(args) -> int:
    try:
        trace = from_json(_read(args.trace))
    except (OSError, ValueError, KeyError, TpdbSyntaxError) as e:
        print(f"error: cannot load trace: {e}", file=sys.stderr)
        return EXIT_INPUT
    report = replay(trace)
    if report:
        print(f"OK {trace.verdict}")
        return EXIT_YES
    print(f"MISMATCH at step {report.step}: {report.reason}")
    return EXIT_MAYBE


def cmd_oracle(args) -> int:
    try:
        problem = parse_tpdb(_read(args.input))
    except (OSError, TpdbSyntaxError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    b = EnumBounds(args.max_length, args.max_rounds, args.max_size)
    if args.kind == "reach":
        result = reach_enum(problem.rules, [word(s) for s in args.seed], b)
    elif args.kind == "rfc":
        result = rfc_enum(problem.rules, b)
    elif args.kind == "roc":
        result = roc_enum(problem.rules, b)
    else:
        result = oc_pairs_enum(problem.rules, b)
    if args.kind == "oc":
        lines = sorted(f"{show_word(s) or 'ε'} -> {show_word(t) or 'ε'}" for s, t in result)
    else:
        lines = sorted(show_word(w) or "ε" for w in result)
    print("\n".join(lines))
    print(f"# {len(result)} items{' (truncated)' if result.truncated else ''}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tilecert",
                                     description="Termination prover for string rewriting by sparse tiling.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{prove,replay}")

    prove = sub.add_parser("prove", help="prove (relative) termination of a TPDB problem")
    prove.add_argument("--input", required=True, help="TPDB file, or - for stdin")
    mode = prove.add_mutually_exclusive_group()
    mode.add_argument("--strategy", help='e.g. "trfcu:2; mirror; trfcu:2"')
    mode.add_argument("--auto", action="store_true", help="race the default portfolio (default)")
    prove.add_argument("--timeout", type=float, default=60.0, help="seconds (default 60)")
    prove.add_argument("--tile-cap", type=int, default=None,
                       help="per-step tile budget (default 2*(|alphabet|+2)^k)")
    prove.add_argument("--max-steps", type=int, default=64, help=argparse.SUPPRESS)
    prove.add_argument("--trace", help="also write the trace here (JSON if it ends in .json)")
    prove.add_argument("--emit-tpdb", metavar="DIR", help="write every intermediate problem as TPDB")
    prove.add_argument("--format", choices=("text", "json"), default="text")
    prove.add_argument("--plot", metavar="FILE", help="save a figure of the size chain")
    prove.set_defaults(func=cmd_prove)

    rep = sub.add_parser("replay", help="re-check a JSON trace")
    rep.add_argument("trace")
    rep.set_defaults(func=cmd_replay)

    oracle = sub.add_parser("oracle")
    oracle.add_argument("--input", required=True)
    oracle.add_argument("--kind", choices=("reach", "rfc", "roc", "oc"), default="rfc")
    oracle.add_argument("--seed", action="append", default=[])
    oracle.add_argument("--max-length", type=int, default=8)
    oracle.add_argument("--max-rounds", type=int, default=50)
    oracle.add_argument("--max-size", type=int, default=20000)
    oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
