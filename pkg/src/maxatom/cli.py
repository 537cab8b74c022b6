"""Command line: solve, oracle, verify, gen, fuzz, bench.

Exit codes: 0 sat, 1 trivial, 2 input error, 3 bound exceeded or failed
verification gate. ``fuzz`` exits 0 when every trial agreed, 1 when only
verdict disagreements were recorded, 3 when a soundness or bound failure was.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .harness import CampaignConfig, bench, format_bench, run_differential
from .instances import MODES, ParseError, emit_instance, emit_solution, generate, parse_instance, parse_solution
from .model import verify
from .oracle import exhaustive_search, kleene_descent
from .solver import algorithm_a

EXIT_SAT, EXIT_TRIVIAL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _read_instance(path: str):
    try:
        return parse_instance(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def cmd_solve(args) -> int:
    system = _read_instance(args.file)
    outcome, counters = algorithm_a(system)
    if outcome.kind == "bound":
        dump = Path(args.counterexample or f"{args.file}.counterexample.json")
        payload = {
            "instance": emit_instance(system),
            "diagnostic": outcome.diagnostic,
            "counters": counters.as_dict(),
        }
        dump.write_text(json.dumps(payload, indent=2, default=str) + "\n", encoding="utf-8")
        print(f"error: {outcome.diagnostic['reason']} (details in {dump})", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(emit_solution(outcome.assignment))
    if args.counters:
        print(json.dumps(counters.as_dict(), sort_keys=True), file=sys.stderr)
    return EXIT_SAT if outcome.is_sat else EXIT_TRIVIAL


def cmd_oracle(args) -> int:
    system = _read_instance(args.file)
    if args.exhaustive:
        try:
            verdict = exhaustive_search(system, args.threshold)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        verdict = kleene_descent(system, args.threshold)
    sys.stdout.write(emit_solution(verdict.assignment))
    return EXIT_SAT if verdict.is_sat else EXIT_TRIVIAL


def cmd_verify(args) -> int:
    system = _read_instance(args.file)
    try:
        status, values = parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {args.solution}: {exc.strerror}") from None
    if status == "trivial":
        print("trivial assignment: satisfies every atom")
        return EXIT_TRIVIAL
    try:
        rep = verify(system, values)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    for a in rep.violated:
        print(f"violated: {a}")
    if not rep.satisfied:
        return EXIT_TRIVIAL
    if not rep.nontrivial:
        print("assignment is all -inf")
        return EXIT_TRIVIAL
    print("ok")
    return EXIT_SAT


def cmd_gen(args) -> int:
    system = generate(args.vars, args.atoms, (-args.range, args.range), args.seed, args.mode)
    sys.stdout.write(emit_instance(system))
    return 0


def cmd_fuzz(args) -> int:
    config = CampaignConfig(args.vars, args.atoms, (-args.range, args.range))
    with open(args.report, "a", encoding="utf-8") as sink:
        report = run_differential(args.trials, config, args.seed, sink)
    print(json.dumps(report.summary(), indent=2, sort_keys=True))
    if report.flags.get("bound") or report.flags.get("verify_failed") or report.flags.get("oracle_invalid"):
        return EXIT_INTERNAL
    return 0 if not report.disagreements else 1


def _sizes(text: str):
    out = []
    for part in text.split(","):
        n, _, m = part.strip().lower().partition("x")
        out.append((int(n), int(m)))
    return out


def cmd_bench(args) -> int:
    rows = bench(args.sizes, args.seed)
    print(format_bench(rows))
    return EXIT_INTERNAL if any(r.violations or r.outcome == "bound" for r in rows) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxatom", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run Algorithm A")
    s.add_argument("file")
    s.add_argument("--counters", action="store_true", help="print step counters to stderr")
    s.add_argument("--counterexample", help="where to write diagnostics on exit code 3")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="run the reference solver")
    s.add_argument("file")
    s.add_argument("--threshold", type=int, help="cutoff (descent) or depth (exhaustive), scaled units")
    s.add_argument("--exhaustive", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", help="check a solution file against an instance")
    s.add_argument("file")
    s.add_argument("solution")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="generate a random instance")
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--atoms", type=int, required=True)
    s.add_argument("--range", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=MODES, default="uniform")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("fuzz", help="differential campaign against the oracle")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--vars", type=int, default=6)
    s.add_argument("--atoms", type=int, default=10)
    s.add_argument("--range", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", required=True)
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("bench", help="time Algorithm A on planted instances")
    s.add_argument("--sizes", type=_sizes, default=_sizes("10x20,20x40,40x80"))
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
