"""Differential campaign: Algorithm A against the descent oracle.

Writes a JSONL report (flagged trials, then a summary line) and prints each
verdict disagreement with a brute-force cross-check when it is small enough.

    python scripts/run_campaign.py --trials 10000 --report campaign.jsonl
"""

import argparse
import json
import logging

from maxatom.harness import CampaignConfig, run_differential
from maxatom.instances import emit_solution, parse_instance
from maxatom.oracle import EXHAUSTIVE_MAX_VARS, exhaustive_search, kleene_descent
from maxatom.solver import algorithm_a


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--vars", type=int, default=6)
    p.add_argument("--atoms", type=int, default=10)
    p.add_argument("--range", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default="campaign.jsonl")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    config = CampaignConfig(args.vars, args.atoms, (-args.range, args.range))
    with open(args.report, "w", encoding="utf-8") as sink:
        report = run_differential(args.trials, config, args.seed, sink)

    for rec in report.disagreements:
        print(f"\n# trial {rec.index} seed {rec.seed} mode {rec.mode}: A={rec.algorithm_a} oracle={rec.oracle} {rec.flags}")
        print(rec.instance, end="")
        system = parse_instance(rec.instance)
        outcome, _ = algorithm_a(system)
        print("A trace:", (outcome.diagnostic or {}).get("trace"))
        print("descent:", emit_solution(kleene_descent(system).assignment).replace("\n", "  "))
        if system.nvars <= EXHAUSTIVE_MAX_VARS:
            print("brute force:", emit_solution(exhaustive_search(system).assignment).replace("\n", "  "))
    print()
    print(json.dumps(report.summary(), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
