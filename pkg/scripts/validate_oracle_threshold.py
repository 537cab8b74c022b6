"""Empirical check of the descent cutoff.

For random instances, compares the descent oracle at its default cutoff n*R
against a much deeper cutoff and against brute force, and reports how close
the lowest finite value of the greatest normalized solution gets to the
cutoff. A value below -(n-1)*R would contradict the cutoff argument.

    python scripts/validate_oracle_threshold.py --instances 5000
"""

import argparse
import random
from fractions import Fraction

from maxatom.model import NEG_INF, AtomSystem, MaxAtom
from maxatom.oracle import exhaustive_search, integer_scaled, kleene_descent


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--instances", type=int, default=5000)
    p.add_argument("--max-vars", type=int, default=5)
    p.add_argument("--max-atoms", type=int, default=8)
    p.add_argument("--range", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = random.Random(args.seed)

    deep_mismatch = brute_mismatch = sat = 0
    worst = 0.0  # lowest value seen, as a fraction of (n-1)*R
    for _ in range(args.instances):
        n = rng.randint(1, args.max_vars)
        system = AtomSystem(n, [
            MaxAtom(rng.randint(1, n), rng.randint(1, n), rng.randint(1, n),
                    Fraction(rng.randint(-args.range, args.range)))
            for _ in range(rng.randint(1, args.max_atoms))
        ])
        _, scale, big = integer_scaled(system)
        base = kleene_descent(system)
        deep = kleene_descent(system, threshold=4 * (n + 1) * big + 4)
        deep_mismatch += (base.kind, base.assignment) != (deep.kind, deep.assignment)
        if n <= 4:
            brute = exhaustive_search(system, (n + 1) * big + 1)
            brute_mismatch += (base.kind, base.assignment) != (brute.kind, brute.assignment)
        if base.is_sat:
            sat += 1
            low = min(x for x in base.assignment.values() if x is not NEG_INF)
            if n > 1 and big:
                worst = max(worst, float(-low) / ((n - 1) * big))

    print(f"instances            {args.instances}")
    print(f"sat                  {sat}")
    print(f"deep cutoff differs  {deep_mismatch}")
    print(f"brute force differs  {brute_mismatch}  (n <= 4 only)")
    print(f"max depth / (n-1)R   {worst:.3f}  (must not exceed 1)")


if __name__ == "__main__":
    main()
