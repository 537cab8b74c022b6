"""Wall time and step counters of Algorithm A on planted instances of growing size.

    python scripts/bench_scaling.py --sizes 10x20,20x40,40x80,60x120 --seeds 5
"""

import argparse
import statistics

from maxatom.harness import bench
from maxatom.solver import phi_step_bound


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="10x20,20x40,40x80")
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--range", type=int, default=5)
    args = p.parse_args()
    sizes = [tuple(int(t) for t in s.split("x")) for s in args.sizes.split(",")]

    print(f"{'n':>4} {'m':>4} {'sat':>5} {'median s':>9} {'max s':>7} {'max phi':>8} {'phi ceiling':>12} {'atoms':>6} {'m+n^2':>6}")
    for n, m in sizes:
        rows = [r for seed in range(args.seeds) for r in bench([(n, m)], seed, (-args.range, args.range))]
        secs = [r.seconds for r in rows]
        sat = sum(r.outcome == "sat" for r in rows)
        phi = max(r.counters.phi_steps for r in rows)
        atoms = max(r.counters.max_atoms for r in rows)
        print(f"{n:>4} {m:>4} {sat:>2}/{len(rows):<2} {statistics.median(secs):>9.3f} {max(secs):>7.3f} "
              f"{phi:>8} {phi_step_bound(n, m):>12} {atoms:>6} {m + n * n:>6}")
        for r in rows:
            if r.violations:
                print("   bound violation:", "; ".join(r.violations))


if __name__ == "__main__":
    main()
