"""Greedy-to-optimum ratio on small ER graphs, with optional restart sensitivity.

    python scripts/run_ratio_experiment.py --replicates 100 --threads 4
    python scripts/run_ratio_experiment.py --restarts 1 2 5 --p-max 0.5
"""

import argparse
import sys
import time

from cplabel.oracle import DEFAULT_P_GRID, ratio_experiment


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--replicates", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--restarts", type=int, nargs="+", default=[1])
    ap.add_argument("--p-max", type=float, default=0.95)
    args = ap.parse_args(argv)

    grid = [p for p in DEFAULT_P_GRID if p <= args.p_max + 1e-9]
    print("restarts\tp\tmean_ratio\tused\texcluded")
    for r in args.restarts:
        t0 = time.perf_counter()
        rows = ratio_experiment(grid, replicates=args.replicates, n=args.n, seed=args.seed,
                                threads=args.threads, restarts=r)
        for row in rows:
            print(f"{r}\t{row.p}\t{row.mean_ratio:.4f}\t{row.n_used}\t{row.n_excluded}")
        print(f"# restarts={r}: {time.perf_counter() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
