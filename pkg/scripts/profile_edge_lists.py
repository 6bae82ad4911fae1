"""Profile one or more edge-list files and print a network/T/k/time table.

    python scripts/profile_edge_lists.py data/*.txt --restarts 5
"""

import argparse
import pathlib

from cplabel.bench import TABLE_HEADER, profile_network
from cplabel.errors import CPError
from cplabel.graph import load_edge_list
from cplabel.optimizer import OptimizerConfig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("paths", nargs="+", type=pathlib.Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=1)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    cfg = OptimizerConfig(seed=args.seed, restarts=args.restarts, threads=args.threads)
    print(TABLE_HEADER)
    for path in args.paths:
        try:
            g = load_edge_list(path)
            print(profile_network(g, cfg, name=path.stem).row())
        except CPError as e:
            print(f"{path.stem}\terror: {e}")


if __name__ == "__main__":
    main()
