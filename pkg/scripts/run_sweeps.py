"""Run the built-in accuracy sweeps and write one CSV per preset.

    python scripts/run_sweeps.py --out results/ --replicates 20 --threads 4
"""

import argparse
import pathlib
import time

from cplabel.bench import PRESETS, run_sweep, sweep_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results"))
    ap.add_argument("--presets", nargs="+", default=sorted(PRESETS), choices=sorted(PRESETS))
    ap.add_argument("--replicates", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args(argv)

    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.presets:
        cfg = PRESETS[name]()
        cfg.replicates, cfg.seed, cfg.threads = args.replicates, args.seed, args.threads
        cfg.validate()
        t0 = time.perf_counter()
        rows = run_sweep(cfg)
        path = args.out / f"{name}.csv"
        path.write_text(sweep_csv(rows))
        acc = " ".join("-" if r.mean_accuracy is None else f"{r.mean_accuracy:.3f}" for r in rows)
        print(f"{name}: {acc}  ({time.perf_counter() - t0:.1f}s) -> {path}")


if __name__ == "__main__":
    main()
