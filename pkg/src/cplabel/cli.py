"""Command-line front end.

Exit codes: 0 success, 1 usage or parse errors, 2 degenerate graphs or
refused oracle runs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import (PRESETS, TABLE_HEADER, ExperimentConfig, profile_network,
                    run_sweep, sweep_csv)
from .errors import ConfigError, DegenerateGraphError, OracleCostError, ParseError
from .graph import GeneratorSpec, generate, load_edge_list, read_canonical, to_canonical
from .oracle import DEFAULT_P_GRID, MAX_N, ratio_experiment, ratio_table_csv
from .optimizer import OptimizerConfig

EXIT_USAGE = 1
EXIT_DEGENERATE = 2

# generator parameter -> flag, for error messages
FLAG_NAMES = {
    "model": "--model", "n": "--n", "p": "--p", "p11": "--p11", "p12": "--p12",
    "p22": "--p22", "core_fraction": "--core-frac", "theta_low": "--theta-low",
    "theta_high": "--theta-high",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def labels_csv(g, labels) -> str:
    lines = ["original_node_id,label"]
    for i, c in enumerate(labels.tolist()):
        lines.append(f"{g.node_label(i)},{'core' if c else 'periphery'}")
    return "\n".join(lines) + "\n"


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _emit(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        _write(path, text)


def cmd_detect(args) -> int:
    try:
        if args.format == "canonical":
            g = read_canonical(args.input)
        else:
            g = load_edge_list(args.input)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = OptimizerConfig(seed=args.seed, restarts=args.restarts, threads=args.threads)
    try:
        prof = profile_network(g, cfg, name=args.name or Path(args.input).name)
    except DegenerateGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    if args.labels_out:
        _write(args.labels_out, labels_csv(g, prof.labels))
    summary = {
        "input": args.input,
        "n": g.n,
        "m": g.m,
        "T": repr(prof.T),
        "k": prof.k,
        "passes": prof.passes,
        "restarts": args.restarts,
        "seed": args.seed,
        "wall_time_seconds": f"{prof.time_s:.6f}",
        "converged": str(prof.converged).lower(),
        "local_optimum": str(prof.local_optimum).lower(),
        "tool_version": __version__,
    }
    if args.summary_out:
        _write(args.summary_out, "".join(f"{k}={v}\n" for k, v in summary.items()))
    print(TABLE_HEADER)
    print(prof.row())
    return 0


def cmd_generate(args) -> int:
    spec = GeneratorSpec(
        model=args.model, n=args.n, p=args.p, p11=args.p11, p12=args.p12, p22=args.p22,
        core_fraction=args.core_frac, theta_low=args.theta_low, theta_high=args.theta_high,
        seed=args.seed,
    )
    try:
        g, truth = generate(spec)
    except ConfigError as exc:
        flags = ", ".join(FLAG_NAMES.get(p, p) for p in exc.params)
        print(f"error: invalid {flags}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args.out, to_canonical(g))
    if args.truth_out:
        _write(args.truth_out, labels_csv(g, truth))
    return 0


def _parse_grid(text: str):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--p-grid must be a comma-separated list of numbers, got {text!r}")
    if not vals or any(not 0.0 <= v <= 1.0 for v in vals):
        raise UsageError("--p-grid values must lie in [0, 1]")
    return vals


def cmd_oracle(args) -> int:
    if args.n > MAX_N:
        print(f"error: --n {args.n} exceeds {MAX_N}; exhaustive search costs 2**n "
              f"= {2 ** args.n} evaluations per graph", file=sys.stderr)
        return EXIT_DEGENERATE
    grid = _parse_grid(args.p_grid) if args.p_grid else list(DEFAULT_P_GRID)
    rows = ratio_experiment(grid, replicates=args.replicates, n=args.n, seed=args.seed,
                            threads=args.threads)
    _emit(args.out, ratio_table_csv(rows))
    return 0


def cmd_bench(args) -> int:
    try:
        if args.config:
            cfg = ExperimentConfig.from_json(Path(args.config).read_text(encoding="utf-8"))
        elif args.preset:
            cfg = PRESETS[args.preset]()
        else:
            raise UsageError("bench needs --config or --preset")
        if args.replicates is not None:
            cfg.replicates = args.replicates
        if args.seed is not None:
            cfg.seed = args.seed
        if args.restarts is not None:
            cfg.restarts = args.restarts
        cfg.threads = args.threads
        cfg.validate()
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args.out, sweep_csv(run_sweep(cfg)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cplabel", description="Core-periphery detection by label switching.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("detect", help="find core-periphery labels for an edge list")
    d.add_argument("--input", required=True, help="edge-list file")
    d.add_argument("--format", choices=("edgelist", "canonical"), default="edgelist",
                   help="input format (canonical = output of 'generate')")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--restarts", type=int, default=1)
    d.add_argument("--threads", type=int, default=1)
    d.add_argument("--labels-out", help="CSV of original_node_id,label")
    d.add_argument("--summary-out", help="key=value run summary")
    d.add_argument("--name", help="network name for the printed row (default: file name)")
    d.set_defaults(func=cmd_detect)

    g = sub.add_parser("generate", help="sample an ER / SBM / DCBM graph")
    g.add_argument("--model", choices=("er", "sbm", "dcbm"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=0.0, help="ER edge probability")
    g.add_argument("--p11", type=float, default=None, help="core-core probability (default 2*p12)")
    g.add_argument("--p12", type=float, default=0.02, help="core-periphery probability")
    g.add_argument("--p22", type=float, default=0.001, help="periphery-periphery probability")
    g.add_argument("--core-frac", type=float, default=0.1)
    g.add_argument("--theta-low", type=float, default=0.6)
    g.add_argument("--theta-high", type=float, default=0.8)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-", help="canonical edge list (default stdout)")
    g.add_argument("--truth-out", help="CSV of planted labels")
    g.set_defaults(func=cmd_generate)

    o = sub.add_parser("oracle", help="greedy vs exhaustive ratio on small ER graphs")
    o.add_argument("--n", type=int, default=20)
    o.add_argument("--p-grid", help="comma-separated edge probabilities (default 0.05..0.95)")
    o.add_argument("--replicates", type=int, default=100)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--threads", type=int, default=1)
    o.add_argument("--out", default="-")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bench", help="accuracy / runtime sweep on block models")
    b.add_argument("--config", help="JSON experiment file")
    b.add_argument("--preset", choices=sorted(PRESETS))
    b.add_argument("--replicates", type=int, default=None, help="override (default 20)")
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--restarts", type=int, default=None)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateGraphError, OracleCostError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
