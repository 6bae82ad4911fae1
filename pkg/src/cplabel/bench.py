"""Monte-Carlo sweeps over block-model graphs and per-network profiles."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError, DegenerateGraphError
from .graph import MODELS, Graph, GeneratorSpec, generate
from .optimizer import OptimizerConfig, assert_local_optimum, detect

SWEEP_COLUMNS = (
    "swept_param",
    "value",
    "mean_accuracy",
    "mean_T",
    "mean_time_s",
    "mean_passes",
    "replicates",
)

SWEPT_PARAMS = ("p12", "n", "p")


def accuracy(estimated, truth) -> float:
    """Fraction of nodes whose label matches the planted one (no relabelling)."""
    est = np.asarray(estimated)
    tru = np.asarray(truth)
    if est.shape != tru.shape:
        raise ValueError(f"label vectors differ in length: {est.shape} vs {tru.shape}")
    if est.size == 0:
        raise ValueError("empty label vectors")
    return float(np.mean(est == tru))


@dataclass
class ExperimentConfig:
    """One parameter sweep.

    ``swept`` names the varied generator parameter; ``fixed`` holds the
    remaining :class:`GeneratorSpec` fields.
    """

    model: str = "sbm"
    swept: str = "p12"
    values: list = field(default_factory=list)
    fixed: dict = field(default_factory=dict)
    replicates: int = 20
    seed: int = 0
    restarts: int = 1
    threads: int = 1

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}", ["model"])
        if self.swept not in SWEPT_PARAMS:
            raise ConfigError(f"cannot sweep {self.swept!r}", ["swept"])
        if self.swept in self.fixed:
            raise ConfigError(f"{self.swept} is both swept and fixed", ["swept", "fixed"])
        if not self.values:
            raise ConfigError("sweep needs at least one value", ["values"])
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1", ["replicates"])
        for v in self.values:
            self.spec_for(v, 0).validate()

    def spec_for(self, value, seed: int) -> GeneratorSpec:
        kw = dict(self.fixed)
        kw[self.swept] = int(value) if self.swept == "n" else float(value)
        try:
            return GeneratorSpec(model=self.model, seed=seed, **kw)
        except TypeError as exc:
            raise ConfigError(f"bad generator parameter: {exc}", ["fixed"]) from None

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        if not d:
            raise ConfigError("empty experiment config")
        d = dict(d)
        preset = d.pop("preset", None)
        if preset is not None and preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}", ["preset"])
        base = asdict(PRESETS[preset]()) if preset else {}
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}", sorted(unknown))
        base.update(d)
        cfg = cls(**base)
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        if not text.strip():
            raise ConfigError("empty experiment config")
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(d)


def _grid(start, step, count, digits=6):
    return [round(start + step * i, digits) for i in range(count)]


def sbm_p12_sweep() -> ExperimentConfig:
    return ExperimentConfig(
        model="sbm", swept="p12", values=_grid(0.002, 0.002, 10),
        fixed={"n": 1000, "p22": 0.001, "core_fraction": 0.1},
    )


def sbm_n_sweep() -> ExperimentConfig:
    return ExperimentConfig(
        model="sbm", swept="n", values=list(range(500, 2001, 250)),
        fixed={"p12": 0.005, "p22": 0.001, "core_fraction": 0.1},
    )


def dcbm_p12_sweep() -> ExperimentConfig:
    return ExperimentConfig(
        model="dcbm", swept="p12", values=_grid(0.05, 0.01, 11),
        fixed={"n": 1000, "p22": 0.05, "core_fraction": 0.1},
    )


def dcbm_n_sweep() -> ExperimentConfig:
    return ExperimentConfig(
        model="dcbm", swept="n", values=list(range(500, 2001, 250)),
        fixed={"p12": 0.10, "p22": 0.05, "core_fraction": 0.1},
    )


PRESETS = {
    "sbm-p12": sbm_p12_sweep,
    "sbm-n": sbm_n_sweep,
    "dcbm-p12": dcbm_p12_sweep,
    "dcbm-n": dcbm_n_sweep,
}


@dataclass
class SweepRow:
    swept_param: str
    value: float
    mean_accuracy: Optional[float]
    mean_T: float
    mean_time_s: float
    mean_passes: float
    replicates: int
    failures: int = 0


def replicate_seeds(seed: int, point: int, rep: int):
    """Graph and search seeds for replicate ``rep`` at grid index ``point``."""
    ss = np.random.SeedSequence([int(seed), int(point), int(rep)])
    a, b = ss.generate_state(2, np.uint64)
    return int(a), int(b)


def _one(cfg: ExperimentConfig, point: int, value, rep: int):
    gseed, dseed = replicate_seeds(cfg.seed, point, rep)
    g, truth = generate(cfg.spec_for(value, gseed))
    try:
        res = detect(g, OptimizerConfig(seed=dseed, restarts=cfg.restarts))
    except DegenerateGraphError:
        return None
    acc = None if cfg.model == "er" else accuracy(res.labels, truth)
    return acc, res.T, res.wall_time, res.passes


def run_sweep(cfg: ExperimentConfig) -> list:
    """Generate, detect and score every (grid point, replicate) pair.

    ER sweeps have no planted labels, so their accuracy is left as None.
    """
    cfg.validate()
    rows = []
    for point, value in enumerate(cfg.values):
        jobs = [(cfg, point, value, r) for r in range(cfg.replicates)]
        if cfg.threads > 1:
            with ThreadPoolExecutor(cfg.threads) as pool:
                out = list(pool.map(lambda a: _one(*a), jobs))
        else:
            out = [_one(*a) for a in jobs]
        ok = [o for o in out if o is not None]
        failures = len(out) - len(ok)
        if ok:
            accs = [o[0] for o in ok]
            mean_acc = None if accs[0] is None else float(np.mean(accs))
            mean_t = float(np.mean([o[1] for o in ok]))
            mean_time = float(np.mean([o[2] for o in ok]))
            mean_passes = float(np.mean([o[3] for o in ok]))
        else:
            mean_acc, mean_t, mean_time, mean_passes = None, math.nan, math.nan, math.nan
        rows.append(SweepRow(cfg.swept, value, mean_acc, mean_t, mean_time, mean_passes,
                             len(ok), failures))
    return rows


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([r.swept_param, _fmt(r.value), _fmt(r.mean_accuracy), _fmt(r.mean_T),
                    _fmt(r.mean_time_s), _fmt(r.mean_passes), r.replicates])
    return buf.getvalue()


def read_sweep_csv(text: str) -> list:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        value = float(rec["value"])
        if rec["swept_param"] == "n":
            value = int(value)
        rows.append(SweepRow(
            swept_param=rec["swept_param"],
            value=value,
            mean_accuracy=float(rec["mean_accuracy"]) if rec["mean_accuracy"] else None,
            mean_T=float(rec["mean_T"]),
            mean_time_s=float(rec["mean_time_s"]),
            mean_passes=float(rec["mean_passes"]),
            replicates=int(rec["replicates"]),
        ))
    return rows


# --------------------------------------------------------------------------
# single networks


@dataclass
class NetworkProfile:
    name: str
    n: int
    m: int
    T: float
    k: int
    time_s: float
    passes: int
    converged: bool
    local_optimum: bool
    labels: np.ndarray = field(repr=False, default=None)

    def row(self) -> str:
        return f"{self.name}\t{self.T:.2f}\t{self.k}\t{self.time_s:.3f}"


TABLE_HEADER = "network\tT\tk\ttime_s"


def profile_network(g: Graph, cfg: Optional[OptimizerConfig] = None, name: str = "graph"):
    """Detect on one graph and collect the objective, core size and timing."""
    res = detect(g, cfg)
    return NetworkProfile(
        name=name,
        n=g.n,
        m=g.m,
        T=res.T,
        k=res.k,
        time_s=res.wall_time,
        passes=res.passes,
        converged=res.converged,
        local_optimum=assert_local_optimum(g, res.labels),
        labels=res.labels,
    )
