import json

import numpy as np
import pytest

from cplabel.bench import (ExperimentConfig, _one, accuracy, profile_network, read_sweep_csv,
                           replicate_seeds, run_sweep, sbm_p12_sweep, sweep_csv)
from cplabel.errors import ConfigError
from cplabel.graph import Graph
from cplabel.optimizer import OptimizerConfig
from cplabel.oracle import brute_force, cycle4


def test_accuracy_definition():
    a = np.array([1, 0, 1, 1, 0, 0, 0, 1, 1, 0])
    assert accuracy(a, a) == 1.0
    assert accuracy(a, 1 - a) == 0.0
    b = a.copy()
    b[:3] = 1 - b[:3]
    assert accuracy(b, a) == pytest.approx(0.7)
    with pytest.raises(ValueError):
        accuracy(a, a[:-1])


def small_sbm(**kw):
    base = dict(model="sbm", swept="p12", values=[0.05, 0.1],
                fixed={"n": 150, "p22": 0.01}, replicates=3, seed=4)
    base.update(kw)
    return ExperimentConfig(**base)


def test_sweep_rows_and_csv_round_trip():
    rows = run_sweep(small_sbm())
    assert [r.value for r in rows] == [0.05, 0.1]
    for r in rows:
        assert 0.0 <= r.mean_accuracy <= 1.0
        assert r.replicates == 3 and r.failures == 0
    back = read_sweep_csv(sweep_csv(rows))
    for a, b in zip(rows, back):
        assert (a.swept_param, a.value, a.mean_accuracy, a.mean_T, a.mean_time_s,
                a.mean_passes, a.replicates) == (b.swept_param, b.value, b.mean_accuracy,
                                                 b.mean_T, b.mean_time_s, b.mean_passes,
                                                 b.replicates)


def test_sweep_deterministic_apart_from_timing():
    a, b = run_sweep(small_sbm()), run_sweep(small_sbm(threads=2))
    for x, y in zip(a, b):
        assert (x.mean_accuracy, x.mean_T, x.mean_passes) == (y.mean_accuracy, y.mean_T,
                                                              y.mean_passes)


def test_n_sweep_and_er_refuses_accuracy():
    rows = run_sweep(ExperimentConfig(model="er", swept="n", values=[30, 60],
                                      fixed={"p": 0.2}, replicates=2))
    assert all(r.mean_accuracy is None for r in rows)
    assert sweep_csv(rows).splitlines()[1].split(",")[2] == ""
    assert read_sweep_csv(sweep_csv(rows))[0].value == 30


def test_failures_counted():
    rows = run_sweep(ExperimentConfig(model="er", swept="p", values=[0.0],
                                      fixed={"n": 10}, replicates=3))
    assert rows[0].replicates == 0 and rows[0].failures == 3


def test_seed_isolation():
    assert replicate_seeds(0, 2, 5) == replicate_seeds(0, 2, 5)
    assert replicate_seeds(0, 2, 5) != replicate_seeds(0, 2, 6)
    assert replicate_seeds(0, 2, 5) != replicate_seeds(0, 3, 5)
    # a replicate's outcome does not depend on the rest of the grid or replicate count
    a = _one(small_sbm(values=[0.05, 0.1], replicates=2), 1, 0.1, 1)
    b = _one(small_sbm(values=[0.3, 0.1], replicates=9), 1, 0.1, 1)
    assert a[:2] == b[:2] and a[3] == b[3]


def test_preset_grid():
    cfg = sbm_p12_sweep()
    assert cfg.values == [0.002, 0.004, 0.006, 0.008, 0.01, 0.012, 0.014, 0.016, 0.018, 0.02]
    assert cfg.fixed["n"] == 1000 and cfg.fixed["p22"] == 0.001


@pytest.mark.parametrize(
    "text",
    ["", "{}", "[1, 2]", "not json", json.dumps({"swept": "q"}),
     json.dumps({"preset": "nope"}), json.dumps({"values": [0.1], "bogus": 1}),
     json.dumps({"model": "sbm", "swept": "p12", "values": [0.1],
                 "fixed": {"n": 100, "p22": 0.5}})],
)
def test_bad_configs(text):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json(text)


def test_config_from_preset_with_override():
    cfg = ExperimentConfig.from_json(json.dumps({"preset": "dcbm-p12", "replicates": 5}))
    assert cfg.model == "dcbm" and cfg.replicates == 5 and len(cfg.values) == 11


def test_profile_star_and_cycle():
    star = Graph.from_edges(100, [(0, j) for j in range(1, 100)])
    prof = profile_network(star, OptimizerConfig(seed=1), name="star")
    assert (prof.T, prof.k) == (1.0, 1)
    assert prof.local_optimum and prof.converged
    assert prof.row().startswith("star\t1.00\t1\t")

    g = cycle4()
    prof = profile_network(g, OptimizerConfig(seed=0, restarts=16))
    assert prof.T == brute_force(g).best_T
