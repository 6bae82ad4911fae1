"""Exhaustive search over all labelings of small graphs.

Labelings are visited in binary-reflected Gray-code order, so consecutive
labelings differ in one node and the sufficient statistics update exactly
as in :meth:`cplabel.metric.MetricState.commit_flip`.  The scan itself runs
in a numba kernel; :func:`gray_code_states` is the same walk in plain
Python on top of :class:`~cplabel.metric.MetricState`, used to check the
kernel on small graphs.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np
from numba import njit

from .errors import OracleCostError
from .graph import Graph, GeneratorSpec, generate
from .metric import MetricState, be_statistic, evaluate_full, full_state
from .optimizer import OptimizerConfig, check_density, detect

MAX_N = 24

DEFAULT_P_GRID = tuple(round(0.05 * i, 2) for i in range(1, 20))


@dataclass
class OracleResult:
    best_labels: Optional[np.ndarray]
    best_T: Optional[float]
    evaluated: int
    skipped_degenerate: int

    @property
    def best_mask(self) -> int:
        if self.best_labels is None:
            return -1
        return labels_to_mask(self.best_labels)


def labels_to_mask(c) -> int:
    return sum(1 << i for i, v in enumerate(np.asarray(c).tolist()) if v)


def mask_to_labels(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=np.int8)


@njit(cache=True, nogil=True)
def _gray_scan(offsets, targets, n, m):
    labels = np.zeros(n, dtype=np.int8)
    core_deg = np.zeros(n, dtype=np.int64)
    pairs = n * (n - 1) // 2
    dense_ok = m > 0 and m < pairs
    m_core = 0
    k = 0
    mask = 0
    best = -np.inf
    best_mask = -1
    evaluated = 0
    skipped = 1  # the all-periphery start
    for step in range(1, 1 << n):
        i = 0
        while not (step >> i) & 1:
            i += 1
        outside = (offsets[i + 1] - offsets[i]) - core_deg[i]
        if labels[i]:
            m_core -= outside
            k -= 1
            labels[i] = 0
            for p in range(offsets[i], offsets[i + 1]):
                core_deg[targets[p]] -= 1
        else:
            m_core += outside
            k += 1
            labels[i] = 1
            for p in range(offsets[i], offsets[i + 1]):
                core_deg[targets[p]] += 1
        mask ^= 1 << i
        if not dense_ok or k == 0 or k >= n - 1:
            skipped += 1
            continue
        evaluated += 1
        t = be_statistic(m_core, k, n, m)
        if t > best or (t == best and mask < best_mask):
            best = t
            best_mask = mask
    return best_mask, evaluated, skipped


def brute_force(g: Graph, max_n: int = MAX_N) -> OracleResult:
    """Global maximiser of the correlation over all non-degenerate labelings.

    Ties go to the labeling with the smallest bitmask (bit ``i`` = node
    ``i`` in the core).  Graphs with ``m = 0`` or complete graphs have no
    non-degenerate labeling; ``best_T`` is then None.
    """
    if g.n > max_n:
        raise OracleCostError(
            f"n={g.n} exceeds max_n={max_n}: exhaustive search scores 2**{g.n} labelings"
        )
    if g.n < 2:
        raise ValueError("need at least two nodes")
    best_mask, evaluated, skipped = _gray_scan(g.offsets, g.targets, g.n, g.m)
    if best_mask < 0:
        return OracleResult(None, None, int(evaluated), int(skipped))
    labels = mask_to_labels(int(best_mask), g.n)
    t, _ = evaluate_full(g, labels)
    return OracleResult(labels, t, int(evaluated), int(skipped))


def gray_code_states(g: Graph) -> Iterator[tuple]:
    """Yield ``(mask, state)`` for all ``2**n`` labelings in Gray-code order.

    The same state object is mutated between yields.
    """
    state = full_state(g, np.zeros(g.n, dtype=np.int8))
    mask = 0
    yield mask, state
    for step in range(1, 1 << g.n):
        i = (step & -step).bit_length() - 1
        state.commit_flip(i)
        mask ^= 1 << i
        yield mask, state


# --------------------------------------------------------------------------
# ratio experiment


@dataclass
class RatioRow:
    p: float
    mean_ratio: float
    n_used: int
    n_excluded: int


def _seed(*key) -> int:
    return int(np.random.SeedSequence([int(x) for x in key]).generate_state(1, np.uint64)[0])


def ratio_replicate(
    p: float, n: int, seed: int, p_index: int, rep: int, restarts: int = 1
) -> Optional[float]:
    """One ER graph: greedy value over exhaustive value, or None if excluded."""
    g, _ = generate(GeneratorSpec(model="er", n=n, p=p, seed=_seed(seed, p_index, rep, 0)))
    try:
        check_density(g)
    except ValueError:
        return None
    res = detect(g, OptimizerConfig(seed=_seed(seed, p_index, rep, 1), restarts=restarts))
    best = brute_force(g)
    if best.best_T is None or best.best_T <= 0:
        return None
    return res.T / best.best_T


def ratio_experiment(
    p_grid: Sequence[float] = DEFAULT_P_GRID,
    replicates: int = 100,
    n: int = 20,
    seed: int = 0,
    threads: int = 1,
    restarts: int = 1,
) -> list:
    """Mean ratio of greedy to global optimum on ER graphs, per edge probability.

    Replicates are excluded (and counted) when the graph is empty or
    complete or the global optimum is not positive.
    """
    if n > MAX_N:
        raise OracleCostError(f"n={n} exceeds {MAX_N}")
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    rows = []
    for pi, p in enumerate(p_grid):
        jobs = [(float(p), n, seed, pi, r, restarts) for r in range(replicates)]
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                ratios = list(pool.map(lambda a: ratio_replicate(*a), jobs))
        else:
            ratios = [ratio_replicate(*a) for a in jobs]
        used = [x for x in ratios if x is not None]
        mean = float(np.mean(used)) if used else math.nan
        rows.append(RatioRow(float(p), mean, len(used), replicates - len(used)))
    return rows


def ratio_table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "mean_ratio", "n_excluded"])
    for r in rows:
        w.writerow([repr(r.p), repr(r.mean_ratio), r.n_excluded])
    return buf.getvalue()


def read_ratio_csv(text: str) -> list:
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append((float(rec["p"]), float(rec["mean_ratio"]), int(rec["n_excluded"])))
    return out


# --------------------------------------------------------------------------
# sub-modularity counterexample

CYCLE4_EDGES = ((0, 1), (1, 2), (2, 3), (3, 0))


def cycle4() -> Graph:
    return Graph.from_edges(4, CYCLE4_EDGES)


@dataclass
class SubmodularityReport:
    t_s: float
    t_t: float
    t_union: Optional[float]
    t_cap: float
    lhs: float
    rhs: float

    @property
    def violated(self) -> bool:
        return self.lhs < self.rhs


def submodularity_counterexample() -> SubmodularityReport:
    """Score S={2,3}, T={3,4} (1-based) on the 4-cycle and their union/intersection.

    The union has three core nodes out of four, which is degenerate; it
    contributes 0 to the right-hand side here and nowhere else.
    """
    g = cycle4()
    sets = {"s": (1, 2), "t": (2, 3), "union": (1, 2, 3), "cap": (2,)}
    vals = {}
    for name, core in sets.items():
        c = np.zeros(4, dtype=np.int8)
        c[list(core)] = 1
        vals[name], _ = evaluate_full(g, c)
    union_as_zero = 0.0 if vals["union"] is None else vals["union"]
    return SubmodularityReport(
        t_s=vals["s"],
        t_t=vals["t"],
        t_union=vals["union"],
        t_cap=vals["cap"],
        lhs=vals["s"] + vals["t"],
        rhs=union_as_zero + vals["cap"],
    )

