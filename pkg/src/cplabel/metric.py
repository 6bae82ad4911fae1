"""Core-periphery correlation score and its incremental form.

For labels ``c`` (1 = core) the ideal pattern has a 1 on every pair with at
least one core endpoint.  The correlation between the upper triangles of the
adjacency matrix and that pattern only depends on four integers:

* ``n`` and ``m`` (fixed by the graph),
* ``k``, the core size,
* ``M``, the number of edges with at least one core endpoint.

:class:`MetricState` keeps ``M``, ``k`` and, per node, the number of core
neighbours.  With those, the value after flipping one node is O(1) and
committing the flip is O(degree).  Integers stay exact; only the final
correlation is a float.

A labeling is *degenerate* when the correlation has a zero denominator:
``k in {0, n-1, n}`` or ``m in {0, n(n-1)/2}``.  Degenerate values are
reported as ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .graph import Graph


def delta_bar(k: int, n: int) -> float:
    """Mean of the ideal pattern's upper triangle for a core of size ``k``."""
    if n < 2 or not 0 <= k <= n:
        raise ValueError(f"need n >= 2 and 0 <= k <= n, got k={k}, n={n}")
    return (k * (k - 1) // 2 + k * (n - k)) / (n * (n - 1) // 2)


def is_degenerate(k: int, n: int, m: int) -> bool:
    return k == 0 or k >= n - 1 or m == 0 or m == n * (n - 1) // 2


@njit(cache=True, nogil=True)
def be_statistic(M, k, n, m):
    """Correlation from the sufficient statistics; assumes non-degenerate input.

    With ``N = n(n-1)/2`` pairs and ``D = k(k-1)/2 + k(n-k)`` ideal pairs the
    correlation is ``(N*M - m*D) / sqrt(m(N-m) * D(N-D))``.  Numerator and
    radicand factors are exact integers, so a perfect pattern gives exactly 1.
    """
    pairs = n * (n - 1) // 2
    ideal = k * (k - 1) // 2 + k * (n - k)
    num = pairs * M - m * ideal
    var = float(m * (pairs - m)) * float(ideal * (pairs - ideal))
    return num / math.sqrt(var)


def t_value(M: int, k: int, n: int, m: int) -> Optional[float]:
    if is_degenerate(k, n, m):
        return None
    return be_statistic(M, k, n, m)


def _as_labels(c, n: int) -> np.ndarray:
    c = np.asarray(c)
    if c.shape != (n,):
        raise ValueError(f"labels must have shape ({n},), got {c.shape}")
    if c.size and not np.all((c == 0) | (c == 1)):
        raise ValueError("labels must be 0/1")
    return c.astype(np.int8)


@dataclass(eq=False)
class MetricState:
    """Sufficient statistics for one graph under one labeling.

    The state owns ``labels``; mutate it only through :meth:`commit_flip`.
    """

    graph: Graph
    labels: np.ndarray
    m_core: int
    k: int
    core_deg: np.ndarray

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def a_bar(self) -> float:
        return self.graph.density

    @property
    def value(self) -> Optional[float]:
        return t_value(self.m_core, self.k, self.graph.n, self.graph.m)

    def flip_delta(self, i: int) -> int:
        """Change in ``M`` if node ``i`` switched sides."""
        outside = int(self.graph.degrees[i]) - int(self.core_deg[i])
        return -outside if self.labels[i] else outside

    def propose_flip(self, i: int):
        """Value after flipping ``i``, without changing the state.

        Returns ``(value, delta_m)``; ``value`` is None when the flipped
        labeling is degenerate.
        """
        if not 0 <= i < self.graph.n:
            raise IndexError(f"node {i} out of range for n={self.graph.n}")
        dm = self.flip_delta(i)
        k = self.k - 1 if self.labels[i] else self.k + 1
        return t_value(self.m_core + dm, k, self.graph.n, self.graph.m), dm

    def commit_flip(self, i: int) -> int:
        """Flip node ``i`` in place; returns the work done (its degree)."""
        if not 0 <= i < self.graph.n:
            raise IndexError(f"node {i} out of range for n={self.graph.n}")
        g = self.graph
        nb = g.targets[g.offsets[i]:g.offsets[i + 1]]
        self.m_core += self.flip_delta(i)
        if self.labels[i]:
            self.labels[i] = 0
            self.k -= 1
            self.core_deg[nb] -= 1
        else:
            self.labels[i] = 1
            self.k += 1
            self.core_deg[nb] += 1
        return nb.size

    def copy(self) -> "MetricState":
        return MetricState(self.graph, self.labels.copy(), self.m_core, self.k, self.core_deg.copy())

    def same_counts(self, other: "MetricState") -> bool:
        """Exact equality of every integer field."""
        return (
            self.m_core == other.m_core
            and self.k == other.k
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.core_deg, other.core_deg)
        )


def full_state(g: Graph, c) -> MetricState:
    """Build a :class:`MetricState` from scratch in O(n + m)."""
    if g.n < 2:
        raise ValueError("the metric needs at least two nodes")
    labels = _as_labels(c, g.n).copy()
    both_periphery = np.count_nonzero((labels[g.edge_src] == 0) & (labels[g.edge_dst] == 0))
    m_core = g.m - int(both_periphery)
    csum = np.zeros(g.targets.size + 1, dtype=np.int64)
    np.cumsum(labels[g.targets], out=csum[1:])
    core_deg = csum[g.offsets[1:]] - csum[g.offsets[:-1]]
    return MetricState(g, labels, m_core, int(labels.sum()), core_deg)


def evaluate_full(g: Graph, c):
    """Score labels ``c`` on ``g`` from scratch.

    Returns
    -------
    (float or None, MetricState)
        The correlation (None if degenerate) and the fresh state.
    """
    state = full_state(g, c)
    return state.value, state
