"""Undirected simple graphs in CSR form, random generators and edge-list I/O.

Random graphs are drawn with numpy's Philox generator (a 64-bit
counter-based bit generator), seeded explicitly.  Pairs are visited in
row-major order over ``i < j`` with one uniform draw per pair, so a seed
fully determines the output.
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ConfigError, ParseError

MODELS = ("er", "sbm", "dcbm")


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    Attributes
    ----------
    n, m : int
        Node and undirected edge counts.
    offsets, targets : np.ndarray
        CSR adjacency; the neighbours of ``i`` are
        ``targets[offsets[i]:offsets[i + 1]]``, strictly increasing.
    degrees : np.ndarray
        Per-node degree.
    node_ids : tuple of str, optional
        Original identifiers when the graph was read from a file.
    """

    n: int
    m: int
    offsets: np.ndarray
    targets: np.ndarray
    degrees: np.ndarray
    node_ids: Optional[tuple] = None
    edge_src: np.ndarray = field(repr=False, default=None)
    edge_dst: np.ndarray = field(repr=False, default=None)

    @classmethod
    def from_edges(cls, n: int, edges, node_ids: Optional[Sequence[str]] = None) -> "Graph":
        """Build a graph from an ``(E, 2)`` array of node pairs.

        Self-loops are dropped and duplicate / reversed pairs collapse to a
        single undirected edge.
        """
        n = int(n)
        if n < 1:
            raise ValueError("graph needs at least one node")
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        e = e[e[:, 0] != e[:, 1]]
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        key = np.unique(lo * n + hi)
        src, dst = key // n, key % n

        rows = np.concatenate([src, dst])
        cols = np.concatenate([dst, src])
        order = np.lexsort((cols, rows))
        degrees = np.bincount(rows, minlength=n).astype(np.int64)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=offsets[1:])
        if node_ids is not None:
            node_ids = tuple(str(x) for x in node_ids)
            if len(node_ids) != n:
                raise ValueError("node_ids length must equal n")
        return cls(
            n=n,
            m=int(key.size),
            offsets=_frozen(offsets),
            targets=_frozen(cols[order]),
            degrees=_frozen(degrees),
            node_ids=node_ids,
            edge_src=_frozen(src),
            edge_dst=_frozen(dst),
        )

    def neighbors(self, i: int) -> np.ndarray:
        return self.targets[self.offsets[i]:self.offsets[i + 1]]

    def edges(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` array with ``i < j``, lexicographically sorted."""
        return np.column_stack([self.edge_src, self.edge_dst])

    @property
    def pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def density(self) -> float:
        return self.m / self.pairs if self.pairs else 0.0

    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix; meant for small graphs and tests."""
        a = np.zeros((self.n, self.n), dtype=np.int8)
        a[self.edge_src, self.edge_dst] = 1
        a[self.edge_dst, self.edge_src] = 1
        return a

    def node_label(self, i: int) -> str:
        return self.node_ids[i] if self.node_ids is not None else str(i)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.edge_src, other.edge_src)
            and np.array_equal(self.edge_dst, other.edge_dst)
        )

    __hash__ = None


def check_graph(g: Graph) -> None:
    """Raise AssertionError unless the CSR arrays describe a simple graph."""
    assert g.offsets.shape == (g.n + 1,) and g.offsets[0] == 0
    assert int(g.degrees.sum()) == 2 * g.m == g.targets.size
    assert np.array_equal(np.diff(g.offsets), g.degrees)
    for i in range(g.n):
        nb = g.neighbors(i)
        assert np.all(np.diff(nb) > 0), f"neighbours of {i} not strictly increasing"
        assert not np.any(nb == i), f"self-loop at {i}"
    a = g.adjacency()
    assert np.array_equal(a, a.T)
    assert int(a.sum()) == 2 * g.m


# --------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of a random graph model.

    ``p11`` defaults to ``2 * p12`` for the block models.  The planted core
    is nodes ``0 .. k-1`` with ``k = round(core_fraction * n)`` (half-up).
    """

    model: str = "sbm"
    n: int = 1000
    p: float = 0.0
    p11: Optional[float] = None
    p12: float = 0.02
    p22: float = 0.001
    core_fraction: float = 0.1
    theta_low: float = 0.6
    theta_high: float = 0.8
    seed: int = 0

    @property
    def block_probs(self):
        p11 = 2.0 * self.p12 if self.p11 is None else self.p11
        return p11, self.p12, self.p22

    @property
    def core_size(self) -> int:
        if self.model == "er":
            return 0
        return int(math.floor(self.core_fraction * self.n + 0.5))

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}; expected one of {MODELS}", ["model"])
        if self.n < 1:
            raise ConfigError("n must be at least 1", ["n"])
        if self.model == "er":
            if not 0.0 <= self.p <= 1.0:
                raise ConfigError(f"p={self.p} outside [0, 1]", ["p"])
            return
        p11, p12, p22 = self.block_probs
        for name, v in (("p11", p11), ("p12", p12), ("p22", p22)):
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name}={v} outside [0, 1]", [name])
        if not p11 >= p12:
            raise ConfigError(f"need p11 >= p12, got p11={p11}, p12={p12}", ["p11", "p12"])
        if not p12 >= p22:
            raise ConfigError(f"need p12 >= p22, got p12={p12}, p22={p22}", ["p12", "p22"])
        if not 0.0 < self.core_fraction < 1.0:
            raise ConfigError("core_fraction must lie in (0, 1)", ["core_fraction"])
        if self.model == "dcbm":
            if not 0.0 <= self.theta_low <= self.theta_high:
                raise ConfigError(
                    "need 0 <= theta_low <= theta_high", ["theta_low", "theta_high"]
                )
            if self.theta_high ** 2 * p11 > 1.0:
                raise ConfigError(
                    f"theta_high**2 * p11 = {self.theta_high ** 2 * p11:.4g} exceeds 1",
                    ["theta_high", "p11"],
                )


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def generate(spec: GeneratorSpec):
    """Draw a graph from ``spec``.

    Returns
    -------
    (Graph, np.ndarray)
        The graph and the planted labels (int8, 1 = core).  ER graphs have
        no planted structure and get all-periphery labels.
    """
    spec.validate()
    n = spec.n
    rng = make_rng(spec.seed)
    k = spec.core_size
    truth = np.zeros(n, dtype=np.int8)
    truth[:k] = 1

    if spec.model == "er":
        row_prob = lambda i: spec.p  # noqa: E731
    else:
        p11, p12, p22 = spec.block_probs
        core_row = np.where(truth == 1, p11, p12)
        periph_row = np.where(truth == 1, p12, p22)
        theta = None
        if spec.model == "dcbm":
            theta = rng.uniform(spec.theta_low, spec.theta_high, size=n)

        def row_prob(i):
            base = core_row[i + 1:] if truth[i] else periph_row[i + 1:]
            if theta is not None:
                return theta[i] * theta[i + 1:] * base
            return base

    src, dst = [], []
    for i in range(n - 1):
        u = rng.random(n - 1 - i)
        hit = np.flatnonzero(u < row_prob(i)) + (i + 1)
        if hit.size:
            src.append(np.full(hit.size, i, dtype=np.int64))
            dst.append(hit)
    if src:
        edges = np.column_stack([np.concatenate(src), np.concatenate(dst)])
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n, edges), truth


# --------------------------------------------------------------------------
# edge-list files


def _text_lines(source) -> Iterable[str]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
        return io.StringIO(data.decode("utf-8", errors="replace"))
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(bytes(source).decode("utf-8", errors="replace"))
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8", errors="replace")
        return io.StringIO(data)
    return source


def load_edge_list(source) -> Graph:
    """Read a whitespace-separated edge list and clean it.

    ``source`` may be a path, raw bytes, a binary or text file object, or
    an iterable of lines.  Blank lines and lines starting with ``#`` or
    ``%`` are skipped.  The first two tokens of a line are node
    identifiers; anything after them (weights, timestamps) is ignored.
    Identifiers are indexed in order of first appearance and kept on
    ``Graph.node_ids``.  Self-loops and repeated edges in either direction
    are dropped.
    """
    index = {}
    edges = []
    for lineno, raw in enumerate(_text_lines(source), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tok = line.split()
        if len(tok) < 2:
            raise ParseError(f"expected two node identifiers, got {line!r}", lineno)
        a = index.setdefault(tok[0], len(index))
        b = index.setdefault(tok[1], len(index))
        edges.append((a, b))
    if not index:
        raise ParseError("edge list contains no edges")
    return Graph.from_edges(len(index), edges, node_ids=list(index))


def to_canonical(g: Graph) -> str:
    """Canonical text form: ``"n m"`` then one ``"i j"`` line per edge, ``i < j``."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{i} {j}" for i, j in zip(g.edge_src.tolist(), g.edge_dst.tolist()))
    return "\n".join(out) + "\n"


def read_canonical(source) -> Graph:
    """Inverse of :func:`to_canonical`; isolated nodes survive the round trip."""
    lines = [ln.strip() for ln in _text_lines(source)]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty canonical graph file")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError("header must be 'n m'", 1) from None
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'i j', got {ln!r}", lineno)
        edges.append((int(parts[0]), int(parts[1])))
    g = Graph.from_edges(n, edges)
    if g.m != m:
        raise ParseError(f"header declares {m} edges, found {g.m}")
    return g
