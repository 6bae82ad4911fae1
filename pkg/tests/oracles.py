"""Slow, independent reference computations used only by the tests."""

import itertools

import numpy as np


def ideal_pattern(c):
    c = np.asarray(c, dtype=np.int64)
    return c[:, None] + c[None, :] - c[:, None] * c[None, :]


def upper(x):
    iu = np.triu_indices(x.shape[0], k=1)
    return x[iu].astype(float)


def pearson_t(adj, c):
    """Pearson correlation of the two upper triangles, or None if undefined."""
    a = upper(np.asarray(adj))
    d = upper(ideal_pattern(c))
    if a.std() == 0 or d.std() == 0:
        return None
    return float(np.corrcoef(a, d)[0, 1])


def naive_m(adj, c):
    return int((upper(np.asarray(adj)) * upper(ideal_pattern(c))).sum())


def naive_core_deg(adj, c):
    return np.asarray(adj, dtype=np.int64) @ np.asarray(c, dtype=np.int64)


def delta_bar_by_pairs(k, n):
    c = [1] * k + [0] * (n - k)
    pairs = list(itertools.combinations(range(n), 2))
    return sum(c[i] + c[j] - c[i] * c[j] for i, j in pairs) / len(pairs)


def all_labelings(n):
    for bits in itertools.product((0, 1), repeat=n):
        yield np.array(bits[::-1], dtype=np.int8)  # bit i of the counter -> node i


def dense_label_switching(adj, init, order_rng):
    """Label switching that rescores every proposal from the dense matrix."""
    c = np.array(init, dtype=np.int8)
    n = c.size
    t = pearson_t(adj, c)
    while True:
        changed = False
        for i in order_rng.permutation(n).tolist():
            c2 = c.copy()
            c2[i] ^= 1
            t2 = pearson_t(adj, c2)
            if t2 is not None and t2 > t + 1e-12:
                c, t, changed = c2, t2, True
        if not changed:
            return c, t
