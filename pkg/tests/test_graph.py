import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cplabel.errors import ConfigError, ParseError
from cplabel.graph import (Graph, GeneratorSpec, check_graph, generate, load_edge_list,
                           read_canonical, to_canonical)


@st.composite
def edge_lists(draw, max_n=30):
    n = draw(st.integers(1, max_n))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    return n, draw(st.lists(pairs, max_size=3 * n))


@given(edge_lists())
def test_from_edges_is_simple_symmetric(data):
    n, edges = data
    g = Graph.from_edges(n, edges)
    check_graph(g)
    expected = {(min(a, b), max(a, b)) for a, b in edges if a != b}
    assert g.m == len(expected)
    assert {tuple(e) for e in g.edges().tolist()} == expected


def test_arrays_are_read_only():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        g.targets[0] = 2


def test_er_extremes():
    g, truth = generate(GeneratorSpec(model="er", n=4, p=1.0, seed=3))
    assert g.m == 6
    assert truth.sum() == 0
    g, _ = generate(GeneratorSpec(model="er", n=100, p=0.0, seed=3))
    assert g.m == 0


@pytest.mark.parametrize("model", ["er", "sbm", "dcbm"])
def test_generate_is_deterministic(model):
    spec = GeneratorSpec(model=model, n=300, p=0.05, p12=0.05, p22=0.01, seed=11)
    g1, t1 = generate(spec)
    g2, t2 = generate(spec)
    check_graph(g1)
    assert to_canonical(g1) == to_canonical(g2)
    assert np.array_equal(t1, t2)
    g3, _ = generate(GeneratorSpec(model=model, n=300, p=0.05, p12=0.05, p22=0.01, seed=12))
    assert to_canonical(g3) != to_canonical(g1)


def test_planted_core_placement():
    _, truth = generate(GeneratorSpec(model="sbm", n=1000, seed=0))
    assert truth[:100].all() and not truth[100:].any()
    # round half up: 0.1 * 25 = 2.5 -> 3
    _, truth = generate(GeneratorSpec(model="sbm", n=25, p12=0.1, p22=0.05, seed=0))
    assert truth.sum() == 3


def _block_counts(g, k):
    a, b = g.edge_src, g.edge_dst
    cc = int(np.sum((a < k) & (b < k)))
    cp = int(np.sum((a < k) ^ (b < k)))
    pp = g.m - cc - cp
    n = g.n
    return (cc, k * (k - 1) // 2), (cp, k * (n - k)), (pp, (n - k) * (n - k - 1) // 2)


def test_sbm_block_densities_converge():
    # binomial mean / variance of edge indicators: each block mean within 4 SE
    probs = (0.04, 0.02, 0.001)
    reps = 50
    hits = np.zeros(3)
    trials = np.zeros(3)
    for r in range(reps):
        g, truth = generate(GeneratorSpec(model="sbm", n=1000, p12=0.02, p22=0.001, seed=r))
        for j, (h, t) in enumerate(_block_counts(g, int(truth.sum()))):
            hits[j] += h
            trials[j] += t
    for j, p in enumerate(probs):
        est = hits[j] / trials[j]
        se = np.sqrt(p * (1 - p) / trials[j])
        assert abs(est - p) < 4 * se, (j, est, p)


def test_sbm_within_core_density_replicates():
    # per-replicate within-core density, mean over 100 replicates within 3 SE of p11
    dens = []
    for r in range(100):
        g, truth = generate(GeneratorSpec(model="sbm", n=1000, p12=0.02, p22=0.001, seed=1000 + r))
        (h, t), _, _ = _block_counts(g, int(truth.sum()))
        dens.append(h / t)
    se = np.sqrt(0.04 * 0.96 / 4950 / 100)
    assert abs(np.mean(dens) - 0.04) < 3 * se


def test_dcbm_pair_frequencies_match_theta_products():
    # theta_i, theta_j iid U(0.6, 0.8): marginal edge probability E[theta]^2 * p = 0.49 p
    spec = dict(model="dcbm", n=10, p11=0.9, p12=0.6, p22=0.3, core_fraction=0.3)
    pairs = {(0, 1): 0.9, (0, 5): 0.6, (5, 6): 0.3}
    reps = 4000
    got = {p: 0 for p in pairs}
    for r in range(reps):
        a = generate(GeneratorSpec(seed=r, **spec))[0].adjacency()
        for i, j in pairs:
            got[(i, j)] += int(a[i, j])
    for key, p in pairs.items():
        mean = 0.49 * p
        se = np.sqrt(mean * (1 - mean) / reps)
        assert abs(got[key] / reps - mean) < 4 * se, key


@pytest.mark.parametrize(
    "kw, bad",
    [
        (dict(model="er", p=1.5), {"p"}),
        (dict(model="sbm", p11=0.01, p12=0.02), {"p11", "p12"}),
        (dict(model="sbm", p12=0.001, p22=0.01), {"p12", "p22"}),
        (dict(model="dcbm", p11=1.0, p12=0.5, theta_high=1.2), {"theta_high", "p11"}),
        (dict(model="sbm", core_fraction=0.0), {"core_fraction"}),
        (dict(model="sbm", p22=-0.2), {"p22"}),
    ],
)
def test_invalid_specs_name_parameters(kw, bad):
    with pytest.raises(ConfigError) as err:
        generate(GeneratorSpec(n=10, **kw))
    assert set(err.value.params) == bad


def test_loader_cleaning_rules():
    g = load_edge_list(["a b", "b a", "a a", "b c 5.0"])
    assert (g.n, g.m) == (3, 2)
    assert g.node_ids == ("a", "b", "c")
    assert g.edges().tolist() == [[0, 1], [1, 2]]


def test_loader_comments_and_whitespace():
    g = load_edge_list(io.BytesIO(b"# comment\n% other\n\n0\t1   17 12345\n"))
    assert (g.n, g.m) == (2, 1)


def test_loader_errors():
    with pytest.raises(ParseError, match="line 2"):
        load_edge_list(["a b", "c", "d e"])
    with pytest.raises(ParseError):
        load_edge_list(io.BytesIO(b"# only comments\n"))
    with pytest.raises(ParseError):
        load_edge_list([])


def test_loader_four_cycle_matches_counterexample_matrix():
    g = load_edge_list(io.BytesIO(b"1 2\n2 3\n3 4\n4 1"))
    a = np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    assert np.array_equal(g.adjacency(), a)


def test_loader_reads_path(tmp_path):
    f = tmp_path / "e.txt"
    f.write_text("x y\ny z\n")
    g = load_edge_list(f)
    assert g.node_ids == ("x", "y", "z") and g.m == 2


def test_canonical_format_and_round_trip():
    g = Graph.from_edges(5, [(3, 1), (0, 4), (1, 0)])
    text = to_canonical(g)
    assert text == "5 3\n0 1\n0 4\n1 3\n"
    assert read_canonical(io.StringIO(text)) == g


@settings(max_examples=50)
@given(edge_lists())
def test_canonical_round_trip_property(data):
    n, edges = data
    g = Graph.from_edges(n, edges)
    assert read_canonical(to_canonical(g).encode()) == g
