"""Tests for hypergraph construction, sampling, components, and I/O."""

import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qksat.hypergraph import (
    ComponentSummary,
    Hypergraph,
    attach,
    components,
    format_hypergraph,
    parse_hypergraph,
    random_hypergraph,
    read_hypergraph,
    write_hypergraph,
)


def test_edge_normalization():
    g = Hypergraph(5, [(3, 1, 0), (4, 2)])
    assert g.edges == ((0, 1, 3), (2, 4))
    assert g.m == 2
    assert g.arities() == {3, 2}
    assert g.uniform_arity() is None


def test_uniform_arity():
    g = Hypergraph(4, [(0, 1, 2), (1, 2, 3)])
    assert g.uniform_arity() == 3
    assert Hypergraph(3, []).uniform_arity() is None


def test_rejects_bad_edges():
    with pytest.raises(ValueError):
        Hypergraph(3, [(0,)])
    with pytest.raises(ValueError):
        Hypergraph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Hypergraph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Hypergraph(3, [(-1, 2)])
    with pytest.raises(ValueError):
        Hypergraph(-1, [])


def test_repeated_edges_allowed():
    g = Hypergraph(3, [(0, 1), (1, 0)])
    assert g.edges == ((0, 1), (0, 1))


def test_random_hypergraph_shape():
    g = random_hypergraph(50, 120, 3, seed=7)
    assert g.n == 50 and g.m == 120
    assert all(len(e) == 3 == len(set(e)) for e in g.edges)
    assert all(0 <= v < 50 for e in g.edges for v in e)


def test_random_hypergraph_deterministic():
    a = random_hypergraph(30, 40, 3, seed=5)
    b = random_hypergraph(30, 40, 3, seed=5)
    c = random_hypergraph(30, 40, 3, seed=6)
    assert a == b
    assert a != c


def test_random_hypergraph_rejects():
    with pytest.raises(ValueError):
        random_hypergraph(2, 1, 3, seed=0)


def test_degree_distribution_binomial():
    # Each vertex degree is Binomial(m, k/n); chi-square over pooled samples.
    from scipy import stats

    n, m, k, reps = 1000, 1000, 3, 20
    degs = Counter()
    for s in range(reps):
        g = random_hypergraph(n, m, k, seed=1000 + s)
        counts = np.bincount([v for e in g.edges for v in e], minlength=n)
        degs.update(counts.tolist())
    total = n * reps
    dist = stats.binom(m, k / n)
    # Pool right tail so every expected bin count is >= 5.
    hi = 0
    while total * dist.sf(hi) >= 5.0:
        hi += 1
    observed = [degs[d] for d in range(hi)]
    observed.append(total - sum(observed))
    expected = [total * dist.pmf(d) for d in range(hi)]
    expected.append(total * dist.sf(hi - 1))
    result = stats.chisquare(observed, f_exp=expected)
    assert result.pvalue > 1e-3


def test_duplicate_edge_rate():
    # Mean count of repeated k-sets matches the birthday-problem expectation.
    n, m, reps = 10_000, 10_000, 40
    big_n = n * (n - 1) // 2
    dup_total = 0
    for s in range(reps):
        g = random_hypergraph(n, m, 2, seed=9000 + s)
        dup_total += sum(c - 1 for c in Counter(g.edges).values() if c > 1)
    p_zero = math.exp(m * math.log1p(-1.0 / big_n))
    p_one = m / big_n * math.exp((m - 1) * math.log1p(-1.0 / big_n))
    expected_pairs = big_n * (1.0 - p_zero - p_one)
    observed = dup_total / reps
    assert abs(observed - expected_pairs) < 0.5


def test_components_triangle_plus_isolated():
    g = Hypergraph(5, [(0, 1), (1, 2), (0, 2), (0, 1)])
    comps = components(g)
    assert comps[0] == ComponentSummary(3, 4, 2)
    assert comps[1] == ComponentSummary(1, 0, 0)
    assert comps[2] == ComponentSummary(1, 0, 0)


def test_components_small_cases():
    path = Hypergraph(3, [(0, 1), (1, 2)])
    assert components(path) == [ComponentSummary(3, 2, 1)]
    two = Hypergraph(4, [(0, 1), (2, 3)])
    assert components(two) == [ComponentSummary(2, 1, 1), ComponentSummary(2, 1, 1)]
    triple = Hypergraph(3, [(0, 1), (0, 1), (0, 1)])
    assert components(triple) == [ComponentSummary(2, 3, 3), ComponentSummary(1, 0, 0)]


def test_components_requires_arity_two():
    with pytest.raises(ValueError):
        components(Hypergraph(4, [(0, 1, 2)]))


def test_components_ordering_and_counts():
    g = Hypergraph(7, [(5, 6), (0, 1), (1, 2)])
    comps = components(g)
    assert [c.vertex_count for c in comps] == [3, 1, 1, 2]
    assert sum(c.vertex_count for c in comps) == g.n
    assert sum(c.edge_count for c in comps) == g.m


def test_attach_relabels_host_edges():
    g = Hypergraph(4, [(0, 1, 2)])
    h = Hypergraph(3, [(0, 1), (1, 2)])
    joined = attach(g, h, {0: 1, 1: 3, 2: 0})
    assert joined.n == 4
    assert joined.edges == ((0, 1, 2), (1, 3), (0, 3))


def test_attach_identity_and_multiplicity():
    empty = Hypergraph(3, [])
    tri = Hypergraph(3, [(0, 1, 2)])
    assert attach(empty, tri, [0, 1, 2]).edges == ((0, 1, 2),)
    doubled = attach(tri, tri, [0, 1, 2])
    assert doubled.edges == ((0, 1, 2), (0, 1, 2))


def test_attach_sequence_embedding():
    g = Hypergraph(3, [(0, 1)])
    h = Hypergraph(2, [(0, 1)])
    joined = attach(g, h, [2, 0])
    assert joined.n == 3
    assert sorted(joined.edges) == [(0, 1), (0, 2)]


def test_attach_validates_embedding():
    g = Hypergraph(3, [(0, 1)])
    h = Hypergraph(2, [(0, 1)])
    with pytest.raises(ValueError):
        attach(g, h, {0: 1, 1: 1})
    with pytest.raises(ValueError):
        attach(g, h, {0: 3, 1: 0})
    with pytest.raises(ValueError):
        attach(g, h, {0: 0})
    with pytest.raises(ValueError):
        attach(g, h, [0, 1, 2])


def test_parse_format_roundtrip_example():
    text = "4 2\n0 1 2\n1 2 3\n"
    g = parse_hypergraph(text)
    assert g == Hypergraph(4, [(0, 1, 2), (1, 2, 3)])
    assert format_hypergraph(g) == text


def test_parse_tolerates_blank_lines():
    text = "3 3\n\n0 1\n1 2\n\n0 2\n"
    g = parse_hypergraph(text)
    assert g.m == 3


def test_parse_rejects_wrong_edge_count():
    with pytest.raises(ValueError):
        parse_hypergraph("3 2\n0 1\n")


def test_file_roundtrip(tmp_path):
    g = random_hypergraph(12, 9, 3, seed=3)
    path = tmp_path / "g.txt"
    write_hypergraph(g, path)
    assert read_hypergraph(path) == g


@st.composite
def hypergraphs(draw):
    n = draw(st.integers(min_value=2, max_value=10))
    m = draw(st.integers(min_value=0, max_value=8))
    edges = []
    for _ in range(m):
        k = draw(st.integers(min_value=2, max_value=min(4, n)))
        perm = draw(st.permutations(range(n)))
        edges.append(tuple(perm[:k]))
    return Hypergraph(n, edges)


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_text_roundtrip_property(g):
    assert parse_hypergraph(format_hypergraph(g)) == g


@settings(max_examples=40, deadline=None)
@given(hypergraphs(), hypergraphs(), st.randoms(use_true_random=False))
def test_attach_edge_additivity(g, h, rnd):
    if h.n > g.n:
        g, h = h, g
    image = rnd.sample(range(g.n), h.n)
    joined = attach(g, h, image)
    assert joined.n == g.n
    assert joined.m == g.m + h.m
    assert Counter(len(e) for e in joined.edges) == Counter(
        len(e) for e in g.edges + h.edges
    )
