import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c4tile.constructions import build_H0, steiner
from c4tile.hypergraph import (
    Hypergraph3,
    LinkGraph,
    count_C_copies,
    count_cherries,
    deg_set,
    dumps_h3,
    is_C_free,
    link_graph,
    loads_h3,
    min_degree1,
    read_h3,
    spans_C,
    write_h3,
)

from conftest import oracle_C_free, oracle_spans, random_hypergraph


@st.composite
def hypergraphs(draw, max_n=10):
    n = draw(st.integers(4, max_n))
    triples = list(itertools.combinations(range(n), 3))
    mask = draw(st.lists(st.booleans(), min_size=len(triples), max_size=len(triples)))
    return Hypergraph3(n, [t for t, keep in zip(triples, mask) if keep])


def test_edges_are_canonical():
    H = Hypergraph3(5, [(2, 1, 0), (4, 3, 0), (0, 1, 2)])
    assert H.edges == {(0, 1, 2), (0, 3, 4)}
    assert H == Hypergraph3(5, [(0, 1, 2), (0, 3, 4)])


@pytest.mark.parametrize("bad", [[(0, 0, 1)], [(0, 1, 5)], [(0, 1)], [(-1, 0, 1)]])
def test_invalid_edges_rejected(bad):
    with pytest.raises(ValueError):
        Hypergraph3(5, bad)


def test_pair_index_rebuilds_identically():
    H = random_hypergraph(9, 0.4, random.Random(3))
    H.check_pair_index()
    for (a, b), ws in H.pair_index.items():
        assert all(H.has_edge(a, b, w) for w in ws)


def test_deg_set_examples():
    K4 = Hypergraph3.complete(4)
    assert deg_set(K4, {0}) == 3
    assert deg_set(Hypergraph3.empty(4), {0, 1}) == 0
    h0 = build_H0(8)
    for v in h0.part_B:
        assert deg_set(h0.hypergraph, {v}) == 9


@pytest.mark.parametrize("S", [set(), {0, 1, 2}, {7}])
def test_deg_set_errors(S):
    with pytest.raises(ValueError):
        deg_set(Hypergraph3.complete(4), S)


def test_min_degree_examples():
    from c4tile.constructions import two_cliques

    assert min_degree1(Hypergraph3.complete(5)) == 6
    assert min_degree1(build_H0(8).hypergraph) == 9
    assert min_degree1(two_cliques(12).hypergraph) == 10
    with pytest.raises(ValueError):
        min_degree1(Hypergraph3.empty(0))


def test_link_graph_examples():
    L = link_graph(Hypergraph3.complete(4), 0)
    assert L.pairs == {(1, 2), (1, 3), (2, 3)}
    assert len(link_graph(Hypergraph3.empty(6), 2)) == 0
    h0 = build_H0(8)
    assert len(link_graph(h0.hypergraph, h0.part_B[0])) == 9
    with pytest.raises(ValueError):
        link_graph(Hypergraph3.empty(3), 3)


def test_spans_C_examples():
    assert spans_C(Hypergraph3(4, [(0, 1, 2), (0, 1, 3)]), (0, 1, 2, 3))
    assert not spans_C(Hypergraph3(4, [(0, 1, 2)]), (0, 1, 2, 3))
    K4 = Hypergraph3.complete(4)
    assert spans_C(K4, (3, 1, 0, 2))
    assert count_C_copies(K4, (0, 1, 2, 3)) == len(list(itertools.combinations(range(4), 2)))
    with pytest.raises(ValueError):
        spans_C(K4, (0, 1, 2))


def test_count_cherries_examples():
    tri = LinkGraph(3, frozenset({(0, 1), (0, 2), (1, 2)}), 4)
    assert count_cherries(tri, {0, 1, 2}, {0, 1, 2}) == 3
    assert count_cherries(LinkGraph(0, frozenset(), 5), range(1, 5), range(1, 5)) == 0
    K = link_graph(Hypergraph3.complete(8), 0)
    others = range(1, 8)
    by_enum = sum(1 for m in others for a, b in itertools.combinations([x for x in others if x != m], 2)
                  if (min(a, m), max(a, m)) in K.pairs and (min(b, m), max(b, m)) in K.pairs)
    assert count_cherries(K, others, others) == by_enum == 105


def test_is_C_free_examples():
    for m in (7, 9, 13):
        assert is_C_free(steiner(m).as_hypergraph())
    assert not is_C_free(Hypergraph3.complete(4))
    h0 = build_H0(8)
    assert is_C_free(h0.hypergraph, h0.part_B)
    assert not is_C_free(h0.hypergraph)


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_spans_matches_two_triple_pattern(H):
    for q in itertools.combinations(range(H.n), 4):
        assert spans_C(H, q) == oracle_spans(H.edges, q)


@settings(max_examples=60, deadline=None)
@given(hypergraphs())
def test_degree_sum_and_link_size(H):
    assert sum(deg_set(H, {v}) for v in H.vertices) == 3 * len(H.edges)
    for v in H.vertices:
        assert len(link_graph(H, v)) == deg_set(H, {v})


@settings(max_examples=40, deadline=None)
@given(hypergraphs(max_n=9), st.data())
def test_C_free_matches_codegree_rule(H, data):
    S = data.draw(st.sets(st.integers(0, H.n - 1)))
    codeg_rule = all(sum(1 for w in S if w not in (u, v) and H.has_edge(u, v, w)) <= 1
                     for u, v in itertools.combinations(S, 2))
    assert is_C_free(H, S) == codeg_rule == oracle_C_free(H.edges, S)


def test_h3_round_trip(tmp_path):
    H = random_hypergraph(10, 0.3, random.Random(1))
    text = dumps_h3(H)
    assert loads_h3(text) == H
    assert dumps_h3(loads_h3(text)) == text
    path = tmp_path / "g.h3"
    write_h3(H, path)
    assert read_h3(path) == H
    assert path.read_text() == text


def test_h3_parser_comments_and_canonicalisation():
    H = loads_h3("# header\nn 5\n2 1 0  # edge\n\n4 3 0\n")
    assert dumps_h3(H) == "n 5\n0 1 2\n0 3 4\n"


@pytest.mark.parametrize("text", ["", "0 1 2\n", "n 4\n0 1\n", "n 4\n0 1 2\n2 1 0\n", "n 3\n0 1 3\n"])
def test_h3_parser_rejects(text):
    with pytest.raises(ValueError):
        loads_h3(text)
