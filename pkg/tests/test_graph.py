import pytest
from hypothesis import given, settings, strategies as st

from cbgfvs.errors import DomainError
from cbgfvs.graph import (
    BipartiteGraph,
    check_peeling_order,
    complete_bipartite,
    components,
    cycle_graph,
    is_complete_bipartite,
    is_forest,
    leaf_peeling_order,
    neighbors,
    parse_vertex_name,
    path_graph,
)
from cbgfvs.testkit.oracles import oracle_is_forest


def names(vs):
    return sorted(vs.names())


def test_neighbors(p4):
    assert names(neighbors(p4, parse_vertex_name("b1"))) == ["a1", "a2"]
    assert names(neighbors(complete_bipartite(2, 3), parse_vertex_name("a1"))) == ["b1", "b2", "b3"]
    lonely = BipartiteGraph(1, 1)
    assert len(neighbors(lonely, parse_vertex_name("a1"))) == 0


def test_components(p4, c4):
    comps = components(c4, c4.vertices() - c4.vertex_set(["a1"]))
    assert len(comps) == 1
    comps = components(p4, p4.vertices() - p4.vertex_set(["b1"]))
    assert sorted(names(c) for c in comps) == [["a1"], ["a2", "b2"]]
    edgeless = BipartiteGraph(2, 3)
    assert len(components(edgeless, edgeless.vertices())) == 5
    with pytest.raises(DomainError):
        components(p4, p4.vertex_set())


def test_is_forest(c4):
    assert is_forest(path_graph(7), path_graph(7).vertices())
    assert not is_forest(c4, c4.vertices())
    for v in c4.vertices():
        assert is_forest(c4, c4.vertices() - c4.vertex_set([v]))


def test_is_complete_bipartite(p4):
    k22 = complete_bipartite(2, 2)
    assert is_complete_bipartite(k22, k22.vertex_set(["b1", "b2"]))
    assert is_complete_bipartite(k22, k22.vertices())
    assert not is_complete_bipartite(p4, p4.vertices())


def test_vertex_sets_from_other_graph_are_rejected(p4, c6):
    with pytest.raises(DomainError):
        is_forest(p4, c6.vertices())


def test_constructor_rejects_bad_edges():
    with pytest.raises(DomainError):
        BipartiteGraph(1, 1, [(0, 0), (0, 0)])
    with pytest.raises(DomainError):
        BipartiteGraph(1, 1, [(1, 0)])
    with pytest.raises(DomainError):
        BipartiteGraph(-1, 0)


def test_vertex_names_roundtrip():
    g = complete_bipartite(3, 2)
    assert g.vertex_set(["a3", "b2"]).names() == ["a3", "b2"]
    assert g.vertex(g.gid(parse_vertex_name("b2"))).name == "b2"
    for bad in ("c1", "a0", "a", "ax"):
        with pytest.raises(DomainError):
            parse_vertex_name(bad)
    with pytest.raises(DomainError):
        g.vertex_set(["a4"])


def test_set_sides():
    g = complete_bipartite(2, 2)
    s = g.vertex_set(["a1", "b2"])
    assert s.side_a.names() == ["a1"]
    assert s.side_b.names() == ["b2"]


def test_path_and_cycle_shapes():
    assert path_graph(4).edges == ((0, 0), (1, 0), (1, 1))
    c6 = cycle_graph(6)
    assert (c6.n, c6.m) == (6, 6)
    assert all(c6.degree(v) == 2 for v in c6.vertices())
    with pytest.raises(DomainError):
        cycle_graph(5)


def test_peeling_certificate(c4):
    tree = path_graph(6)
    order = leaf_peeling_order(tree, tree.vertices())
    assert order is not None and check_peeling_order(tree, order)
    assert leaf_peeling_order(c4, c4.vertices()) is None
    assert not check_peeling_order(c4, list(c4.vertices()))


small_graphs = st.integers(0, 5).flatmap(
    lambda a: st.integers(0, 5).flatmap(
        lambda b: st.sets(st.tuples(st.integers(0, max(a - 1, 0)), st.integers(0, max(b - 1, 0))), max_size=a * b).map(
            lambda es: BipartiteGraph(a, b, es if a and b else [])
        )
    )
)


@settings(max_examples=300, deadline=None)
@given(small_graphs, st.integers(0, 2**10 - 1))
def test_is_forest_matches_oracle(g, bits):
    w = g.from_mask(bits & ((1 << g.n) - 1))
    assert is_forest(g, w) == oracle_is_forest(g, set(w.names()))


@settings(max_examples=200, deadline=None)
@given(small_graphs)
def test_swapped_is_involution(g):
    assert g.swapped().swapped() == g
    assert g.swapped().m == g.m
