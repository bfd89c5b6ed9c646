import dataclasses
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cbgfvs.errors import DomainError
from cbgfvs.embedding import (
    _totally_balanced,
    Hyperedge,
    HyperedgeFamily,
    build_tower,
    closure_bound,
    color_subset_subtree,
    decomposition_forest,
    embed,
    embedded_graph,
    family_graph,
    hyperedges,
    intersection_closure,
    is_k_tree,
    ktree_from_level,
    lemma_disjoint_violations,
    mask_names,
    verify_tower,
)
from cbgfvs.graph import BipartiteGraph, complete_bipartite, iter_bits
from cbgfvs.recognition import is_chordal_bipartite
from cbgfvs.testkit.corpus import exhaustive_corpus
from conftest import matching


def bmask(*idx):
    return sum(1 << (j - 1) for j in idx)


def fam(b_size, *sets):
    return HyperedgeFamily(b_size, tuple(Hyperedge(bmask(*s), 1) for s in sets))


# three triangles in a row: a 2-tree on b1..b5
STRIP = family_graph(5, [bmask(1, 2, 3), bmask(2, 3, 4), bmask(3, 4, 5)])


def maximal_cliques(h):
    n = h.n
    cliques = []
    for r in range(1, n + 1):
        for sub in combinations(range(n), r):
            if all(h.has_edge(u, v) for u, v in combinations(sub, 2)):
                cliques.append(set(sub))
    return [c for c in cliques if not any(c < d for d in cliques)]


def test_hyperedge_examples(p4):
    f = hyperedges(complete_bipartite(2, 3))
    assert [(mask_names(h.members), h.multiplicity) for h in f.edges] == [("{b1,b2,b3}", 2)]
    f = hyperedges(p4)
    assert [(mask_names(h.members), h.multiplicity) for h in f.edges] == [("{b1}", 1), ("{b1,b2}", 1)]
    f = hyperedges(matching(3))
    assert [h.multiplicity for h in f.edges] == [1, 1, 1]
    assert hyperedges(BipartiteGraph(2, 1, [(1, 0)])).free == (0,)


def test_family_validation():
    with pytest.raises(DomainError):
        Hyperedge(0, 1)
    with pytest.raises(DomainError):
        fam(2, (1, 2), (1, 2))
    with pytest.raises(DomainError):
        fam(1, (1, 2))


def test_closure_examples():
    closed = intersection_closure(fam(3, (1, 2), (2, 3)))
    assert closed.masks() == [bmask(2), bmask(1, 2), bmask(2, 3)]
    assert closed.multiplicity(bmask(2)) == 0
    again = intersection_closure(closed)
    assert again == closed
    assert closure_bound(4) == 10


def test_closure_bound_on_four_b_vertices():
    for g in exhaustive_corpus(9):
        if g.b_size == 4 and is_chordal_bipartite(g):
            assert len(intersection_closure(hyperedges(g))) <= 10


def test_embedded_graph_adds_closure_rows():
    g = family_graph(3, [bmask(1, 2), bmask(2, 3)])
    closed = intersection_closure(hyperedges(g))
    m = embedded_graph(g, closed)
    assert m.a_size == 3 and m.adj_a[2] == bmask(2)
    assert is_chordal_bipartite(m)


def test_tower_of_k13(star3):
    closed = intersection_closure(hyperedges(star3))
    assert closed.masks() == [bmask(1, 2, 3)]
    t = build_tower(closed, star3)
    assert t.omega == 2
    assert {mask_names(k) for k in t.spanning} == {"{b1,b2}", "{b2,b3}"}
    assert t.levels[2] == (bmask(1, 2, 3),)
    assert len(t.tree_edges(2)) == 3
    assert verify_tower(t, closed, star3) == []


def test_tower_of_single_edge():
    g = complete_bipartite(1, 1)
    t = build_tower(intersection_closure(hyperedges(g)), g)
    assert t.omega == 0
    assert t.levels == ((bmask(1),),)
    assert t.tree_edges(0) == set()


def test_two_tree_clique_count():
    closed = intersection_closure(hyperedges(STRIP))
    t = build_tower(closed, STRIP)
    assert t.omega == 2
    assert len(t.levels[2]) == 3
    assert len(maximal_cliques(t.graph(2))) == 3
    assert is_k_tree(t.graph(2).nbr, (1 << 5) - 1, 2)


def test_tampered_tower_breaks_clause_3():
    closed = intersection_closure(hyperedges(STRIP))
    t = build_tower(closed, STRIP)
    lv = list(t.levels)
    lv[2] = tuple(k if k != bmask(3, 4, 5) else bmask(1, 2, 5) for k in lv[2])
    bad = dataclasses.replace(t, levels=tuple(lv))
    problems = verify_tower(bad, closed, STRIP)
    assert any(p.startswith("clause 3") for p in problems)


def test_tower_needs_closed_family():
    with pytest.raises(DomainError):
        build_tower(fam(3, (1, 2), (2, 3)))


def test_color_subsets():
    t = build_tower(intersection_closure(hyperedges(STRIP)), STRIP)
    kt = ktree_from_level(t, 2)
    assert kt.satisfies_recursion() and kt.is_proper_coloring()
    whole = color_subset_subtree(kt, [1, 2, 3])
    assert whole.edges() == kt.edges()
    for c in (1, 2, 3):
        sub = color_subset_subtree(kt, [c])
        assert sub.k == 0 and sub.edges() == set()
    for pair in combinations((1, 2, 3), 2):
        sub = color_subset_subtree(kt, pair)
        assert sub.k == 1 and len(sub.edges()) == len(sub.order) - 1
    with pytest.raises(DomainError):
        color_subset_subtree(kt, [])
    with pytest.raises(DomainError):
        ktree_from_level(t, 3)


def test_triangle_color_pairs(star3):
    t = build_tower(intersection_closure(hyperedges(star3)), star3)
    kt = ktree_from_level(t, 2)
    for pair in combinations((1, 2, 3), 2):
        assert len(color_subset_subtree(kt, pair).edges()) == 1


def test_lemma_disjoint():
    assert lemma_disjoint_violations(intersection_closure(hyperedges(STRIP))) == []
    # R={b1,b2}, H1 meets it in b1, H2 in b2, and H1, H2 share b3: the family of C6
    bad = fam(3, (1, 2), (1, 3), (2, 3))
    assert (bmask(1, 2), bmask(1, 3), bmask(2, 3)) in lemma_disjoint_violations(bad)


def test_forest_of_p4(p4):
    closed, tower, forest = embed(p4)
    assert forest.roots() == [bmask(1, 2)]
    assert forest.G_C(bmask(1, 2)) == [bmask(1), bmask(1, 2)]
    assert forest.A_C(bmask(1, 2)) == [0, 1]
    assert forest.outline() == "{b1,b2} x1\n  {b1} x1"


def test_forest_single_hyperedge():
    g = complete_bipartite(2, 2)
    _, _, forest = embed(g)
    assert forest.nodes == [bmask(1, 2)]
    assert forest.G_C(bmask(1, 2)) == [bmask(1, 2)]
    assert forest.outline() == "{b1,b2} x2"


def test_forest_accounts_for_every_a_vertex():
    for g in exhaustive_corpus(8):
        if not is_chordal_bipartite(g):
            continue
        closed, tower, forest = embed(g)
        assert verify_tower(tower, closed, g) == []
        covered = sorted(x for r in forest.roots() for x in forest.A_C(r))
        assert covered == [i for i in range(g.a_size) if g.adj_a[i]]
        assert sorted(covered + list(closed.free)) == list(range(g.a_size))


@settings(max_examples=400, deadline=None)
@given(st.integers(1, 7).flatmap(lambda nb: st.tuples(st.just(nb), st.lists(st.integers(0, (1 << nb) - 1), max_size=9))))
def test_totally_balanced_matches_recognition(case):
    nb, masks = case
    assert _totally_balanced(masks, nb) == is_chordal_bipartite(family_graph(nb, masks))
