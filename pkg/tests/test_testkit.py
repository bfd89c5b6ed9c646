from itertools import permutations, product

import pytest

from cbgfvs.errors import CapExceeded, DomainError, ParseError
from cbgfvs.graph import BipartiteGraph, complete_bipartite, cycle_graph, path_graph
from cbgfvs.recognition import is_chordal_bipartite
from cbgfvs.testkit.corpus import _shape_graphs, exhaustive_corpus, parse_manifest, parse_spec
from cbgfvs.testkit.generators import FAMILIES, gen_family
from cbgfvs.testkit.oracles import (
    oracle_all_minimum_fvs,
    oracle_fvs,
    oracle_fvs_size,
    oracle_is_forest,
    oracle_longest_induced_cycle,
    oracle_minimal_separators,
)

CONVEX_5_6_SEED_1 = (
    (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4),
    (3, 2), (3, 3), (3, 4), (3, 5), (4, 0), (4, 1), (4, 2), (4, 3), (4, 4), (4, 5),
)


def test_oracle_fvs_examples(c6, k33):
    assert oracle_fvs_size(c6)[0] == 1
    assert oracle_fvs_size(k33)[0] == 2
    assert oracle_fvs_size(path_graph(6))[0] == 0
    res = oracle_fvs(k33)
    assert res.engine == "oracle" and res.size == 2


def test_oracle_caps(k33):
    big = BipartiteGraph(11, 11)
    with pytest.raises(CapExceeded):
        oracle_fvs_size(big)
    with pytest.raises(CapExceeded):
        oracle_minimal_separators(big)
    with pytest.raises(CapExceeded):
        oracle_all_minimum_fvs(k33, cap=5)


def test_all_minimum_fvs_of_c4(c4):
    k, sets = oracle_all_minimum_fvs(c4)
    assert k == 1
    assert sorted(sorted(s) for s in sets) == [["a1"], ["a2"], ["b1"], ["b2"]]


def test_oracle_separator_examples(p4, c4):
    assert sorted(map(sorted, oracle_minimal_separators(p4))) == [["a2"], ["b1"]]
    assert sorted(map(sorted, oracle_minimal_separators(c4))) == [["a1", "a2"], ["b1", "b2"]]
    star = complete_bipartite(4, 1)
    assert oracle_minimal_separators(star) == [frozenset({"b1"})]


def test_oracle_longest_induced_cycle(c6):
    assert oracle_longest_induced_cycle(c6) == 6
    assert oracle_longest_induced_cycle(complete_bipartite(2, 3)) == 4
    assert oracle_longest_induced_cycle(path_graph(7)) == 0


def test_oracle_is_forest(c4):
    assert not oracle_is_forest(c4, {"a1", "a2", "b1", "b2"})
    assert oracle_is_forest(c4, {"a1", "b1", "b2"})


def test_generator_examples():
    assert gen_family("complete_bipartite", {"p": 2, "q": 2}) == cycle_graph(4)
    assert gen_family("cycle", {"length": 6}) == cycle_graph(6)
    g = gen_family("convex", {"a": 5, "b": 6, "density": 0.5}, 1)
    assert g.edges == CONVEX_5_6_SEED_1
    assert is_chordal_bipartite(g)


@pytest.mark.parametrize(
    "name, params",
    [
        ("tree", {"n": 12}),
        ("convex", {"a": 6, "b": 7, "span": 3}),
        ("random_bipartite", {"a": 4, "b": 4, "density": 0.3}),
        ("random_bipartite", {"a": 4, "b": 4, "chordal": "true"}),
        ("closure_enriched", {"a": 4, "b": 5, "density": 0.4}),
    ],
)
def test_generators_are_pure(name, params):
    assert gen_family(name, params, 9) == gen_family(name, dict(params), 9)


def test_generated_classes():
    for seed in range(30):
        assert is_chordal_bipartite(gen_family("convex", {"a": 6, "b": 6}, seed))
        assert is_chordal_bipartite(gen_family("closure_enriched", {"a": 5, "b": 5}, seed))
        assert is_chordal_bipartite(gen_family("random_bipartite", {"a": 4, "b": 4, "chordal": "yes"}, seed))
        assert oracle_longest_induced_cycle(gen_family("tree", {"n": 9}, seed)) == 0


def test_generator_errors():
    with pytest.raises(DomainError):
        gen_family("cycle", {"length": 7})
    with pytest.raises(DomainError):
        gen_family("no_such_family")
    with pytest.raises(DomainError):
        gen_family("convex", {"a": 2, "b": 2, "density": 2})
    assert "convex" in FAMILIES


def test_exhaustive_counts():
    small = exhaustive_corpus(2)
    assert len(small) == 6
    assert complete_bipartite(1, 1) in small
    assert BipartiteGraph(1, 1) in small
    four = exhaustive_corpus(4)
    assert len(four) == 31  # golden
    for g in (path_graph(4), cycle_graph(4), complete_bipartite(1, 3), BipartiteGraph(2, 2, [(0, 0), (1, 1)])):
        assert g in four


def test_exhaustive_cap():
    with pytest.raises(CapExceeded):
        exhaustive_corpus(11)


def _brute_classes(p, q):
    seen = set()
    for bits in product((0, 1), repeat=p * q):
        rows = [bits[i * q:(i + 1) * q] for i in range(p)]
        best = min(
            tuple(sorted(tuple(r[c] for c in cols) for r in rows))
            for cols in permutations(range(q))
        )
        seen.add(best)
    return len(seen)


@pytest.mark.parametrize("p, q", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)])
def test_shape_counts_match_brute_force(p, q):
    assert len(_shape_graphs(p, q)) == _brute_classes(p, q)


def test_manifest_parsing():
    specs = parse_manifest("# header\nexhaustive max=3\nconvex a=4 b=4 seed=0..2  # three\n\ntree n=5 seed=7\n")
    assert [s.text() for s in specs] == ["exhaustive max=3", "convex a=4 b=4 seed=0..2", "tree n=5 seed=7"]
    assert len(list(specs[1])) == 3
    assert len(list(specs[0])) == len(exhaustive_corpus(3))
    ident, g = next(iter(specs[2]))
    assert ident == "tree n=5 seed=7" and g.n == 5


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "no corpus specs"),
        ("# only comments\n", "no corpus specs"),
        ("bogus a=1\n", "unknown family"),
        ("tree n\n", "expected key=value"),
        ("tree n=3 seed=5..2\n", "empty seed range"),
        ("tree n=3 seed=x\n", "bad seed range"),
    ],
)
def test_manifest_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_manifest(text)


def test_spec_error_column():
    with pytest.raises(ParseError) as info:
        parse_spec("tree n=3 junk", 4)
    assert (info.value.line, info.value.column) == (4, 10)
