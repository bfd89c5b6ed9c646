import pytest

from cbgfvs.errors import ParseError
from cbgfvs.graph import complete_bipartite, cycle_graph
from cbgfvs.graphio import format_graph, parse_graph


def test_roundtrip():
    g = cycle_graph(6)
    text = format_graph(g, "C6\nsecond line")
    assert text.startswith("# C6\n# second line\np cbg 3 3 6\n")
    assert parse_graph(text) == g


def test_comments_and_blank_lines():
    text = "# hello\n\np cbg 2 2 4  # header\ne a1 b1\n  e a1 b2\ne a2 b1\n\ne a2 b2\n"
    assert parse_graph(text) == complete_bipartite(2, 2)


def test_empty_graph():
    g = parse_graph("p cbg 0 0 0\n")
    assert g.n == 0


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("p cbg 1 1 1\ne a3 b1\n", 2, 3, "out of range"),
        ("p cbg 1 2 1\ne a1 b9\n", 2, 6, "out of range"),
        ("e a1 b1\n", 1, 1, "before header"),
        ("p cbg 1 1 2\ne a1 b1\ne a1 b1\n", 3, 1, "duplicate"),
        ("p cbg 1 1\n", 1, 1, "expected 'p cbg"),
        ("p cbg 1 1 1\np cbg 1 1 1\n", 2, 1, "second header"),
        ("p cbg 1 1 1\n  x 1 2\n", 2, 3, "unknown line"),
        ("p cbg 1 1 1\ne a1 c1\n", 2, 1, "expected 'e a<i> b<j>'"),
    ],
)
def test_errors_carry_position(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in str(info.value)


def test_edge_count_mismatch():
    with pytest.raises(ParseError, match="announces 2 edges, found 1"):
        parse_graph("p cbg 1 2 2\ne a1 b1\n")


def test_missing_header():
    with pytest.raises(ParseError, match="missing header"):
        parse_graph("# nothing here\n")
