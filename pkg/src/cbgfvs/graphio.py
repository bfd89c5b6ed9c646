"""Text format for bipartite graphs.

    # comment
    p cbg <|A|> <|B|> <m>
    e a<i> b<j>          (m lines, 1-based indices)

Blank lines and ``#`` comments may appear anywhere.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .graph import BipartiteGraph

_HEADER = re.compile(r"p\s+cbg\s+(\d+)\s+(\d+)\s+(\d+)\s*$")
_EDGE = re.compile(r"e\s+a(\d+)\s+b(\d+)\s*$")


def parse_graph(text: str) -> BipartiteGraph:
    header = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        body = stripped.strip()
        if not body:
            continue
        col = len(stripped) - len(stripped.lstrip()) + 1
        if body.startswith("p"):
            if header is not None:
                raise ParseError("second header line", no, col)
            m = _HEADER.match(body)
            if not m:
                raise ParseError("expected 'p cbg <|A|> <|B|> <m>'", no, col)
            header = tuple(int(x) for x in m.groups())
            continue
        if body.startswith("e"):
            if header is None:
                raise ParseError("edge before header", no, col)
            m = _EDGE.match(body)
            if not m:
                raise ParseError("expected 'e a<i> b<j>'", no, col)
            i, j = int(m.group(1)), int(m.group(2))
            if not 1 <= i <= header[0]:
                raise ParseError(f"a{i} out of range 1..{header[0]}", no, col + m.start(1) - 1)
            if not 1 <= j <= header[1]:
                raise ParseError(f"b{j} out of range 1..{header[1]}", no, col + m.start(2) - 1)
            if (i, j) in seen:
                raise ParseError(f"duplicate edge a{i} b{j}", no, col)
            seen.add((i, j))
            edges.append((i - 1, j - 1))
            continue
        raise ParseError(f"unknown line type {body[0]!r}", no, col)
    if header is None:
        raise ParseError("missing header 'p cbg <|A|> <|B|> <m>'")
    if len(edges) != header[2]:
        raise ParseError(f"header announces {header[2]} edges, found {len(edges)}")
    return BipartiteGraph(header[0], header[1], edges)


def format_graph(g: BipartiteGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p cbg {g.a_size} {g.b_size} {g.m}")
    lines.extend(f"e a{i + 1} b{j + 1}" for i, j in g.edges)
    return "\n".join(lines) + "\n"
