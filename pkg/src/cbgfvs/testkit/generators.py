"""Deterministic instance generators.

Every generator is a pure function of ``(name, params, seed)`` built on
:class:`random.Random`, so the same spec always yields the same graph.
"""

from __future__ import annotations

import random

from ..errors import DomainError, IntegrityError
from ..graph import BipartiteGraph, complete_bipartite, cycle_graph, path_graph
from ..recognition import is_chordal_bipartite

RESAMPLE_LIMIT = 1000


def _int(params, key, default=None, low=0):
    if key not in params:
        if default is None:
            raise DomainError(f"missing parameter {key!r}")
        return default
    try:
        value = int(params[key])
    except (TypeError, ValueError):
        raise DomainError(f"parameter {key!r} must be an integer, got {params[key]!r}") from None
    if value < low:
        raise DomainError(f"parameter {key!r} must be at least {low}")
    return value


def _prob(params, key, default):
    try:
        value = float(params.get(key, default))
    except (TypeError, ValueError):
        raise DomainError(f"parameter {key!r} must be a number") from None
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"parameter {key!r} must lie in [0, 1]")
    return value


def random_tree(n: int, rng: random.Random) -> BipartiteGraph:
    """Uniform random recursive tree, two-coloured from vertex 0."""
    if n <= 0:
        return BipartiteGraph(0, 0)
    parent = [None] + [rng.randrange(v) for v in range(1, n)]
    depth = [0] * n
    for v in range(1, n):
        depth[v] = depth[parent[v]] + 1
    index = {}
    counts = [0, 0]
    for v in range(n):
        side = depth[v] % 2
        index[v] = counts[side]
        counts[side] += 1
    edges = []
    for v in range(1, n):
        u = parent[v]
        a, b = (u, v) if depth[u] % 2 == 0 else (v, u)
        edges.append((index[a], index[b]))
    return BipartiteGraph(counts[0], counts[1], edges)


def convex(a: int, b: int, density: float, rng: random.Random, span: int | None = None) -> BipartiteGraph:
    """Each A-vertex sees an interval of B.

    Interval lengths are ``1 + Binomial(b - 1, density)``, or uniform on
    ``1..span`` when ``span`` is given; starts are uniform.
    """
    edges = []
    if b == 0:
        return BipartiteGraph(a, 0)
    for i in range(a):
        if span is not None:
            length = rng.randint(1, min(span, b))
        else:
            length = 1 + sum(rng.random() < density for _ in range(b - 1))
        start = rng.randrange(b - length + 1)
        edges.extend((i, j) for j in range(start, start + length))
    return BipartiteGraph(a, b, edges)


def random_bipartite(a: int, b: int, density: float, rng: random.Random) -> BipartiteGraph:
    return BipartiteGraph(a, b, [(i, j) for i in range(a) for j in range(b) if rng.random() < density])


def closure_enriched(base: BipartiteGraph) -> BipartiteGraph:
    """``base`` plus one real A-vertex for each intersection row its closure adds."""
    from ..embedding import embedded_graph, hyperedges, intersection_closure

    return embedded_graph(base, intersection_closure(hyperedges(base)))


FAMILIES = ("complete_bipartite", "cycle", "path", "tree", "convex", "random_bipartite", "closure_enriched")


def gen_family(name: str, params: dict | None = None, seed: int = 0) -> BipartiteGraph:
    params = dict(params or {})
    rng = random.Random(f"{name}:{seed}")
    if name == "complete_bipartite":
        return complete_bipartite(_int(params, "p"), _int(params, "q"))
    if name == "cycle":
        length = _int(params, "length", low=4)
        if length % 2:
            raise DomainError("bipartite cycles have even length")
        return cycle_graph(length)
    if name == "path":
        return path_graph(_int(params, "n"))
    if name == "tree":
        return random_tree(_int(params, "n"), rng)
    if name in ("convex", "random_bipartite", "closure_enriched"):
        a, b = _int(params, "a"), _int(params, "b")
        density = _prob(params, "density", 0.5)
        if name == "random_bipartite":
            chordal = str(params.get("chordal", "false")).lower() in ("1", "true", "yes")
            for _ in range(RESAMPLE_LIMIT):
                g = random_bipartite(a, b, density, rng)
                if not chordal or is_chordal_bipartite(g):
                    return g
            raise IntegrityError(f"no chordal bipartite sample after {RESAMPLE_LIMIT} tries")
        span = _int(params, "span", low=1) if "span" in params else None
        g = convex(a, b, density, rng, span)
        if name == "closure_enriched":
            g = closure_enriched(g)
        if not is_chordal_bipartite(g):
            raise IntegrityError(f"{name} produced a graph that is not chordal bipartite")
        return g
    raise DomainError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
