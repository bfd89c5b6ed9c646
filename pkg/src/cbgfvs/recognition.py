"""Recognition of chordal bipartite graphs.

Two independent routes are provided.  The first removes bisimplicial edges
greedily (edges only, endpoints stay) and succeeds iff the graph is chordal
bipartite.  The second completes the A-side into a clique and asks whether
the resulting graph is strongly chordal, i.e. admits a simple elimination
ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .graph import BipartiteGraph, Vertex, iter_bits

Edge = tuple[int, int]


def _bisimplicial(adj_a: list[int], adj_b: list[int], i: int, j: int) -> bool:
    # N(a_i) u N(b_j) complete bipartite <=> every A-neighbour of b_j sees all of N(a_i)
    need = adj_a[i]
    for a in iter_bits(adj_b[j]):
        if adj_a[a] & need != need:
            return False
    return True


def is_bisimplicial(g: BipartiteGraph, e: Edge) -> bool:
    i, j = e
    if not g.has_edge(i, j):
        raise DomainError(f"a{i + 1}b{j + 1} is not an edge")
    return _bisimplicial(list(g.adj_a), list(g.adj_b), i, j)


def perfect_edge_elimination_order(g: BipartiteGraph) -> list[Edge] | None:
    """Greedy perfect edge-without-vertex elimination ordering, or ``None``.

    At every step the lexicographically smallest bisimplicial edge of the
    current graph is removed.  Any bisimplicial edge of a chordal bipartite
    graph can start such an ordering, so the greedy never has to backtrack.
    """
    adj_a = list(g.adj_a)
    adj_b = list(g.adj_b)
    remaining = set(g.edges)
    # candidates whose status may have changed since they were last rejected
    dirty = set(remaining)
    known_good: set[Edge] = set()
    order = []
    while remaining:
        for e in dirty:
            if _bisimplicial(adj_a, adj_b, *e):
                known_good.add(e)
            else:
                known_good.discard(e)
        dirty = set()
        if not known_good:
            return None
        e = min(known_good)
        i, j = e
        order.append(e)
        remaining.discard(e)
        known_good.discard(e)
        old_ni = adj_a[i]
        adj_a[i] &= ~(1 << j)
        adj_b[j] &= ~(1 << i)
        # Status of (u, v) depends on N(u), N(v) and N(a) for a in N(v).
        # Removing (i, j) shrinks N(a_i) and N(b_j).
        for y in iter_bits(adj_a[i]):
            dirty.add((i, y))
        for x in iter_bits(adj_b[j]):
            dirty.add((x, j))
        for v in iter_bits(old_ni):
            for u in iter_bits(adj_b[v]):
                dirty.add((u, v))
        dirty &= remaining
    return order


@lru_cache(maxsize=65536)
def is_chordal_bipartite(g: BipartiteGraph) -> bool:
    return perfect_edge_elimination_order(g) is not None


# -- derived chordal graphs ------------------------------------------------

@dataclass(frozen=True)
class DerivedChordalGraph:
    """An ordinary graph on (a copy of) the vertices of a bipartite graph.

    ``nbr[v]`` is the neighbourhood bitmask of vertex ``v``; ``labels`` names
    the vertices for reporting.
    """

    nbr: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.nbr)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr[u] >> v & 1)

    def edge_set(self) -> set[frozenset[int]]:
        return {frozenset((u, v)) for u in range(self.n) for v in iter_bits(self.nbr[u]) if u < v}

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "DerivedChordalGraph":
        nbr = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError("loops are not allowed")
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        if labels is None:
            labels = tuple(str(v) for v in range(n))
        return cls(tuple(nbr), tuple(labels))


def _labels(g: BipartiteGraph) -> tuple[str, ...]:
    return tuple(g.vertex(v).name for v in range(g.n))


def build_G_A(g: BipartiteGraph) -> DerivedChordalGraph:
    """``G`` plus an edge between every pair of A-vertices."""
    nbr = list(g.nbr)
    a_all = g.a_mask
    for v in range(g.a_size):
        nbr[v] |= a_all & ~(1 << v)
    return DerivedChordalGraph(tuple(nbr), _labels(g))


def build_G_B_star(g: BipartiteGraph) -> DerivedChordalGraph:
    """``G`` plus a clique on the neighbourhood of every A-vertex."""
    nbr = list(g.nbr)
    for x in range(g.a_size):
        hood = g.nbr[x]
        for b in iter_bits(hood):
            nbr[b] |= hood & ~(1 << b)
    return DerivedChordalGraph(tuple(nbr), _labels(g))


def _simple_in(nbr, alive: int, v: int) -> bool:
    closed = (nbr[v] & alive) | (1 << v)
    hoods = sorted(((nbr[u] & alive) | (1 << u) for u in iter_bits(closed)), key=int.bit_count)
    for small, big in zip(hoods, hoods[1:]):
        if small & ~big:
            return False
    return True


def is_simple_vertex(h: DerivedChordalGraph, v: int) -> bool:
    """The closed neighbourhoods of the members of ``N[v]`` form an inclusion chain."""
    if not 0 <= v < h.n:
        raise DomainError(f"no vertex {v} in the derived graph")
    return _simple_in(h.nbr, (1 << h.n) - 1, v)


def simple_elimination_order(h: DerivedChordalGraph, alive: int | None = None) -> list[int] | None:
    """Repeatedly delete the smallest simple vertex; ``None`` if none is left.

    ``alive`` restricts the search to an induced subgraph.
    """
    if alive is None:
        alive = (1 << h.n) - 1
    order = []
    while alive:
        for v in iter_bits(alive):
            if _simple_in(h.nbr, alive, v):
                break
        else:
            return None
        order.append(v)
        alive &= ~(1 << v)
    return order


def is_strongly_chordal(h: DerivedChordalGraph) -> bool:
    return simple_elimination_order(h) is not None


def is_chordal_bipartite_via_GA(g: BipartiteGraph) -> bool:
    return simple_elimination_order(build_G_A(g)) is not None


def order_vertices(g: BipartiteGraph, order: list[int]) -> list[Vertex]:
    return [g.vertex(v) for v in order]


def edge_name(e: Edge) -> str:
    return f"a{e[0] + 1}b{e[1] + 1}"
