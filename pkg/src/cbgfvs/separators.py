"""Minimal separators and witnesses for their structure in chordal bipartite graphs.

A set ``S`` is a minimal separator when ``G - S`` has two components that are
*close* to ``S``: every vertex of ``S`` has a neighbour in each of them.
The empty set is never reported as a separator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .graph import (
    BipartiteGraph,
    Vertex,
    VertexSet,
    iter_bits,
    mask_components,
    mask_is_complete_bipartite,
    mask_neighborhood,
)
from .recognition import _bisimplicial, is_chordal_bipartite


@dataclass(frozen=True)
class SeparatorReport:
    separator: VertexSet
    components: tuple[VertexSet, ...]
    close_flags: tuple[bool, ...]

    @property
    def close_components(self) -> list[VertexSet]:
        return [c for c, ok in zip(self.components, self.close_flags) if ok]


def _close_components(nbr, full: int, s: int) -> tuple[list[int], list[bool]]:
    comps = mask_components(nbr, full & ~s)
    flags = []
    for c in comps:
        flags.append(mask_neighborhood(nbr, c) & s == s)
    return comps, flags


def mask_is_minimal_separator(nbr, full: int, s: int) -> bool:
    if s == 0 or s == full:
        return False
    _, flags = _close_components(nbr, full, s)
    return sum(flags) >= 2


def is_minimal_separator(g: BipartiteGraph, s: VertexSet) -> bool:
    if s.mask == g.vertices().mask:
        raise DomainError("the whole vertex set cannot be a separator")
    return mask_is_minimal_separator(g.nbr, g.vertices().mask, s.mask)


def separator_report(g: BipartiteGraph, s: VertexSet) -> SeparatorReport:
    if s.mask == g.vertices().mask or not s:
        raise DomainError("a separator is a nonempty proper subset of V")
    comps, flags = _close_components(g.nbr, g.vertices().mask, s.mask)
    return SeparatorReport(s, tuple(g.from_mask(c) for c in comps), tuple(flags))


def enumerate_separator_masks(nbr, full: int) -> list[int]:
    """All minimal separators of the graph on ``full`` as sorted bitmasks.

    Seeds are ``N(C)`` for the components ``C`` of ``G - N[v]``; a separator
    ``S`` then spawns ``N(C)`` for the components of ``G - (S u N(x))`` for
    each ``x`` in ``S``.  The closure of this rule is exactly the set of
    minimal separators.
    """
    found: set[int] = set()
    queue: list[int] = []

    def push_from(removed: int) -> None:
        for c in mask_components(nbr, full & ~removed):
            sep = mask_neighborhood(nbr, c) & full
            if sep and sep not in found:
                found.add(sep)
                queue.append(sep)

    for v in iter_bits(full):
        push_from((nbr[v] & full) | (1 << v))
    while queue:
        s = queue.pop()
        for x in iter_bits(s):
            push_from(s | (nbr[x] & full))
    return sorted(found, key=lambda m: (m.bit_count(), m))


def enumerate_minimal_separators(g: BipartiteGraph) -> list[VertexSet]:
    return [g.from_mask(m) for m in enumerate_separator_masks(g.nbr, g.vertices().mask)]


# -- lemma witnesses ---------------------------------------------------------

def _require_chordal_separator(g: BipartiteGraph, s: VertexSet) -> None:
    if not is_minimal_separator(g, s):
        raise DomainError(f"{s!r} is not a minimal separator")
    if not is_chordal_bipartite(g):
        raise DomainError("graph is not chordal bipartite")


def _require_close(g: BipartiteGraph, s: VertexSet, c: VertexSet) -> None:
    comps, flags = _close_components(g.nbr, g.vertices().mask, s.mask)
    for comp, ok in zip(comps, flags):
        if comp == c.mask:
            if not ok:
                raise DomainError(f"{c!r} is not close to {s!r}")
            return
    raise DomainError(f"{c!r} is not a component of G - S")


def check_lemma1(g: BipartiteGraph, s: VertexSet) -> bool:
    """A minimal separator of a chordal bipartite graph induces a complete bipartite graph."""
    _require_chordal_separator(g, s)
    return mask_is_complete_bipartite(g, s.mask)


def witness_full_vertex(g: BipartiteGraph, s: VertexSet, c: VertexSet, side: str) -> Vertex | None:
    """First ``x`` in ``c`` with ``N(x) n S = S n side``."""
    _require_close(g, s, c)
    part = s.mask & (g.a_mask if side == "A" else g.b_mask)
    if not part:
        raise DomainError(f"S has no vertex on side {side}")
    for x in iter_bits(c.mask):
        if g.nbr[x] & s.mask == part:
            return g.vertex(x)
    return None


def witness_bisimplicial_in_component(g: BipartiteGraph, s: VertexSet, c: VertexSet) -> tuple[int, int] | None:
    """First edge inside ``c`` that is bisimplicial in the whole graph."""
    _require_close(g, s, c)
    inside = False
    adj_a, adj_b = list(g.adj_a), list(g.adj_b)
    c_b = c.mask >> g.a_size
    for i in iter_bits(c.mask & g.a_mask):
        for j in iter_bits(adj_a[i] & c_b):
            inside = True
            if _bisimplicial(adj_a, adj_b, i, j):
                return (i, j)
    if not inside:
        raise DomainError(f"{c!r} has no edge")
    return None


def witness_adjacent_pair(g: BipartiteGraph, s: VertexSet, c: VertexSet) -> tuple[Vertex, Vertex] | None:
    """Adjacent ``x, y`` in ``c`` with ``N(x) n S = S n A`` and ``N(y) n S = S n B``."""
    _require_close(g, s, c)
    s_a = s.mask & g.a_mask
    s_b = s.mask & g.b_mask
    if not s_a or not s_b:
        raise DomainError("the separator must meet both colour classes")
    for x in iter_bits(c.mask & g.b_mask):
        if g.nbr[x] & s.mask != s_a:
            continue
        for y in iter_bits(g.nbr[x] & c.mask):
            if g.nbr[y] & s.mask == s_b:
                return g.vertex(x), g.vertex(y)
    return None
