"""Potential maximal cliques and the block structure of minimal triangulations.

A *potential maximal clique* (PMC) is a vertex set that is a maximal clique
of some minimal triangulation.  ``is_pmc`` uses the standard test: ``G - Q``
has no component whose neighbourhood is all of ``Q``, and any two
non-adjacent vertices of ``Q`` lie in a common component neighbourhood.

Enumeration adds vertices one at a time in BFS order.  Every PMC of
``G[v1..vi]`` is one of: a PMC of the previous prefix, such a PMC plus the
new vertex, a minimal separator plus the new vertex, or ``S u (C n T)`` for
minimal separators ``S`` and ``T`` (``S`` avoiding the new vertex) and a
full component ``C`` of ``G - S``.
The separators of each prefix are derived from those of the next larger one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IntegrityError
from .graph import iter_bits, mask_components, mask_neighborhood
from .separators import enumerate_separator_masks, mask_is_minimal_separator


def _component_hoods(nbr, w: int, full: int) -> list[tuple[int, int]]:
    """Components of ``G[w]`` paired with their neighbourhoods inside ``full``."""
    out = []
    rest = w
    while rest:
        comp = frontier = rest & -rest
        reach = 0
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= nbr[v]
            reach |= grow
            grow &= rest & ~comp
            comp |= grow
            frontier = grow
        out.append((comp, reach & full & ~comp))
        rest &= ~comp
    return out


def is_pmc(nbr, full: int, omega: int) -> bool:
    if omega == 0 or omega & ~full:
        return False
    seps = [s for _, s in _component_hoods(nbr, full & ~omega, full)]
    if omega in seps:
        return False
    for v in iter_bits(omega):
        reach = (nbr[v] & full) | (1 << v)
        for s in seps:
            if s >> v & 1:
                reach |= s
        if omega & ~reach:
            return False
    return True


def bfs_order(nbr, full: int) -> list[int]:
    if not full:
        return []
    start = (full & -full).bit_length() - 1
    order = [start]
    seen = 1 << start
    k = 0
    while k < len(order):
        for w in iter_bits(nbr[order[k]] & full & ~seen):
            seen |= 1 << w
            order.append(w)
        k += 1
    if seen != full:
        raise IntegrityError("PMC enumeration expects a connected vertex set")
    return order


def _is_clique(nbr, s: int) -> bool:
    for v in iter_bits(s):
        if s & ~(nbr[v] | (1 << v)):
            return False
    return True


def atoms(nbr, full: int) -> list[int]:
    """Split a connected vertex set along clique minimal separators.

    In a bipartite graph these are cut vertices and separating edges.  Each
    step replaces the current piece by ``C u N(C)`` for the components ``C``
    of ``G - S``; the pieces that admit no clique separator are the atoms.
    """
    out = []
    todo = [full]
    while todo:
        piece = todo.pop()
        for s in enumerate_separator_masks(nbr, piece):
            if s.bit_count() <= 2 and _is_clique(nbr, s):
                for c, hood in _component_hoods(nbr, piece & ~s, piece):
                    todo.append(c | hood)
                break
        else:
            out.append(piece)
    return sorted(out)


def potential_maximal_cliques(nbr, full: int) -> list[int]:
    """All PMCs of the connected induced subgraph on ``full``, sorted.

    The PMCs of a graph are exactly those of its atoms, so each atom is
    handled separately by the vertex-incremental enumeration.
    """
    found = set()
    for atom in atoms(nbr, full):
        found.update(_incremental_pmcs(nbr, atom))
    return sorted(found, key=lambda m: (m.bit_count(), m))


def _incremental_pmcs(nbr, full: int) -> set[int]:
    order = bfs_order(nbr, full)
    k = len(order)
    prefixes = []
    acc = 0
    for v in order:
        acc |= 1 << v
        prefixes.append(acc)

    seps: list[set[int]] = [set() for _ in range(k)]
    seps[k - 1] = set(enumerate_separator_masks(nbr, full))
    for i in range(k - 2, -1, -1):
        drop = ~(1 << order[i + 1])
        cands = {s & drop for s in seps[i + 1]} - {0}
        seps[i] = {s for s in cands if mask_is_minimal_separator(nbr, prefixes[i], s)}

    pmcs = {prefixes[0]}
    for i in range(1, k):
        g_i = prefixes[i]
        a = 1 << order[i]
        cands = set()
        for q in pmcs:
            cands.add(q)
            cands.add(q | a)
        for s in seps[i]:
            if s & a:
                continue
            cands.add(s | a)
            for c, hood in _component_hoods(nbr, g_i & ~s, g_i):
                if hood != s:
                    continue
                for t in seps[i]:
                    x = c & t
                    if x:
                        cands.add(s | x)
        pmcs = {q for q in cands if is_pmc(nbr, g_i, q)}
    return pmcs


@dataclass
class Block:
    """A full block ``(S, C)``: ``C`` is a component of ``G - S`` with ``N(C) = S``."""

    separator: int
    component: int
    pmcs: list[int] = field(default_factory=list)


@dataclass
class BlockStructure:
    """PMCs of one connected vertex set together with their blocks.

    ``children[q]`` lists the components of ``G - q`` (each one a block key).
    """

    full: int
    pmcs: list[int]
    blocks: dict[int, Block]
    children: dict[int, list[int]]

    def blocks_bottom_up(self) -> list[Block]:
        return sorted(self.blocks.values(), key=lambda b: (b.component.bit_count(), b.component))


def block_structure(nbr, full: int) -> BlockStructure:
    pmcs = potential_maximal_cliques(nbr, full)
    blocks: dict[int, Block] = {}
    children: dict[int, list[int]] = {}
    for q in pmcs:
        comps = mask_components(nbr, full & ~q)
        children[q] = comps
        for d in comps:
            s = mask_neighborhood(nbr, d) & full
            rest = q & ~s
            probe = rest & -rest
            for c in mask_components(nbr, full & ~s):
                if c & probe:
                    break
            else:  # pragma: no cover - PMCs always stick out of their separators
                raise IntegrityError("PMC contained in one of its separators")
            if q & ~(s | c) or mask_neighborhood(nbr, c) & full != s:
                raise IntegrityError("PMC does not realise a full block")
            blk = blocks.get(c)
            if blk is None:
                blk = blocks[c] = Block(s, c)
            blk.pmcs.append(q)
    for d_list in children.values():
        for d in d_list:
            if d not in blocks:
                raise IntegrityError("a component of G - PMC has no block")
    return BlockStructure(full, pmcs, blocks, children)
