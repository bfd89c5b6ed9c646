"""Exact minimum feedback vertex sets on chordal bipartite graphs.

The solver computes a maximum induced forest and returns its complement.
A vertex set ``F`` induces a forest exactly when some minimal triangulation
of ``G`` has every maximal clique meeting ``F`` in at most two vertices, so
the dynamic program walks the full blocks ``(S, C)`` of minimal
triangulations and, for each block, records the best forest inside ``C``
for every *context* ``X``: the at most two forest vertices on ``S``.
Chordal bipartite graphs have few minimal separators and hence few blocks,
which keeps the table polynomial.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .errors import CapExceeded, DomainError, IntegrityError, PreconditionError
from .graph import (
    BipartiteGraph,
    Vertex,
    VertexSet,
    check_peeling_order,
    is_forest,
    iter_bits,
    leaf_peeling_order,
    mask_components,
    mask_neighborhood,
    parse_vertex_name,
)
from .recognition import DerivedChordalGraph, is_chordal_bipartite, is_simple_vertex
from .triangulation import Block, BlockStructure, block_structure


@dataclass(frozen=True)
class FvsResult:
    fvs: VertexSet
    size: int
    forest_certificate: tuple[Vertex, ...] | None
    engine: str = "dp"

    @property
    def certified(self) -> bool:
        return self.forest_certificate is not None

    def names(self) -> list[str]:
        return self.fvs.names()

    @classmethod
    def from_mask(cls, g: BipartiteGraph, mask: int, engine: str) -> "FvsResult":
        fvs = g.from_mask(mask)
        rest = g.vertices() - fvs
        order = leaf_peeling_order(g, rest)
        if order is not None and not check_peeling_order(g, order):
            order = None
        return cls(fvs, len(fvs), tuple(order) if order is not None else None, engine)

    @classmethod
    def from_names(cls, g: BipartiteGraph, names, engine: str) -> "FvsResult":
        mask = 0
        for name in names:
            mask |= 1 << g.gid(parse_vertex_name(name))
        return cls.from_mask(g, mask, engine)


def fvs_complete_bipartite(p: int, q: int) -> int:
    """Minimum FVS size of ``K_{p,q}``: keep a star, delete the rest of the smaller side."""
    if p < 0 or q < 0:
        raise DomainError("class sizes must be non-negative")
    return 0 if min(p, q) <= 1 else min(p, q) - 1


def _small_subsets(mask: int, limit: int = 2):
    members = list(iter_bits(mask))
    yield 0
    for v in members:
        yield 1 << v
    if limit >= 2:
        for u, v in combinations(members, 2):
            yield (1 << u) | (1 << v)


@dataclass
class SolveStats:
    pmcs: int = 0
    blocks: int = 0
    max_contexts: int = 0
    context_cap: int = 0
    seconds: float = 0.0


class ContextExplosion(CapExceeded):
    """The number of contexts for one block exceeded the configured cap."""

    def __init__(self, message, diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class ForestTable:
    """Memo of best forest sizes per block and context for one connected piece.

    ``value[C][X]`` is the largest ``|F n C|`` over induced forests ``F`` of
    ``G[S u C]`` with ``F n S = X`` that fit a minimal triangulation of the
    block with at most two forest vertices per bag.  ``choice[C][X]`` keeps
    the PMC and its forest vertices for reconstruction.
    """

    def __init__(self, nbr, structure: BlockStructure, cap: int):
        self.nbr = nbr
        self.structure = structure
        self.cap = cap
        self.value: dict[int, dict[int, int]] = {}
        self.choice: dict[int, dict[int, tuple[int, int]]] = {}
        self.max_contexts = 0
        for blk in structure.blocks_bottom_up():
            self._fill(blk)

    def _seps(self, q: int) -> list[tuple[int, int]]:
        return [(d, mask_neighborhood(self.nbr, d) & self.structure.full) for d in self.structure.children[q]]

    def _score(self, q: int, y: int, kids: list[tuple[int, int]], outside: int) -> int:
        total = (y & ~outside).bit_count()
        for d, s in kids:
            total += self.value[d][y & s]
        return total

    def _fill(self, blk: Block) -> None:
        s, c = blk.separator, blk.component
        best: dict[int, int] = {}
        arg: dict[int, tuple[int, int]] = {}
        for q in blk.pmcs:
            kids = [(d, sd) for d, sd in self._seps(q) if d & c]
            for y in _small_subsets(q):
                x = y & s
                val = self._score(q, y, kids, s)
                if val > best.get(x, -1):
                    best[x] = val
                    arg[x] = (q, y)
        if len(best) > self.cap:
            raise ContextExplosion(
                f"block with {c.bit_count()} vertices produced {len(best)} contexts (cap {self.cap})",
                {"separator": s, "component": c, "contexts": len(best)},
            )
        self.max_contexts = max(self.max_contexts, len(best))
        self.value[c] = best
        self.choice[c] = arg

    def dp_node(self, component: int, context: int) -> int:
        """Best forest size inside block ``component`` given forest vertices ``context`` on its separator."""
        try:
            return self.value[component][context]
        except KeyError:
            raise DomainError("unknown block or context") from None

    def best_root(self) -> tuple[int, int, int]:
        """``(size, pmc, forest vertices in it)`` for the whole piece."""
        full = self.structure.full
        best = (-1, 0, 0)
        for q in self.structure.pmcs:
            kids = self._seps(q)
            for y in _small_subsets(q):
                val = self._score(q, y, kids, 0)
                if val > best[0]:
                    best = (val, q, y)
        if best[0] < 0:
            raise IntegrityError(f"no PMC for vertex set {full:#x}")
        return best

    def reconstruct(self) -> int:
        """Vertex mask of an optimal forest."""
        size, q, y = self.best_root()
        forest = y
        stack = [(d, y & s) for d, s in self._seps(q)]
        while stack:
            c, x = stack.pop()
            q, y = self.choice[c][x]
            forest |= y
            stack.extend((d, y & s) for d, s in self._seps(q) if d & c)
        if forest.bit_count() != size:
            raise IntegrityError("reconstructed forest does not match its table value")
        return forest


def default_context_cap(g: BipartiteGraph, factor: int = 1) -> int:
    return max(1, factor * (g.n + g.m) ** 2)


def _pieces(g: BipartiteGraph) -> list[int]:
    return mask_components(g.nbr, g.vertices().mask)


def max_induced_forest(g: BipartiteGraph, *, cap: int | None = None, stats: SolveStats | None = None,
                       check_class: bool = True) -> tuple[int, VertexSet]:
    """Size and vertex set of a maximum induced forest."""
    if check_class and not is_chordal_bipartite(g):
        raise PreconditionError("the DP engine needs a chordal bipartite graph")
    if cap is None:
        cap = default_context_cap(g)
    started = time.perf_counter()
    forest = 0
    for piece in _pieces(g):
        if piece.bit_count() <= 2:
            forest |= piece
            continue
        structure = block_structure(g.nbr, piece)
        table = ForestTable(g.nbr, structure, cap)
        forest |= table.reconstruct()
        if stats is not None:
            stats.pmcs += len(structure.pmcs)
            stats.blocks += len(structure.blocks)
            stats.max_contexts = max(stats.max_contexts, table.max_contexts)
    if stats is not None:
        stats.context_cap = cap
        stats.seconds = time.perf_counter() - started
    result = g.from_mask(forest)
    if not is_forest(g, result):
        raise IntegrityError("DP returned a vertex set that is not a forest")
    return len(result), result


def solve_fvs(g: BipartiteGraph, *, cap: int | None = None, stats: SolveStats | None = None) -> FvsResult:
    """Minimum feedback vertex set of a chordal bipartite graph."""
    _, forest = max_induced_forest(g, cap=cap, stats=stats)
    return FvsResult.from_mask(g, g.vertices().mask & ~forest.mask, engine="dp")


# -- exchange and threshold structure -----------------------------------------

def exchange_reduce(g: BipartiteGraph, f: VertexSet) -> VertexSet:
    """Swap ``x`` in ``F`` for ``y`` outside it when ``N(x)`` is inside ``N(y)``.

    Both vertices come from the same colour class; the first qualifying pair
    in canonical order is used.  Returns ``f`` unchanged when no pair exists.
    """
    for side_mask in (g.a_mask, g.b_mask):
        for x in iter_bits(f.mask & side_mask):
            for y in iter_bits(side_mask & ~f.mask):
                if g.nbr[x] & ~g.nbr[y] == 0:
                    return g.from_mask((f.mask & ~(1 << x)) | (1 << y))
    return f


def exchange_pairs(g: BipartiteGraph, f: VertexSet) -> list[tuple[int, int]]:
    """All ``(x, y)`` usable by :func:`exchange_reduce` (global ids)."""
    pairs = []
    for side_mask in (g.a_mask, g.b_mask):
        for x in iter_bits(f.mask & side_mask):
            for y in iter_bits(side_mask & ~f.mask):
                if g.nbr[x] & ~g.nbr[y] == 0:
                    pairs.append((x, y))
    return pairs


def build_G_B(g: BipartiteGraph):
    """``G`` plus an edge between every pair of B-vertices."""
    nbr = list(g.nbr)
    for v in range(g.a_size, g.n):
        nbr[v] |= g.b_mask & ~(1 << v)
    return DerivedChordalGraph(tuple(nbr), tuple(g.vertex(v).name for v in range(g.n)))


def inclusion_chain(g: BipartiteGraph, x: int) -> list[int] | None:
    """``N(x)`` ordered so neighbourhoods grow along the list, or ``None``."""
    hood = sorted(iter_bits(g.nbr[x]), key=lambda v: (g.nbr[v].bit_count(), v))
    for u, v in zip(hood, hood[1:]):
        if g.nbr[u] & ~g.nbr[v]:
            return None
    return hood


@dataclass(frozen=True)
class ThresholdWitness:
    ordering: tuple[Vertex, ...]
    threshold: int
    fvs: frozenset[str]


def _strictly_below(g: BipartiteGraph, u: int, v: int) -> bool:
    return g.nbr[u] & ~g.nbr[v] == 0 and g.nbr[u] != g.nbr[v]


def threshold_witness(g: BipartiteGraph, x: Vertex, minimum_sets, *, deleted_end: str = "prefix") -> ThresholdWitness | None:
    """A minimum FVS whose trace on ``N(x)`` is a prefix (or suffix) of an inclusion order.

    ``N(x)`` is ordered so neighbourhoods grow along the order; vertices with
    equal neighbourhoods may appear in either order.  ``minimum_sets`` is an
    iterable of minimum feedback vertex sets given as name sets, normally
    from the brute-force oracle.  With ``deleted_end="prefix"`` the deleted
    vertices must be ``x_1..x_t``, with ``"suffix"`` they must be
    ``x_(l-t+1)..x_l``.  Returns ``None`` when no given set conforms.
    """
    if deleted_end not in ("prefix", "suffix"):
        raise DomainError("deleted_end must be 'prefix' or 'suffix'")
    if x.side != "A":
        raise DomainError("threshold witnesses are defined for A-vertices")
    gid = g.gid(x)
    if not is_simple_vertex(build_G_B(g), gid):
        raise DomainError(f"{x.name} is not simple in G_B")
    chain = inclusion_chain(g, gid)
    if chain is None:  # pragma: no cover - simplicity in G_B implies the chain
        raise IntegrityError("simple vertex without an inclusion chain")
    for f in minimum_sets:
        hit = [v for v in chain if g.vertex(v).name in f]
        kept = [v for v in chain if g.vertex(v).name not in f]
        if deleted_end == "prefix":
            ok = not any(_strictly_below(g, u, v) for v in hit for u in kept)
            order = hit + kept
        else:
            ok = not any(_strictly_below(g, v, u) for v in hit for u in kept)
            order = kept + hit
        if ok:
            return ThresholdWitness(tuple(g.vertex(v) for v in order), len(hit), frozenset(f))
    return None
