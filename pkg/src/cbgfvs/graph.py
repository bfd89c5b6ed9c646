"""Immutable bipartite graphs and the induced-subgraph queries built on them.

Vertices are identified by ``(side, index)`` with ``side`` in ``{"A", "B"}``
and a 0-based index.  Internally every vertex also has a global id: A-vertices
occupy ``0..a_size-1`` and B-vertices follow, which is the canonical order used
for iteration and tie-breaking throughout the package.  Vertex sets are
bitmasks over these ids.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .errors import DomainError

A = "A"
B = "B"


class Vertex(NamedTuple):
    side: str
    index: int

    @property
    def name(self) -> str:
        return f"{self.side.lower()}{self.index + 1}"

    def __repr__(self) -> str:
        return self.name


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_components(nbr: list[int], w: int) -> list[int]:
    """Connected components of the subgraph induced by ``w``, as bitmasks.

    ``nbr[v]`` is the neighbourhood bitmask of vertex ``v``.  Components come
    out ordered by their smallest member.
    """
    comps = []
    rest = w
    while rest:
        start = rest & -rest
        comp = start
        frontier = start
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= nbr[v]
            grow &= rest & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps


def mask_neighborhood(nbr: list[int], w: int) -> int:
    """Open neighbourhood of the set ``w``: vertices outside ``w`` adjacent to it."""
    out = 0
    for v in iter_bits(w):
        out |= nbr[v]
    return out & ~w


class VertexSet:
    """A set of vertices of one graph, stored as a bitmask over global ids."""

    __slots__ = ("mask", "a_size", "n")

    def __init__(self, mask: int, a_size: int, n: int):
        if mask >> n:
            raise DomainError("vertex set contains ids outside the graph")
        self.mask = mask
        self.a_size = a_size
        self.n = n

    def _vertex(self, gid: int) -> Vertex:
        if gid < self.a_size:
            return Vertex(A, gid)
        return Vertex(B, gid - self.a_size)

    def __contains__(self, v) -> bool:
        if not isinstance(v, tuple) or len(v) != 2:
            return False
        side, index = v
        if side == A and 0 <= index < self.a_size:
            return bool(self.mask >> index & 1)
        if side == B and 0 <= index < self.n - self.a_size:
            return bool(self.mask >> (self.a_size + index) & 1)
        return False

    def __iter__(self) -> Iterator[Vertex]:
        return (self._vertex(g) for g in iter_bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _same(self, other: "VertexSet") -> None:
        if (self.a_size, self.n) != (other.a_size, other.n):
            raise DomainError("vertex sets belong to different graphs")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._same(other)
        return VertexSet(self.mask | other.mask, self.a_size, self.n)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._same(other)
        return VertexSet(self.mask & other.mask, self.a_size, self.n)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._same(other)
        return VertexSet(self.mask & ~other.mask, self.a_size, self.n)

    def __eq__(self, other) -> bool:
        if isinstance(other, VertexSet):
            return (self.mask, self.a_size, self.n) == (other.mask, other.a_size, other.n)
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.mask, self.a_size, self.n))

    def issubset(self, other: "VertexSet") -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    @property
    def side_a(self) -> "VertexSet":
        return VertexSet(self.mask & ((1 << self.a_size) - 1), self.a_size, self.n)

    @property
    def side_b(self) -> "VertexSet":
        return VertexSet(self.mask >> self.a_size << self.a_size, self.a_size, self.n)

    def names(self) -> list[str]:
        return [v.name for v in self]

    def __repr__(self) -> str:
        return "{" + ",".join(self.names()) + "}"


class BipartiteGraph:
    """A bipartite graph ``G = (A, B, E)``; immutable after construction.

    ``edges`` are ``(i, j)`` pairs meaning A-vertex ``i`` is adjacent to
    B-vertex ``j`` (both 0-based).  Duplicate edges are rejected.
    """

    __slots__ = ("a_size", "b_size", "_adj_a", "_adj_b", "_nbr", "_edges", "__weakref__")

    def __init__(self, a_size: int, b_size: int, edges: Iterable[tuple[int, int]] = ()):
        if a_size < 0 or b_size < 0:
            raise DomainError("class sizes must be non-negative")
        adj_a = [0] * a_size
        adj_b = [0] * b_size
        seen = set()
        for i, j in edges:
            if not (0 <= i < a_size and 0 <= j < b_size):
                raise DomainError(f"edge ({i}, {j}) does not join A to B")
            if (i, j) in seen:
                raise DomainError(f"parallel edge a{i + 1}b{j + 1}")
            seen.add((i, j))
            adj_a[i] |= 1 << j
            adj_b[j] |= 1 << i
        self.a_size = a_size
        self.b_size = b_size
        self._adj_a = tuple(adj_a)
        self._adj_b = tuple(adj_b)
        self._edges = tuple(sorted(seen))
        nbr = [m << a_size for m in adj_a]
        nbr.extend(adj_b)
        self._nbr = tuple(nbr)

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self.a_size + self.b_size

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted ``(a_index, b_index)`` pairs."""
        return self._edges

    @property
    def adj_a(self) -> tuple[int, ...]:
        """Per A-vertex, the bitmask of its B-neighbours (bit j = B-vertex j)."""
        return self._adj_a

    @property
    def adj_b(self) -> tuple[int, ...]:
        """Per B-vertex, the bitmask of its A-neighbours."""
        return self._adj_b

    @property
    def nbr(self) -> tuple[int, ...]:
        """Neighbourhood bitmasks indexed by global id."""
        return self._nbr

    def gid(self, v: Vertex) -> int:
        side, index = v
        if side == A and 0 <= index < self.a_size:
            return index
        if side == B and 0 <= index < self.b_size:
            return self.a_size + index
        raise DomainError(f"{v!r} is not a vertex of this graph")

    def vertex(self, gid: int) -> Vertex:
        if not 0 <= gid < self.n:
            raise DomainError(f"no vertex with id {gid}")
        return Vertex(A, gid) if gid < self.a_size else Vertex(B, gid - self.a_size)

    def vertices(self) -> VertexSet:
        return VertexSet((1 << self.n) - 1, self.a_size, self.n)

    def vertex_set(self, items: Iterable = ()) -> VertexSet:
        """Build a vertex set from vertices, names like ``"a1"`` or global ids."""
        mask = 0
        for item in items:
            if isinstance(item, int):
                self.vertex(item)
                mask |= 1 << item
            elif isinstance(item, str):
                mask |= 1 << self.gid(parse_vertex_name(item))
            else:
                mask |= 1 << self.gid(item)
        return self.from_mask(mask)

    def from_mask(self, mask: int) -> VertexSet:
        return VertexSet(mask, self.a_size, self.n)

    @property
    def a_mask(self) -> int:
        return (1 << self.a_size) - 1

    @property
    def b_mask(self) -> int:
        return ((1 << self.b_size) - 1) << self.a_size

    def has_edge(self, i: int, j: int) -> bool:
        return 0 <= i < self.a_size and 0 <= j < self.b_size and bool(self._adj_a[i] >> j & 1)

    def degree(self, v: Vertex) -> int:
        return self._nbr[self.gid(v)].bit_count()

    # -- derived graphs --------------------------------------------------
    def induced(self, w: VertexSet) -> "BipartiteGraph":
        """The induced subgraph on ``w``, relabelled to consecutive indices."""
        a_keep = [v.index for v in w if v.side == A]
        b_keep = [v.index for v in w if v.side == B]
        a_pos = {x: k for k, x in enumerate(a_keep)}
        b_pos = {y: k for k, y in enumerate(b_keep)}
        edges = [(a_pos[i], b_pos[j]) for i, j in self._edges if i in a_pos and j in b_pos]
        return BipartiteGraph(len(a_keep), len(b_keep), edges)

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        return BipartiteGraph(self.a_size, self.b_size, list(self._edges) + list(extra))

    def without_edges(self, drop: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        drop = set(drop)
        return BipartiteGraph(self.a_size, self.b_size, [e for e in self._edges if e not in drop])

    def swapped(self) -> "BipartiteGraph":
        """The same graph with the roles of A and B exchanged."""
        return BipartiteGraph(self.b_size, self.a_size, [(j, i) for i, j in self._edges])

    def matrix_bytes(self) -> bytes:
        """Row-major 0/1 biadjacency matrix, prefixed by the class sizes."""
        head = bytes([self.a_size, self.b_size])
        rows = bytes(
            1 if self._adj_a[i] >> j & 1 else 0
            for i in range(self.a_size)
            for j in range(self.b_size)
        )
        return head + rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.a_size, self.b_size, self._edges) == (other.a_size, other.b_size, other._edges)

    def __hash__(self) -> int:
        return hash((self.a_size, self.b_size, self._edges))

    def __repr__(self) -> str:
        return f"BipartiteGraph(a_size={self.a_size}, b_size={self.b_size}, m={self.m})"


def parse_vertex_name(name: str) -> Vertex:
    """``"a3"`` -> ``Vertex("A", 2)``."""
    name = name.strip()
    if len(name) < 2 or name[0] not in "abAB" or not name[1:].isdigit() or int(name[1:]) < 1:
        raise DomainError(f"bad vertex name {name!r}")
    return Vertex(name[0].upper(), int(name[1:]) - 1)


def complete_bipartite(p: int, q: int) -> BipartiteGraph:
    return BipartiteGraph(p, q, [(i, j) for i in range(p) for j in range(q)])


def path_graph(n: int) -> BipartiteGraph:
    """``P_n`` laid out as ``[a1, b1, a2, b2, ...]``."""
    if n < 1:
        raise DomainError("a path needs at least one vertex")
    a_size, b_size = (n + 1) // 2, n // 2
    edges = []
    for k in range(n - 1):
        # vertex k is a_{k//2} for even k, b_{k//2} for odd k
        if k % 2 == 0:
            edges.append((k // 2, k // 2))
        else:
            edges.append(((k + 1) // 2, k // 2))
    return BipartiteGraph(a_size, b_size, edges)


def cycle_graph(length: int) -> BipartiteGraph:
    """The even cycle ``C_length`` as ``a1 b1 a2 b2 ... a_k b_k a1``."""
    if length < 4 or length % 2:
        raise DomainError("bipartite cycles have even length >= 4")
    k = length // 2
    edges = [(i, i) for i in range(k)] + [((i + 1) % k, i) for i in range(k)]
    return BipartiteGraph(k, k, edges)


# -- operations on vertex sets -------------------------------------------

def _check_owner(g: BipartiteGraph, w: VertexSet) -> None:
    if (w.a_size, w.n) != (g.a_size, g.n):
        raise DomainError("vertex set does not belong to this graph")


def neighbors(g: BipartiteGraph, v: Vertex) -> VertexSet:
    return g.from_mask(g.nbr[g.gid(v)])


def components(g: BipartiteGraph, w: VertexSet) -> list[VertexSet]:
    """Partition ``w`` into the components of ``G[w]``, ordered canonically."""
    _check_owner(g, w)
    if not w:
        raise DomainError("components of an empty vertex set are undefined")
    return [g.from_mask(c) for c in mask_components(g.nbr, w.mask)]


def induced_edge_count(g: BipartiteGraph, w: int) -> int:
    return sum((g.nbr[v] & w).bit_count() for v in iter_bits(w & g.a_mask))


def is_forest(g: BipartiteGraph, w: VertexSet) -> bool:
    """True iff ``G[w]`` is acyclic (edges = vertices - components)."""
    _check_owner(g, w)
    if not w:
        return True
    comps = mask_components(g.nbr, w.mask)
    return induced_edge_count(g, w.mask) == len(w) - len(comps)


def is_complete_bipartite(g: BipartiteGraph, w: VertexSet) -> bool:
    """Every A-vertex of ``w`` sees every B-vertex of ``w``; vacuous if a side is empty."""
    _check_owner(g, w)
    if not w:
        raise DomainError("completeness of an empty vertex set is undefined")
    return mask_is_complete_bipartite(g, w.mask)


def mask_is_complete_bipartite(g: BipartiteGraph, w: int) -> bool:
    b_part = w & g.b_mask
    for v in iter_bits(w & g.a_mask):
        if g.nbr[v] & b_part != b_part:
            return False
    return True


def leaf_peeling_order(g: BipartiteGraph, w: VertexSet) -> list[Vertex] | None:
    """An order in which every vertex has at most one neighbour among later ones.

    Such an order exists iff ``G[w]`` is a forest, so it doubles as a
    certificate of acyclicity that a third party can check in linear time.
    """
    _check_owner(g, w)
    alive = w.mask
    deg = {v: (g.nbr[v] & alive).bit_count() for v in iter_bits(alive)}
    stack = sorted((v for v, d in deg.items() if d <= 1), reverse=True)
    order = []
    while stack:
        v = stack.pop()
        if not alive >> v & 1:
            continue
        order.append(v)
        alive &= ~(1 << v)
        for u in iter_bits(g.nbr[v] & alive):
            deg[u] -= 1
            if deg[u] == 1:
                stack.append(u)
    if alive:
        return None
    return [g.vertex(v) for v in order]


def check_peeling_order(g: BipartiteGraph, order: list[Vertex]) -> bool:
    later = 0
    for v in order:
        later |= 1 << g.gid(v)
    for v in order:
        gid = g.gid(v)
        later &= ~(1 << gid)
        if (g.nbr[gid] & later).bit_count() > 1:
            return False
    return True
