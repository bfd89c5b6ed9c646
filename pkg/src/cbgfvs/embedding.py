"""Maximal embeddings, k-tree towers and the hyperedge decomposition forest.

Hyperedges are the distinct neighbourhoods of A-vertices, stored as bitmasks
over B (bit ``j`` is ``b(j+1)``).  Closing a chordal bipartite family under
intersection and then greedily adding unions of overlapping cliques yields a
maximal family whose members of size ``i + 1`` are the maximal cliques of an
``i``-tree ``T_i`` on ``B``.  ``T_0`` is the spanning tree formed by the
two-element members.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import DomainError, IntegrityError
from .graph import BipartiteGraph, iter_bits
from .recognition import DerivedChordalGraph, is_chordal_bipartite, simple_elimination_order


def mask_names(mask: int) -> str:
    return "{" + ",".join(f"b{j + 1}" for j in iter_bits(mask)) + "}"


def _key(mask: int) -> tuple:
    bits = tuple(iter_bits(mask))
    return (len(bits), bits)


@dataclass(frozen=True)
class Hyperedge:
    members: int
    multiplicity: int = 0

    def __post_init__(self):
        if self.members <= 0:
            raise DomainError("a hyperedge needs at least one member")
        if self.multiplicity < 0:
            raise DomainError("multiplicity cannot be negative")

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.members))

    def __repr__(self) -> str:
        return f"{mask_names(self.members)}x{self.multiplicity}"


@dataclass(frozen=True)
class HyperedgeFamily:
    """Distinct hyperedges over ``B`` plus the A-vertices with empty neighbourhoods."""

    b_size: int
    edges: tuple[Hyperedge, ...]
    free: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda h: _key(h.members))))
        masks = [h.members for h in self.edges]
        if len(set(masks)) != len(masks):
            raise DomainError("duplicate hyperedge")
        if any(m >> self.b_size for m in masks):
            raise DomainError("hyperedge member outside B")

    def masks(self) -> list[int]:
        return [h.members for h in self.edges]

    def multiplicity(self, mask: int) -> int:
        for h in self.edges:
            if h.members == mask:
                return h.multiplicity
        return 0

    def __contains__(self, mask: int) -> bool:
        return any(h.members == mask for h in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def is_closed(self) -> bool:
        masks = set(self.masks())
        return all(not (x & y) or (x & y) in masks for x, y in combinations(masks, 2))

    def as_graph(self) -> BipartiteGraph:
        """One A-vertex per distinct hyperedge (multiplicities ignored)."""
        return family_graph(self.b_size, self.masks())


def family_graph(b_size: int, masks) -> BipartiteGraph:
    edges = [(i, j) for i, m in enumerate(masks) for j in iter_bits(m)]
    return BipartiteGraph(len(masks), b_size, edges)


def hyperedges(g: BipartiteGraph) -> HyperedgeFamily:
    counts: dict[int, int] = {}
    free = []
    for i, hood in enumerate(g.adj_a):
        if hood:
            counts[hood] = counts.get(hood, 0) + 1
        else:
            free.append(i)
    return HyperedgeFamily(g.b_size, tuple(Hyperedge(m, c) for m, c in counts.items()), tuple(free))


def _close_masks(masks) -> set[int]:
    out = set(masks)
    work = list(out)
    while work:
        x = work.pop()
        for y in list(out):
            z = x & y
            if z and z not in out:
                out.add(z)
                work.append(z)
    return out


def intersection_closure(f: HyperedgeFamily) -> HyperedgeFamily:
    """Smallest superset closed under nonempty pairwise intersection.

    Added members get multiplicity 0.  Raises :class:`IntegrityError` when
    the closed family is not chordal bipartite, which can only happen if the
    input was not.
    """
    closed = _close_masks(f.masks())
    mult = {h.members: h.multiplicity for h in f.edges}
    out = HyperedgeFamily(f.b_size, tuple(Hyperedge(m, mult.get(m, 0)) for m in closed), f.free)
    if not is_chordal_bipartite(out.as_graph()):
        raise IntegrityError("intersection closure is not chordal bipartite; was the input?")
    return out


def closure_bound(b_size: int) -> int:
    return (b_size + 1) * b_size // 2


def embedded_graph(g: BipartiteGraph, closed: HyperedgeFamily) -> BipartiteGraph:
    """``g`` plus one new A-vertex for every zero-multiplicity member of ``closed``."""
    extra = [h.members for h in closed.edges if h.multiplicity == 0]
    edges = list(g.edges)
    for k, m in enumerate(extra):
        edges.extend((g.a_size + k, j) for j in iter_bits(m))
    return BipartiteGraph(g.a_size + len(extra), g.b_size, edges)


def lemma_disjoint_violations(f: HyperedgeFamily) -> list[tuple[int, int, int]]:
    """Triples ``(R, H1, H2)`` where H1, H2 meet R in distinct single points yet intersect."""
    masks = f.masks()
    bad = []
    for r in masks:
        touching = [h for h in masks if h != r and (h & r).bit_count() == 1]
        for h1, h2 in combinations(touching, 2):
            if h1 & r != h2 & r and h1 & h2:
                bad.append((r, h1, h2))
    return bad


# -- k-tree tower ----------------------------------------------------------

@dataclass(frozen=True)
class KTreeTower:
    """``levels[i]`` are the ``(i+1)``-cliques of ``T_i``; ``links[i]`` the clique tree on them.

    A link ``(p, q)`` joins ``levels[i][p]`` and ``levels[i][q]`` whose union
    is a clique one level up (or, for the top level, a padding set).
    ``spanning`` lists the edges of ``T_0`` (two-element sets, equal to
    ``levels[1]`` when that level exists) and ``synthetic`` holds every
    clique that is not a member of the closed family.
    """

    b_size: int
    omega: int
    levels: tuple[tuple[int, ...], ...]
    links: tuple[tuple[tuple[int, int], ...], ...]
    spanning: tuple[int, ...] = ()
    synthetic: frozenset[int] = frozenset()

    def tree_edges(self, i: int) -> set[frozenset[int]]:
        """Edges of ``T_i`` as pairs of B-indices."""
        cliques = self.spanning if i == 0 else self.levels[i]
        out = set()
        for k in cliques:
            for u, v in combinations(iter_bits(k), 2):
                out.add(frozenset((u, v)))
        return out

    def graph(self, i: int) -> DerivedChordalGraph:
        nbr = [0] * self.b_size
        for e in self.tree_edges(i):
            u, v = tuple(e)
            nbr[u] |= 1 << v
            nbr[v] |= 1 << u
        return DerivedChordalGraph(tuple(nbr), tuple(f"b{j + 1}" for j in range(self.b_size)))

    def all_cliques(self) -> list[int]:
        return [k for lvl in self.levels for k in lvl]


def _omega(f: HyperedgeFamily) -> int:
    return max((h.size for h in f.edges), default=1) - 1


def _link_pairs(lower: list[int], upper: set[int], lower_size: int) -> list[tuple[int, int]]:
    pairs = []
    for p, q in combinations(range(len(lower)), 2):
        x, y = lower[p], lower[q]
        if (x & y).bit_count() == lower_size - 1 and (x | y) in upper:
            pairs.append((p, q))
    return pairs


def _totally_balanced(masks, nb: int) -> bool:
    """Whether the family's incidence matrix is totally balanced.

    Equivalent to ``is_chordal_bipartite(family_graph(nb, masks))`` but much
    cheaper on wide families: alternate lexical row and column sorts until
    stable (a doubly lexical ordering), then look for the forbidden 2x2
    submatrix ``[[0, 1], [1, 1]]``.
    """
    rows = list(masks)
    ri, ci = list(range(len(rows))), list(range(nb))
    while True:
        nr = sorted(ri, key=lambda i: [rows[i] >> c & 1 for c in ci], reverse=True)
        nc = sorted(ci, key=lambda j: [rows[i] >> j & 1 for i in nr], reverse=True)
        if nr == ri and nc == ci:
            break
        ri, ci = nr, nc
    ordered = [sum(1 << p for p, c in enumerate(ci) if rows[i] >> c & 1) for i in ri]
    for x, y in combinations(range(len(ordered)), 2):
        mx, my = ordered[x], ordered[y]
        common = mx & my
        if common and my & ~mx & ((1 << (common.bit_length() - 1)) - 1):
            return False
    return True


def maximal_family(f: HyperedgeFamily, top: int) -> set[int]:
    """Extend the closed family until level ``s-1`` holds ``|B| - s + 1`` sets of size ``s``.

    Sizes ``1..top`` are filled in order.  Candidates of size ``s`` are
    unions of two size ``s-1`` members meeting in ``s-2`` points, tried in
    order of (span, members); a candidate is kept when the family stays
    closed and chordal bipartite.
    """
    nb = f.b_size
    fam = set(f.masks()) | {1 << j for j in range(nb)}
    for s in range(2, top + 1):
        need = nb - s + 1
        have = {m for m in fam if m.bit_count() == s}
        lower = sorted((m for m in fam if m.bit_count() == s - 1), key=_key)
        cands = set()
        for x, y in combinations(lower, 2):
            if (x & y).bit_count() == s - 2:
                cands.add(x | y)
        cands -= have
        order = sorted(cands, key=lambda m: (m.bit_length() - (m & -m).bit_length(), _key(m)))
        for c in order:
            if len(have) >= need:
                break
            trial = fam | {c}
            if any(c & m and (c & m) not in trial for m in fam):
                continue
            if _totally_balanced(trial, nb):
                fam = trial
                have.add(c)
        if len(have) != need:
            raise IntegrityError(f"tower construction stuck at clique size {s}: {len(have)} of {need}")
    return fam


def build_tower(f: HyperedgeFamily, g: BipartiteGraph | None = None) -> KTreeTower:
    """Tower ``T_0..T_omega`` for a closed chordal bipartite family."""
    if not f.is_closed():
        raise DomainError("build_tower needs an intersection-closed family")
    nb = f.b_size
    if nb == 0:
        return KTreeTower(0, 0, ((),), ((),))
    # T_0 needs the two-element sets even when no hyperedge is that large
    omega = _omega(f)
    top = min(max(omega + 2, 2), nb)
    fam = maximal_family(f, top)
    levels = []
    for i in range(omega + 1):
        levels.append(tuple(sorted((m for m in fam if m.bit_count() == i + 1), key=_key)))
    links = []
    for i in range(omega + 1):
        upper = {m for m in fam if m.bit_count() == i + 2}
        links.append(tuple(_link_pairs(list(levels[i]), upper, i + 1)))
    spanning = tuple(sorted((m for m in fam if m.bit_count() == 2), key=_key))
    synthetic = frozenset(k for lvl in levels for k in lvl if k not in f)
    tower = KTreeTower(nb, omega, tuple(levels), tuple(links), spanning, synthetic)
    problems = verify_tower(tower, f, g)
    if problems:
        raise IntegrityError("tower verification failed: " + "; ".join(problems))
    return tower


def _is_tree(nodes: int, edges) -> bool:
    if len(edges) != nodes - 1:
        return False
    parent = list(range(nodes))

    def root(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for p, q in edges:
        rp, rq = root(p), root(q)
        if rp == rq:
            return False
        parent[rp] = rq
    return True


def _connected_in(nbr, mask: int) -> bool:
    start = mask & -mask
    seen = frontier = start
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= nbr[v]
        frontier = grow & mask & ~seen
        seen |= frontier
    return seen == mask


def is_k_tree(nbr, alive: int, k: int) -> bool:
    """Peel simplicial vertices of degree ``k`` until a ``(k+1)``-clique remains."""
    if alive.bit_count() < k + 1:
        return False
    while alive.bit_count() > k + 1:
        for v in iter_bits(alive):
            hood = nbr[v] & alive
            if hood.bit_count() == k and all(hood & ~nbr[u] & ~(1 << u) == 0 for u in iter_bits(hood)):
                alive &= ~(1 << v)
                break
        else:
            return False
    return all(alive & ~nbr[u] & ~(1 << u) == 0 for u in iter_bits(alive))


def verify_tower(t: KTreeTower, f: HyperedgeFamily, g: BipartiteGraph | None = None) -> list[str]:
    """Every way ``t`` fails the tower clauses, as readable strings (empty when valid)."""
    out = []
    nb = t.b_size
    if nb == 0:
        return out
    full = (1 << nb) - 1
    if len(t.levels) != t.omega + 1:
        out.append(f"tower has {len(t.levels)} levels, expected {t.omega + 1}")
        return out
    for i, lvl in enumerate(t.levels):
        if len(lvl) != nb - i:
            out.append(f"clique count: T_{i} has {len(lvl)} maximal cliques, expected {nb - i}")
        if any(k.bit_count() != i + 1 for k in lvl):
            out.append(f"clique size: T_{i} has a clique that is not of size {i + 1}")
        if len(set(lvl)) != len(lvl):
            out.append(f"clique size: T_{i} repeats a clique")
        if not _is_tree(len(lvl), t.links[i]):
            out.append(f"clique tree: links on level {i} do not form a spanning tree")
        for p, q in t.links[i]:
            x, y = lvl[p], lvl[q]
            if (x & y).bit_count() != i:
                out.append(f"clique tree: linked cliques {mask_names(x)} {mask_names(y)} do not share {i} vertices")

    # clause 1: T_0 spans B as a tree and every hyperedge is a subtree
    t0 = t.graph(0)
    edges0 = t.tree_edges(0)
    if t.omega >= 1 and set(t.spanning) != set(t.levels[1]):
        out.append("clause 1: T_0 differs from the edges of T_1")
    if len(edges0) != nb - 1 or not _connected_in(t0.nbr, full):
        out.append("clause 1: T_0 is not a spanning tree of B")
    else:
        for h in f.edges:
            if not _connected_in(t0.nbr, h.members):
                tag = "" if h.multiplicity else " (closure row)"
                out.append(f"clause 1: {mask_names(h.members)} is not a subtree of T_0{tag}")

    # clause 2: i-trees spanning B, strongly chordal
    for i in range(1, t.omega + 1):
        ti = t.graph(i)
        if not is_k_tree(ti.nbr, full, i):
            out.append(f"clause 2: T_{i} is not an {i}-tree on B")
        elif simple_elimination_order(ti) is None:
            out.append(f"clause 2: T_{i} is not strongly chordal")
        else:
            covered = 0
            for k in t.levels[i]:
                covered |= k
                if any(k & ~ti.nbr[u] & ~(1 << u) for u in iter_bits(k)):
                    out.append(f"clause 2: {mask_names(k)} is not a clique of T_{i}")
            if covered != full:
                out.append(f"clause 2: T_{i} does not span B")

    # clause 3: each clique is the union of two cliques one level down
    for i in range(1, t.omega + 1):
        lower = set(t.levels[i - 1])
        for k in t.levels[i]:
            halves = [k & ~(1 << v) for v in iter_bits(k)]
            if sum(h in lower for h in halves) < 2:
                out.append(f"clause 3: {mask_names(k)} in T_{i} is not the union of two cliques of T_{i - 1}")

    # clause 4: hyperedges appear as maximal cliques at their level
    for h in f.edges:
        i = h.size - 1
        if i > t.omega or h.members not in t.levels[i]:
            out.append(f"clause 4: {mask_names(h.members)} is not a maximal clique of T_{i}")
    if g is not None:
        for i, hood in enumerate(g.adj_a):
            if hood and hood not in f:
                out.append(f"clause 4: N(a{i + 1}) is missing from the family")
    return out


# -- k-trees with a decomposition tree and colouring ------------------------

@dataclass
class KTree:
    """A ``k``-tree given by its construction: the root path and later attachments.

    ``order`` lists vertices in construction order; the first ``k + 1`` form
    the root clique, each one the child of the previous in the decomposition
    tree.  ``parent`` is the decomposition-tree parent and ``color`` the
    proper ``(k+1)``-colouring the construction induces (colours ``1..k+1``).
    """

    k: int
    order: list[int]
    nbr: dict[int, int]
    parent: dict[int, int | None]
    color: dict[int, int]
    labels: dict[int, str] = field(default_factory=dict)

    def edges(self) -> set[frozenset[int]]:
        return {frozenset((u, v)) for u in self.order for v in iter_bits(self.nbr[u]) if u < v}

    def ancestors(self, v: int) -> list[int]:
        path = []
        while v is not None:
            path.append(v)
            v = self.parent[v]
        return path

    def vertex_mask(self) -> int:
        m = 0
        for v in self.order:
            m |= 1 << v
        return m

    def satisfies_recursion(self) -> bool:
        """``order`` starts with a ``(k+1)``-clique and then adds vertices onto ``k``-cliques."""
        if len(self.order) < self.k + 1:
            return False
        seen = 0
        for pos, v in enumerate(self.order):
            back = self.nbr[v] & seen
            if pos <= self.k:
                if back != seen:
                    return False
            elif back.bit_count() != self.k or any(back & ~self.nbr[u] & ~(1 << u) for u in iter_bits(back)):
                return False
            seen |= 1 << v
        return all(self.nbr[v] & ~seen == 0 for v in self.order)

    def is_proper_coloring(self) -> bool:
        return all(self.color[u] != self.color[v] for u in self.order for v in iter_bits(self.nbr[u]))


def ktree_from_level(t: KTreeTower, i: int) -> KTree:
    """The ``i``-tree ``T_i`` (``i >= 1``) with the decomposition tree from its clique tree."""
    if not 1 <= i <= t.omega:
        raise DomainError(f"level {i} is not an i-tree level of this tower")
    cliques = t.levels[i]
    adj: dict[int, list[int]] = {p: [] for p in range(len(cliques))}
    for p, q in t.links[i]:
        adj[p].append(q)
        adj[q].append(p)
    root = cliques[0]
    order = list(iter_bits(root))
    parent: dict[int, int | None] = {}
    color: dict[int, int] = {}
    for pos, v in enumerate(order):
        parent[v] = order[pos - 1] if pos else None
        color[v] = pos + 1
    intro = {0: order[-1]}
    queue = deque([0])
    while queue:
        p = queue.popleft()
        for q in sorted(adj[p]):
            if q in intro:
                continue
            new = cliques[q] & ~cliques[p]
            old = cliques[p] & ~cliques[q]
            v = new.bit_length() - 1
            w = old.bit_length() - 1
            if v in color:
                raise IntegrityError(f"b{v + 1} introduced twice while walking T_{i}")
            color[v] = color[w]
            parent[v] = intro[p]
            intro[q] = v
            order.append(v)
            queue.append(q)
    graph = t.graph(i)
    nbr = {v: graph.nbr[v] for v in order}
    return KTree(i, order, nbr, parent, color, {v: f"b{v + 1}" for v in order})


def color_subset_subtree(kt: KTree, colors) -> KTree:
    """Restrict a coloured ``k``-tree to the vertices whose colour lies in ``colors``.

    Each kept vertex hangs below its deepest proper ancestor with a kept
    colour and is joined to the deepest ancestor of every other kept colour.
    """
    keep = set(colors)
    if not keep:
        raise DomainError("colour subset must be nonempty")
    if not keep <= set(range(1, kt.k + 2)):
        raise DomainError(f"colours must lie in 1..{kt.k + 1}")
    k = len(keep) - 1
    order = [v for v in kt.order if kt.color[v] in keep]
    parent: dict[int, int | None] = {}
    nbr = {v: 0 for v in order}
    for v in order:
        up = kt.ancestors(v)[1:]
        parent[v] = next((u for u in up if kt.color[u] in keep), None)
        nearest: dict[int, int] = {}
        for u in up:
            c = kt.color[u]
            if c in keep and c != kt.color[v] and c not in nearest:
                nearest[c] = u
        for u in nearest.values():
            nbr[v] |= 1 << u
            nbr[u] |= 1 << v
    sub = KTree(k, order, nbr, parent, {v: kt.color[v] for v in order}, {v: kt.labels.get(v, str(v)) for v in order})
    mask = sub.vertex_mask()
    for v in order:
        if nbr[v] != kt.nbr[v] & mask:
            raise IntegrityError("colour subset rule disagrees with the induced subgraph")
    if not sub.satisfies_recursion():
        raise IntegrityError(f"colour subset is not a {k}-tree")
    return sub


# -- decomposition forest ---------------------------------------------------

@dataclass(frozen=True)
class DecompositionForest:
    """Closed-family hyperedges arranged as a rooted forest.

    The full tower forms one rooted tree: the top level's clique tree is
    rooted at its first clique, and every lower clique hangs below the
    clique it forms with its clique-tree parent (the root of each lower
    level hangs below the root one level up).  Restricting that tree to the
    members of the closed family gives this forest.
    """

    family: HyperedgeFamily
    parent: dict[int, int | None]
    a_of: dict[int, tuple[int, ...]]

    @property
    def nodes(self) -> list[int]:
        return self.family.masks()

    def roots(self) -> list[int]:
        return [c for c in self.nodes if self.parent[c] is None]

    def children(self, c: int) -> list[int]:
        return sorted((d for d in self.nodes if self.parent[d] == c), key=_key)

    def subtree(self, c: int) -> list[int]:
        out = [c]
        k = 0
        while k < len(out):
            out.extend(self.children(out[k]))
            k += 1
        return out

    def G_C(self, c: int) -> list[int]:
        return sorted(self.subtree(c), key=_key)

    def A_C(self, c: int) -> list[int]:
        return sorted(x for d in self.subtree(c) for x in self.a_of.get(d, ()))

    def outline(self) -> str:
        lines = []

        def walk(c, depth):
            mult = self.family.multiplicity(c)
            tag = f"x{mult}" if mult else "closure"
            lines.append("  " * depth + f"{mask_names(c)} {tag}")
            for d in self.children(c):
                walk(d, depth + 1)

        for r in sorted(self.roots(), key=lambda m: (-m.bit_count(), _key(m))):
            walk(r, 0)
        return "\n".join(lines)


def _pyramid_parents(t: KTreeTower) -> dict[int, int | None]:
    parent: dict[int, int | None] = {}
    top = t.omega
    roots: list[int] = [0] * (top + 1)
    roots[top] = t.levels[top][0]
    for i in range(top - 1, -1, -1):
        up = roots[i + 1]
        lvl = t.levels[i]
        halves = sorted((k for k in lvl if k & up == k), key=_key)
        # the two halves of the root above are linked in the clique tree
        roots[i] = halves[0]
    for i in range(top + 1):
        lvl = t.levels[i]
        adj: dict[int, list[int]] = {p: [] for p in range(len(lvl))}
        for p, q in t.links[i]:
            adj[p].append(q)
            adj[q].append(p)
        start = lvl.index(roots[i])
        tree_parent = {start: None}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in sorted(adj[p]):
                if q not in tree_parent:
                    tree_parent[q] = p
                    queue.append(q)
        for p, pp in tree_parent.items():
            k = lvl[p]
            if i == top:
                parent[k] = None if pp is None else lvl[pp]
            elif pp is None:
                parent[k] = roots[i + 1]
            else:
                parent[k] = k | lvl[pp]
    return parent


def decomposition_forest(t: KTreeTower, f: HyperedgeFamily, g: BipartiteGraph) -> DecompositionForest:
    members = set(f.masks())
    parent: dict[int, int | None] = {}
    if t.b_size:
        full = _pyramid_parents(t)
        for c in members:
            if c not in full:
                raise IntegrityError(f"hyperedge {mask_names(c)} is not a clique of the tower")
            up = full[c]
            while up is not None and up not in members:
                up = full[up]
            parent[c] = up
    a_of: dict[int, list[int]] = {}
    for i, hood in enumerate(g.adj_a):
        if hood:
            if hood not in members:
                raise IntegrityError(f"N(a{i + 1}) is not a node of the forest")
            a_of.setdefault(hood, []).append(i)
    return DecompositionForest(f, parent, {c: tuple(v) for c, v in a_of.items()})


def embed(g: BipartiteGraph) -> tuple[HyperedgeFamily, KTreeTower, DecompositionForest]:
    """Closure, tower and decomposition forest of a chordal bipartite graph."""
    closed = intersection_closure(hyperedges(g))
    tower = build_tower(closed, g)
    return closed, tower, decomposition_forest(tower, closed, g)
