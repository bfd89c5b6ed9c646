"""Brute-force reference implementations.

Everything here works from the raw edge list with plain Python sets and
shares no code with the modules it is used to check.  Each oracle refuses
instances above a size cap instead of silently truncating its search.
"""

from __future__ import annotations

from itertools import combinations

from ..errors import CapExceeded


def _adjacency(g) -> tuple[list[str], dict[str, set[str]]]:
    names = [f"a{i + 1}" for i in range(g.a_size)] + [f"b{j + 1}" for j in range(g.b_size)]
    adj = {v: set() for v in names}
    for i, j in g.edges:
        adj[f"a{i + 1}"].add(f"b{j + 1}")
        adj[f"b{j + 1}"].add(f"a{i + 1}")
    return names, adj


def _cap(g, cap: int, what: str) -> None:
    if g.a_size + g.b_size > cap:
        raise CapExceeded(f"{what} refuses graphs with more than {cap} vertices (got {g.a_size + g.b_size})")


def _pieces(adj, verts: set[str]) -> list[set[str]]:
    seen: set[str] = set()
    out = []
    for v in sorted(verts):
        if v in seen:
            continue
        piece = {v}
        todo = [v]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w in verts and w not in piece:
                    piece.add(w)
                    todo.append(w)
        seen |= piece
        out.append(piece)
    return out


def _acyclic(adj, verts: set[str]) -> bool:
    # union-find over the induced edges; any edge closing a loop is a cycle
    parent = {v: v for v in verts}

    def root(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u in verts:
        for w in adj[u]:
            if w in verts and u < w:
                ru, rw = root(u), root(w)
                if ru == rw:
                    return False
                parent[ru] = rw
    return True


def _some_cycle(adj, verts: set[str]) -> list[str] | None:
    """A shortest cycle of the induced subgraph (BFS from every vertex)."""
    best = None
    for s in sorted(verts):
        dist = {s: 0}
        par = {s: None}
        order = [s]
        k = 0
        while k < len(order):
            u = order[k]
            k += 1
            for w in sorted(adj[u]):
                if w not in verts:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    order.append(w)
                elif par[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < len(best):
                        left, right = [], []
                        x, y = u, w
                        while x is not None:
                            left.append(x)
                            x = par[x]
                        while y is not None:
                            right.append(y)
                            y = par[y]
                        best = list(set(left) | set(right))
        if best is not None and len(best) <= 4:
            return best
    return best


def oracle_is_forest(g, members: set[str]) -> bool:
    _, adj = _adjacency(g)
    return _acyclic(adj, set(members))


def oracle_fvs_size(g, cap: int = 20) -> tuple[int, frozenset[str]]:
    """Minimum feedback vertex set by iterative deepening over cycle branching."""
    _cap(g, cap, "oracle_fvs")
    names, adj = _adjacency(g)
    everything = set(names)

    def search(alive: set[str], budget: int) -> frozenset[str] | None:
        cyc = _some_cycle(adj, alive)
        if cyc is None:
            return frozenset()
        if budget == 0:
            return None
        for v in sorted(cyc):
            sub = search(alive - {v}, budget - 1)
            if sub is not None:
                return sub | {v}
        return None

    k = 0
    while True:
        hit = search(everything, k)
        if hit is not None:
            return k, hit
        k += 1


def oracle_fvs(g, cap: int = 20):
    """The brute-force minimum as an :class:`~cbgfvs.fvs.FvsResult`."""
    from ..fvs import FvsResult  # data type only

    size, names = oracle_fvs_size(g, cap)
    return FvsResult.from_names(g, names, engine="oracle")


def oracle_all_minimum_fvs(g, cap: int = 14) -> tuple[int, list[frozenset[str]]]:
    """Every feedback vertex set of minimum size, by subset enumeration."""
    _cap(g, cap, "oracle_all_minimum_fvs")
    names, adj = _adjacency(g)
    everything = set(names)
    for k in range(len(names) + 1):
        hits = [frozenset(f) for f in combinations(names, k) if _acyclic(adj, everything - set(f))]
        if hits:
            return k, hits
    raise AssertionError("unreachable: deleting every vertex leaves a forest")


def oracle_is_fvs(g, members) -> bool:
    names, adj = _adjacency(g)
    return _acyclic(adj, set(names) - set(members))


def oracle_minimal_separators(g, cap: int = 14) -> list[frozenset[str]]:
    """All nonempty ``S`` such that ``G - S`` has two components close to ``S``."""
    _cap(g, cap, "oracle_minimal_separators")
    names, adj = _adjacency(g)
    everything = set(names)
    out = []
    for k in range(1, len(names)):
        for s in combinations(names, k):
            s = set(s)
            close = 0
            for piece in _pieces(adj, everything - s):
                touched = {u for u in s if adj[u] & piece}
                if touched == s:
                    close += 1
                    if close == 2:
                        out.append(frozenset(s))
                        break
    return out


def oracle_longest_induced_cycle(g, cap: int = 16) -> int:
    """Length of a longest induced cycle (0 if the graph is acyclic).

    Induced paths are grown from their smallest vertex; a path ``v0 .. vk``
    may only be extended by a vertex adjacent to ``vk`` and to none of
    ``v1 .. v(k-1)``.  Closing back to ``v0`` yields an induced cycle.
    """
    _cap(g, cap, "oracle_longest_induced_cycle")
    names, adj = _adjacency(g)
    rank = {v: k for k, v in enumerate(names)}
    best = 0

    def grow(path: list[str], interior: set[str]) -> None:
        nonlocal best
        start, tail = path[0], path[-1]
        for w in adj[tail]:
            if rank[w] <= rank[start] or w in path or adj[w] & interior:
                continue
            if len(path) >= 2 and start in adj[w]:
                best = max(best, len(path) + 1)
                continue
            grow(path + [w], interior | ({tail} if len(path) >= 2 else set()))

    for v in names:
        for w in adj[v]:
            if rank[w] > rank[v]:
                grow([v, w], set())
    return best
