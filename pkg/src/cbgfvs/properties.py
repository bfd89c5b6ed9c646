"""Per-instance property checks grouped into suites.

Each check takes a graph and a :class:`CheckOptions` and returns a list of
violation messages.  An empty list is a pass; :data:`SKIP` marks an
instance the property does not apply to (wrong class, over an oracle cap).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .embedding import (
    closure_bound,
    color_subset_subtree,
    decomposition_forest,
    embedded_graph,
    hyperedges,
    intersection_closure,
    ktree_from_level,
    lemma_disjoint_violations,
    build_tower,
    verify_tower,
    mask_names,
)
from .errors import CbgError
from .fvs import (
    _strictly_below,
    build_G_B,
    exchange_pairs,
    solve_fvs,
    threshold_witness,
)
from .graph import BipartiteGraph, is_forest, mask_is_complete_bipartite
from .recognition import (
    _bisimplicial,
    build_G_A,
    build_G_B_star,
    edge_name,
    is_chordal_bipartite,
    is_chordal_bipartite_via_GA,
    is_simple_vertex,
    perfect_edge_elimination_order,
    simple_elimination_order,
)
from .separators import (
    _close_components,
    check_lemma1,
    enumerate_separator_masks,
    witness_adjacent_pair,
    witness_bisimplicial_in_component,
    witness_full_vertex,
)
from .testkit.oracles import (
    oracle_all_minimum_fvs,
    oracle_fvs_size,
    oracle_is_fvs,
    oracle_longest_induced_cycle,
    oracle_minimal_separators,
)

SKIP = None


@dataclass
class CheckOptions:
    max_oracle_n: int = 20
    cycle_oracle_n: int = 16
    separator_oracle_n: int = 12
    threshold_n: int = 12
    seed: int = 0


def _cb(g: BipartiteGraph) -> bool:
    return is_chordal_bipartite(g)


# -- recognition ------------------------------------------------------------

def prop_recognition_agree(g, opt):
    greedy = is_chordal_bipartite(g)
    via_ga = is_chordal_bipartite_via_GA(g)
    out = []
    if greedy != via_ga:
        out.append(f"greedy={greedy} but G_A route={via_ga}")
    if g.n <= opt.cycle_oracle_n:
        oracle = oracle_longest_induced_cycle(g, cap=opt.cycle_oracle_n) <= 4
        if oracle != greedy:
            out.append(f"greedy={greedy} but longest induced cycle says {oracle}")
    return out


def prop_recognition_certificate(g, opt):
    order = perfect_edge_elimination_order(g)
    if order is None:
        return SKIP
    if sorted(order) != sorted(g.edges):
        return ["ordering is not a permutation of E"]
    adj_a, adj_b = list(g.adj_a), list(g.adj_b)
    for i, j in order:
        if not _bisimplicial(adj_a, adj_b, i, j):
            return [f"{edge_name((i, j))} is not bisimplicial when removed"]
        adj_a[i] &= ~(1 << j)
        adj_b[j] &= ~(1 << i)
    return []


def prop_recognition_g_b_star(g, opt):
    if not _cb(g):
        return SKIP
    out = []
    if simple_elimination_order(build_G_B_star(g)) is None:
        out.append("G_B* is not strongly chordal")
    if g.a_size and simple_elimination_order(build_G_B_star(g), alive=g.a_mask | g.b_mask) is None:
        out.append("no simple elimination ordering of G_B*")
    return out


def prop_recognition_simple_in_b(g, opt):
    if not _cb(g) or not g.b_size:
        return SKIP
    h = build_G_A(g)
    if not any(is_simple_vertex(h, v) for v in range(g.a_size, g.n)):
        return ["G_A has no simple vertex in B"]
    return []


# -- separators -------------------------------------------------------------

def prop_separators_oracle(g, opt):
    if g.n > opt.separator_oracle_n:
        return SKIP
    mine = {frozenset(g.vertex(v).name for v in _bits(s)) for s in enumerate_separator_masks(g.nbr, g.vertices().mask)}
    theirs = set(oracle_minimal_separators(g, cap=opt.separator_oracle_n))
    out = []
    for s in sorted(mine - theirs, key=sorted):
        out.append(f"extra separator {sorted(s)}")
    for s in sorted(theirs - mine, key=sorted):
        out.append(f"missing separator {sorted(s)}")
    return out


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _separators_with_close(g):
    full = g.vertices().mask
    for s in enumerate_separator_masks(g.nbr, full):
        comps, flags = _close_components(g.nbr, full, s)
        yield g.from_mask(s), [g.from_mask(c) for c, ok in zip(comps, flags) if ok]


def prop_lemma1(g, opt):
    if not _cb(g):
        return SKIP
    return [f"{s!r} is not complete bipartite" for s, _ in _separators_with_close(g) if not check_lemma1(g, s)]


def prop_full_vertex(g, opt):
    if not _cb(g):
        return SKIP
    out = []
    for s, close in _separators_with_close(g):
        for side, part in (("A", s.mask & g.a_mask), ("B", s.mask & g.b_mask)):
            if not part:
                continue
            for c in close:
                if witness_full_vertex(g, s, c, side) is None:
                    out.append(f"no vertex of {c!r} sees exactly S n {side} for S={s!r}")
    return out


def prop_bisimplicial_in_component(g, opt):
    if not _cb(g):
        return SKIP
    out = []
    for s, close in _separators_with_close(g):
        for c in close:
            if not any(g.nbr[v] & c.mask for v in _bits(c.mask & g.a_mask)):
                continue
            if witness_bisimplicial_in_component(g, s, c) is None:
                out.append(f"no bisimplicial edge inside {c!r} for S={s!r}")
    return out


def prop_adjacent_pair(g, opt):
    if not _cb(g):
        return SKIP
    out = []
    for s, close in _separators_with_close(g):
        if not (s.mask & g.a_mask and s.mask & g.b_mask):
            continue
        for c in close:
            if witness_adjacent_pair(g, s, c) is None:
                out.append(f"no adjacent pair in {c!r} for S={s!r}")
    return out


def prop_separator_count(g, opt):
    if not _cb(g):
        return SKIP
    count = len(enumerate_separator_masks(g.nbr, g.vertices().mask))
    if count > g.n + g.m:
        return [f"{count} minimal separators exceed n+m={g.n + g.m}"]
    return []


# -- embedding ----------------------------------------------------------------

def prop_closure(g, opt):
    if not _cb(g):
        return SKIP
    f = hyperedges(g)
    closed = intersection_closure(f)
    out = []
    if set(intersection_closure(closed).masks()) != set(closed.masks()):
        out.append("closure is not idempotent")
    if not set(f.masks()) <= set(closed.masks()):
        out.append("closure lost a hyperedge")
    if len(closed) > closure_bound(g.b_size):
        out.append(f"closure has {len(closed)} members, bound {closure_bound(g.b_size)}")
    if not is_chordal_bipartite(embedded_graph(g, closed)):
        out.append("embedded graph is not chordal bipartite")
    return out


def prop_tower(g, opt):
    if not _cb(g):
        return SKIP
    closed = intersection_closure(hyperedges(g))
    try:
        tower = build_tower(closed, g)
    except CbgError as exc:
        return [str(exc)]
    return verify_tower(tower, closed, g)


def prop_color_subsets(g, opt):
    if not _cb(g):
        return SKIP
    closed = intersection_closure(hyperedges(g))
    tower = build_tower(closed, g)
    out = []
    for i in range(1, tower.omega + 1):
        kt = ktree_from_level(tower, i)
        if not kt.satisfies_recursion() or not kt.is_proper_coloring():
            out.append(f"T_{i} walk is not a coloured {i}-tree")
            continue
        for r in range(1, i + 2):
            for colors in combinations(range(1, i + 2), r):
                try:
                    color_subset_subtree(kt, colors)
                except CbgError as exc:
                    out.append(f"T_{i} colours {colors}: {exc}")
    return out


def prop_lemma_disjoint(g, opt):
    if not _cb(g):
        return SKIP
    closed = intersection_closure(hyperedges(g))
    return [f"R={mask_names(r)} H1={mask_names(a)} H2={mask_names(b)} intersect"
            for r, a, b in lemma_disjoint_violations(closed)]


def prop_forest_accounting(g, opt):
    if not _cb(g):
        return SKIP
    closed = intersection_closure(hyperedges(g))
    tower = build_tower(closed, g)
    forest = decomposition_forest(tower, closed, g)
    out = []
    seen = []
    for r in forest.roots():
        seen.extend(forest.subtree(r))
    if sorted(seen) != sorted(closed.masks()):
        out.append("forest does not cover every hyperedge exactly once")
    covered = sorted(x for r in forest.roots() for x in forest.A_C(r))
    expected = [i for i in range(g.a_size) if g.adj_a[i]]
    if covered != expected:
        out.append(f"roots account for A-vertices {covered}, expected {expected}")
    return out


# -- fvs ----------------------------------------------------------------------

def prop_fvs_exact(g, opt):
    if not _cb(g) or g.n > opt.max_oracle_n:
        return SKIP
    res = solve_fvs(g)
    size, _ = oracle_fvs_size(g, cap=opt.max_oracle_n)
    out = []
    if res.size != size:
        out.append(f"dp size {res.size} but oracle size {size}")
    if not oracle_is_fvs(g, res.names()):
        out.append("dp set leaves a cycle (oracle check)")
    return out


def prop_fvs_certificate(g, opt):
    if not _cb(g):
        return SKIP
    res = solve_fvs(g)
    out = []
    if not is_forest(g, g.vertices() - res.fvs):
        out.append("complement of F is not a forest")
    if not res.certified:
        out.append("no peeling certificate")
    again = solve_fvs(g)
    if again.fvs != res.fvs:
        out.append("solver is not deterministic")
    return out


def prop_lemma_basic(g, opt):
    """Any FVS restricted to a complete bipartite minimal separator leaves a star."""
    if not _cb(g):
        return SKIP
    res = solve_fvs(g)
    out = []
    for s in enumerate_separator_masks(g.nbr, g.vertices().mask):
        if not mask_is_complete_bipartite(g, s):
            continue
        left = s & ~res.fvs.mask
        if (left & g.a_mask).bit_count() > 1 and (left & g.b_mask).bit_count() > 1:
            out.append(f"F leaves two vertices on each side of {g.from_mask(s)!r}")
    return out


def prop_exchange(g, opt, trials: int = 1):
    if not _cb(g) or g.n > opt.max_oracle_n:
        return SKIP
    from .fvs import exchange_reduce

    _, names = oracle_fvs_size(g, cap=opt.max_oracle_n)
    f = g.vertex_set(names)
    pairs = [(x, y) for x, y in exchange_pairs(g, f) if x < g.a_size]
    if not pairs:
        return SKIP
    rng = random.Random(f"exchange:{opt.seed}:{g.matrix_bytes().hex()}")
    out = []
    for _ in range(trials):
        x, y = rng.choice(pairs)
        swapped = g.from_mask((f.mask & ~(1 << x)) | (1 << y))
        if not oracle_is_fvs(g, swapped.names()):
            out.append(f"swapping {g.vertex(x).name} for {g.vertex(y).name} breaks {sorted(names)}")
    first = exchange_reduce(g, f)
    if len(first) != len(f) or not oracle_is_fvs(g, first.names()):
        out.append("exchange_reduce broke the feedback vertex set")
    return out


def _threshold(g, opt, end):
    if not _cb(g) or g.n > opt.threshold_n:
        return SKIP
    h = build_G_B(g)
    simple = [x for x in range(g.a_size) if g.adj_a[x] and is_simple_vertex(h, x)]
    if not simple:
        return SKIP
    _, sets = oracle_all_minimum_fvs(g, cap=opt.threshold_n)
    out = []
    for x in simple:
        if threshold_witness(g, g.vertex(x), sets, deleted_end=end) is None:
            out.append(f"no minimum FVS meets N(a{x + 1}) in a {end}")
    return out


def prop_threshold_prefix(g, opt):
    return _threshold(g, opt, "prefix")


def prop_threshold_suffix(g, opt):
    return _threshold(g, opt, "suffix")


Check = Callable[[BipartiteGraph, CheckOptions], "list[str] | None"]

SUITES: dict[str, list[tuple[str, Check]]] = {
    "recognition": [
        ("recognition.agree", prop_recognition_agree),
        ("recognition.certificate", prop_recognition_certificate),
        ("recognition.g_b_star", prop_recognition_g_b_star),
        ("recognition.simple_in_b", prop_recognition_simple_in_b),
    ],
    "separators": [
        ("separators.oracle", prop_separators_oracle),
        ("separators.lemma1", prop_lemma1),
        ("separators.full_vertex", prop_full_vertex),
        ("separators.bisimplicial", prop_bisimplicial_in_component),
        ("separators.adjacent_pair", prop_adjacent_pair),
        ("separators.count", prop_separator_count),
    ],
    "embedding": [
        ("embedding.closure", prop_closure),
        ("embedding.tower", prop_tower),
        ("embedding.color_subsets", prop_color_subsets),
        ("embedding.lemma_disjoint", prop_lemma_disjoint),
        ("embedding.forest", prop_forest_accounting),
    ],
    "fvs": [
        ("fvs.exact", prop_fvs_exact),
        ("fvs.certificate", prop_fvs_certificate),
        ("fvs.lemma_basic", prop_lemma_basic),
        ("fvs.exchange", prop_exchange),
        ("fvs.threshold_prefix", prop_threshold_prefix),
        ("fvs.threshold_suffix", prop_threshold_suffix),
    ],
}


def suite_checks(suite: str) -> list[tuple[str, Check]]:
    if suite == "all":
        return [c for name in SUITES for c in SUITES[name]]
    if suite not in SUITES:
        from .errors import DomainError

        raise DomainError(f"unknown suite {suite!r}; choose all or {', '.join(SUITES)}")
    return SUITES[suite]


@dataclass
class PropertyTally:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    first_failure: dict | None = None


def run_checks(instances, checks, opt: CheckOptions, graph_text=None) -> dict[str, PropertyTally]:
    """Run every check on every ``(ident, graph)`` and tally outcomes per property."""
    tally = {name: PropertyTally() for name, _ in checks}
    for ident, g in instances:
        for name, fn in checks:
            t = tally[name]
            try:
                result = fn(g, opt)
            except CbgError as exc:
                result = [f"{type(exc).__name__}: {exc}"]
            if result is SKIP:
                t.skipped += 1
            elif result:
                t.failed += 1
                if t.first_failure is None:
                    t.first_failure = {
                        "instance": ident,
                        "messages": result[:5],
                        "graph": graph_text(g) if graph_text else repr(g),
                    }
            else:
                t.passed += 1
    return tally
