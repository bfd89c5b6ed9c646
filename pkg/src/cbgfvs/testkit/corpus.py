"""Corpus specs, manifests and the exhaustive small-graph corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Iterator

import numpy as np

from ..errors import CapExceeded, DomainError, ParseError
from ..graph import BipartiteGraph
from .generators import FAMILIES, gen_family

MAX_SIDE = 5
EXHAUSTIVE_CAP = 10


def _canonical_rows(p: int, q: int) -> np.ndarray:
    """One row-multiset per class of ``p x q`` 0/1 matrices under row and column permutations.

    Rows are ``q``-bit integers.  Row order is irrelevant once rows are
    sorted, so we start from sorted row multisets and take, for each, the
    lexicographically smallest sorted image over all column permutations.
    """
    if p == 0 or q == 0:
        return np.zeros((1, p), dtype=np.int64)
    rows = np.array(list(combinations_with_replacement(range(1 << q), p)), dtype=np.int64)
    values = np.arange(1 << q)
    weights = (1 << q) ** np.arange(p - 1, -1, -1, dtype=np.int64)
    best = None
    for perm in permutations(range(q)):
        image = np.zeros(1 << q, dtype=np.int64)
        for src, dst in enumerate(perm):
            image |= ((values >> src) & 1) << dst
        mapped = np.sort(image[rows], axis=1)
        key = mapped @ weights
        best = key if best is None else np.minimum(best, key)
    keys = np.unique(best)
    out = np.zeros((len(keys), p), dtype=np.int64)
    for k in range(p - 1, -1, -1):
        out[:, k] = keys % (1 << q)
        keys = keys // (1 << q)
    return out


@lru_cache(maxsize=None)
def _shape_graphs(p: int, q: int) -> tuple[BipartiteGraph, ...]:
    out = []
    for row in _canonical_rows(p, q):
        edges = [(i, j) for i, r in enumerate(row.tolist()) for j in range(q) if r >> j & 1]
        out.append(BipartiteGraph(p, q, edges))
    return tuple(sorted(out, key=lambda g: (g.m, g.matrix_bytes())))


def exhaustive_corpus(max_vertices: int) -> list[BipartiteGraph]:
    """Every bipartite graph with ``|A|, |B| <= 5`` and at most ``max_vertices`` vertices.

    Graphs are listed once per class under relabelling within each side
    (the sides themselves are not swapped), ordered by ``(|A|, |B|, m)``.
    """
    if max_vertices > EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive corpus is capped at {EXHAUSTIVE_CAP} vertices")
    out = []
    for p in range(MAX_SIDE + 1):
        for q in range(MAX_SIDE + 1):
            if 1 <= p + q <= max_vertices:
                out.extend(_shape_graphs(p, q))
    return out


# -- specs and manifests ------------------------------------------------------

@dataclass(frozen=True)
class CorpusSpec:
    """``family key=value ... seed=N`` or ``seed=N..M``; ``exhaustive max=K`` for the full corpus."""

    family: str
    params: dict = field(default_factory=dict)
    seeds: tuple[int, int] = (0, 0)

    def __iter__(self) -> Iterator[tuple[str, BipartiteGraph]]:
        if self.family == "exhaustive":
            limit = int(self.params.get("max", EXHAUSTIVE_CAP))
            for k, g in enumerate(exhaustive_corpus(limit)):
                yield f"exhaustive#{k}", g
            return
        lo, hi = self.seeds
        tag = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        for seed in range(lo, hi + 1):
            yield f"{self.family} {tag} seed={seed}".replace("  ", " "), gen_family(self.family, self.params, seed)

    def text(self) -> str:
        parts = [self.family] + [f"{k}={v}" for k, v in sorted(self.params.items())]
        if self.family != "exhaustive":
            lo, hi = self.seeds
            parts.append(f"seed={lo}" if lo == hi else f"seed={lo}..{hi}")
        return " ".join(parts)


def parse_spec(line: str, line_no: int | None = None) -> CorpusSpec:
    tokens = line.split()
    if not tokens:
        raise ParseError("empty corpus spec", line_no)
    family, rest = tokens[0], tokens[1:]
    if family != "exhaustive" and family not in FAMILIES:
        raise ParseError(f"unknown family {family!r}", line_no, 1)
    params = {}
    seeds = (0, 0)
    column = len(family) + 2
    for tok in rest:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", line_no, column)
        key, value = tok.split("=", 1)
        if key == "seed":
            try:
                if ".." in value:
                    lo, hi = (int(x) for x in value.split("..", 1))
                else:
                    lo = hi = int(value)
            except ValueError:
                raise ParseError(f"bad seed range {value!r}", line_no, column) from None
            if hi < lo:
                raise ParseError(f"empty seed range {value!r}", line_no, column)
            seeds = (lo, hi)
        else:
            params[key] = value
        column += len(tok) + 1
    return CorpusSpec(family, params, seeds)


def parse_manifest(text: str) -> list[CorpusSpec]:
    specs = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            specs.append(parse_spec(line, no))
    if not specs:
        raise ParseError("manifest contains no corpus specs")
    return specs
