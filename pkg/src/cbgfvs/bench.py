"""Runtime scaling of the exact solver on generated instances."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .fvs import ContextExplosion, SolveStats, default_context_cap, solve_fvs
from .graphio import format_graph
from .testkit.generators import gen_family

# Intervals of length at most 8 keep the atoms of convex instances growing
# with n without making the largest sizes take hours.
DEFAULT_PARAMS = {"convex": {"span": "8"}}


@dataclass
class BenchRow:
    n: int
    m: int
    fvs_size: int
    solve_ms: float
    max_contexts: int
    context_cap: int
    pmcs: int
    cap_breached: bool = False


def bench_instance(family: str, n: int, seed: int, params: dict | None = None):
    """Instance of roughly ``n`` vertices: ``a = n // 2`` and ``b = n - a`` for the two-sided families."""
    merged = dict(DEFAULT_PARAMS.get(family, {}))
    merged.update(params or {})
    if family in ("convex", "random_bipartite", "closure_enriched"):
        merged.setdefault("a", n // 2)
        merged.setdefault("b", n - n // 2)
    elif family in ("path", "tree"):
        merged.setdefault("n", n)
    elif family == "complete_bipartite":
        merged.setdefault("p", n // 2)
        merged.setdefault("q", n - n // 2)
    elif family == "cycle":
        merged.setdefault("length", max(4, n - n % 2))
    return gen_family(family, merged, seed)


def run_bench(family: str, sizes, seed: int, params: dict | None = None, cap_factor: int = 1):
    """Rows of the scaling table plus the first cap breach (instance text) if any."""
    rows = []
    breach = None
    for n in sizes:
        g = bench_instance(family, n, seed, params)
        cap = default_context_cap(g, cap_factor)
        stats = SolveStats()
        started = time.perf_counter()
        try:
            res = solve_fvs(g, cap=cap, stats=stats)
        except ContextExplosion as exc:
            elapsed = (time.perf_counter() - started) * 1000
            rows.append(BenchRow(g.n, g.m, -1, elapsed, exc.diagnostics["contexts"], cap, stats.pmcs, True))
            if breach is None:
                breach = {"n": n, "message": str(exc), "graph": format_graph(g)}
            continue
        elapsed = (time.perf_counter() - started) * 1000
        rows.append(BenchRow(g.n, g.m, res.size, elapsed, stats.max_contexts, cap, stats.pmcs))
    return rows, breach


def loglog_slope(rows) -> float | None:
    pts = [(r.n, r.solve_ms) for r in rows if r.n > 1 and r.solve_ms > 0 and not r.cap_breached]
    if len(pts) < 2:
        return None
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def write_csv(rows, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(asdict(rows[0]).keys()) if rows else ["n"])
        writer.writeheader()
        for r in rows:
            writer.writerow(asdict(r))


def plot_bench(rows, slope, path: Path, title: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax_t, ax_c) = plt.subplots(1, 2, figsize=(10, 4))
    ok = [r for r in rows if not r.cap_breached and r.solve_ms > 0]
    ns = [r.n for r in ok]
    ax_t.loglog(ns, [r.solve_ms for r in ok], "o-", color="tab:blue")
    fit_pts = [r for r in ok if r.n > 1]
    if slope is not None and len(fit_pts) >= 2:
        _, icpt = np.polyfit(np.log([r.n for r in fit_pts]), np.log([r.solve_ms for r in fit_pts]), 1)
        xs = np.array([fit_pts[0].n, fit_pts[-1].n], dtype=float)
        ax_t.loglog(xs, np.exp(icpt) * xs ** slope, "--", color="grey", label=f"fit: slope {slope:.2f}")
        ax_t.legend()
    ax_t.set_xlabel("n (vertices)")
    ax_t.set_ylabel("solve time (ms)")
    ax_t.set_title("runtime")
    ax_c.loglog([r.n for r in rows], [max(r.max_contexts, 1) for r in rows], "o-", label="max contexts per block")
    ax_c.loglog([r.n for r in rows], [r.context_cap for r in rows], "--", label="cap")
    ax_c.set_xlabel("n (vertices)")
    ax_c.set_title("DP contexts")
    ax_c.legend()
    fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def fmt_slope(slope: float | None) -> str:
    return "n/a" if slope is None or math.isnan(slope) else f"{slope:.3f}"
