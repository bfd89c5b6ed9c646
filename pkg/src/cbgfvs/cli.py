"""Command line interface.

Every command prints one JSON object (or ``--format text`` lines) on
standard output and diagnostics on standard error.  Reports follow
``report.schema.json`` shipped with the package.  Exit codes: 0 ok,
1 property failures in ``check`` or ``separators --verify``, 2 input
error, 3 graph-class precondition, 4 cap refusal, 5 internal integrity
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import traceback
from pathlib import Path

from . import __version__
from .errors import CbgError, DomainError, IntegrityError, ParseError
from .graph import BipartiteGraph, iter_bits
from .graphio import format_graph, parse_graph

SEED_ENV = "CBG_FVS_SEED"


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not UTF-8 text") from None


def _load(path: str) -> BipartiteGraph:
    return parse_graph(_read_text(path))


def _kv(tokens) -> dict:
    params = {}
    for tok in tokens:
        if "=" not in tok:
            raise DomainError(f"expected key=value, got {tok!r}")
        key, value = tok.split("=", 1)
        params[key] = value
    return params


# -- commands -------------------------------------------------------------------

def cmd_recognize(args) -> tuple[dict, int]:
    from .recognition import edge_name, perfect_edge_elimination_order
    from .testkit.oracles import oracle_longest_induced_cycle

    g = _load(args.input)
    order = perfect_edge_elimination_order(g)
    payload = {
        "chordal_bipartite": order is not None,
        "certificate": [edge_name(e) for e in order] if order is not None else None,
    }
    if order is None and g.n <= min(args.max_oracle_n, 16):
        payload["longest_induced_cycle"] = oracle_longest_induced_cycle(g, cap=16)
    return payload, 0


def cmd_fvs(args) -> tuple[dict, int]:
    from .fvs import SolveStats, solve_fvs
    from .testkit.oracles import oracle_fvs

    g = _load(args.input)
    if args.engine == "oracle":
        res = oracle_fvs(g, cap=args.max_oracle_n)
        stats = None
    else:
        stats = SolveStats()
        res = solve_fvs(g, stats=stats)
    payload = {"engine": res.engine, "size": res.size, "fvs": res.names(), "certified": res.certified}
    if stats is not None:
        payload["stats"] = {"pmcs": stats.pmcs, "blocks": stats.blocks,
                            "max_contexts": stats.max_contexts, "context_cap": stats.context_cap}
    return payload, 0


def cmd_separators(args) -> tuple[dict, int]:
    from .recognition import edge_name, is_chordal_bipartite
    from .separators import (
        check_lemma1,
        enumerate_minimal_separators,
        separator_report,
        witness_adjacent_pair,
        witness_bisimplicial_in_component,
        witness_full_vertex,
    )

    g = _load(args.input)
    seps = enumerate_minimal_separators(g)
    cb = is_chordal_bipartite(g)
    items = []
    violations = 0
    for s in seps:
        item = {"separator": s.names()}
        if args.verify:
            if not cb:
                item["verified"] = None
                items.append(item)
                continue
            report = separator_report(g, s)
            lemma1 = check_lemma1(g, s)
            violations += not lemma1
            comps = []
            for c in report.close_components:
                entry = {"component": c.names()}
                for side in ("A", "B"):
                    if s.mask & (g.a_mask if side == "A" else g.b_mask):
                        w = witness_full_vertex(g, s, c, side)
                        entry[f"full_vertex_{side}"] = w.name if w else None
                        violations += w is None
                if any(g.nbr[v] & c.mask for v in iter_bits(c.mask & g.a_mask)):
                    e = witness_bisimplicial_in_component(g, s, c)
                    entry["bisimplicial_edge"] = edge_name(e) if e else None
                    violations += e is None
                if s.side_a and s.side_b:
                    pair = witness_adjacent_pair(g, s, c)
                    entry["adjacent_pair"] = [pair[0].name, pair[1].name] if pair else None
                    violations += pair is None
                comps.append(entry)
            item["complete_bipartite"] = lemma1
            item["close_components"] = comps
        items.append(item)
    payload = {"count": len(seps), "n_plus_m": g.n + g.m, "separators": items}
    if args.verify:
        payload["chordal_bipartite"] = cb
        payload["violations"] = violations
    return payload, 1 if violations else 0


def cmd_check(args) -> tuple[dict, int]:
    from .properties import CheckOptions, run_checks, suite_checks
    from .testkit.corpus import parse_manifest

    specs = parse_manifest(_read_text(args.manifest))
    checks = suite_checks(args.suite)
    opt = CheckOptions(max_oracle_n=args.max_oracle_n, seed=args.seed)

    def instances():
        for spec in specs:
            yield from spec

    tally = run_checks(instances(), checks, opt, graph_text=format_graph)
    failures = sum(t.failed for t in tally.values())
    payload = {
        "manifest": [s.text() for s in specs],
        "suite": args.suite,
        "properties": {
            name: {"pass": t.passed, "fail": t.failed, "skip": t.skipped,
                   **({"counterexample": t.first_failure} if t.first_failure else {})}
            for name, t in tally.items()
        },
        "failures": failures,
    }
    return payload, 1 if failures else 0


def cmd_bench(args) -> tuple[dict, int]:
    from .bench import fmt_slope, loglog_slope, plot_bench, run_bench, write_csv

    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise DomainError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    if not sizes or min(sizes) < 1:
        raise DomainError("--sizes needs positive integers")
    rows, breach = run_bench(args.family, sizes, args.seed, _kv(args.param), args.cap_factor)
    slope = loglog_slope(rows)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"bench_{args.family}_seed{args.seed}"
    csv_path = out / f"{stem}.csv"
    png_path = out / f"{stem}.png"
    write_csv(rows, csv_path)
    plot_bench(rows, slope, png_path, f"{args.family}, seed {args.seed}")
    payload = {
        "family": args.family,
        "rows": [vars(r) for r in rows],
        "loglog_slope": slope,
        "loglog_slope_text": fmt_slope(slope),
        "cap_breach": breach,
        "csv": str(csv_path),
        "figure": str(png_path),
    }
    return payload, 4 if breach else 0


def cmd_embed(args) -> tuple[dict, int]:
    from .embedding import embed, mask_names
    from .errors import PreconditionError
    from .recognition import is_chordal_bipartite

    g = _load(args.input)
    if not is_chordal_bipartite(g):
        raise PreconditionError("embedding needs a chordal bipartite graph")
    closed, tower, forest = embed(g)
    payload = {
        "hyperedges": [{"members": mask_names(h.members), "multiplicity": h.multiplicity} for h in closed.edges],
        "free_a": [f"a{i + 1}" for i in closed.free],
        "omega": tower.omega,
        "tower": [[mask_names(k) + ("*" if k in tower.synthetic else "") for k in lvl] for lvl in tower.levels],
        "t0_edges": [mask_names(k) for k in tower.spanning],
        "forest": forest.outline().splitlines(),
    }
    return payload, 0


def cmd_generate(args) -> tuple[dict, int]:
    from .testkit.generators import gen_family

    g = gen_family(args.family, _kv(args.param), args.seed)
    return {"graph": format_graph(g, f"{args.family} {' '.join(args.param)} seed={args.seed}".strip())}, 0


COMMANDS = {
    "recognize": cmd_recognize,
    "fvs": cmd_fvs,
    "separators": cmd_separators,
    "check": cmd_check,
    "bench": cmd_bench,
    "embed": cmd_embed,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["structured", "text"], default="structured")
    common.add_argument("--seed", type=int, default=None, help=f"default from ${SEED_ENV}, else 0")
    common.add_argument("--max-oracle-n", type=int, default=20, dest="max_oracle_n")

    parser = argparse.ArgumentParser(prog="cbgfvs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", parents=[common], help="test chordal bipartiteness")
    p.add_argument("input")
    p = sub.add_parser("fvs", parents=[common], help="minimum feedback vertex set")
    p.add_argument("input")
    p.add_argument("--engine", choices=["dp", "oracle"], default="dp")
    p = sub.add_parser("separators", parents=[common], help="list minimal separators")
    p.add_argument("input")
    p.add_argument("--verify", action="store_true", help="attach lemma witnesses")
    p = sub.add_parser("check", parents=[common], help="run property suites over a manifest")
    p.add_argument("manifest")
    p.add_argument("--suite", default="all", choices=["all", "recognition", "separators", "embedding", "fvs"])
    p = sub.add_parser("bench", parents=[common], help="solver scaling table and figure")
    p.add_argument("--family", default="convex")
    p.add_argument("--sizes", default="50,100,200,400")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--cap-factor", type=int, default=1, dest="cap_factor")
    p.add_argument("--out", default="bench_out")
    p = sub.add_parser("embed", parents=[common], help="closure, tower and decomposition forest")
    p.add_argument("input")
    p = sub.add_parser("generate", parents=[common], help="write a generated instance")
    p.add_argument("family")
    p.add_argument("param", nargs="*", metavar="KEY=VALUE")
    return parser


def _text(payload, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  -")
                lines.extend(_text(item, indent + 2))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: " + " ".join(str(v) for v in value))
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{pad}{key}:")
            lines.extend(pad + "  " + ln for ln in value.rstrip("\n").splitlines())
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        if args.seed is None:
            args.seed = _default_seed()
        payload, code = COMMANDS[args.command](args)
    except CbgError as exc:
        print(f"cbgfvs {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception:  # an unexpected crash is an integrity failure, not a usage error
        traceback.print_exc()
        return IntegrityError.exit_code
    if args.command == "generate" and args.format == "text":
        sys.stdout.write(payload["graph"])
        return code
    report = {
        "command": args.command,
        "input": getattr(args, "input", None) or getattr(args, "manifest", None) or getattr(args, "family", None),
        "payload": payload,
        "timing_ms": round((time.perf_counter() - started) * 1000, 3),
        "version": __version__,
        "seeds": [args.seed],
    }
    if args.format == "text":
        print("\n".join(_text(report)))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
