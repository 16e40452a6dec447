"""Command-line interface and benchmark harness.

Subcommands: homology, bench, reduce, verify, gen.  Exit statuses are stable
contracts: 0 success, 1 benchmark expectation mismatch, 2 usage or input
error, 3 refusal by a resource guard.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .boundary import write_matrix_market
from .errors import InputError, ResourceLimitError
from .graphs import Graph, read_graph, standard_graph, write_graph
from .pipeline import (
    HomologyOptions,
    betti_profile,
    homology,
    naive_homology,
    verify_shortcircuit,
)
from .preprocess import reduce_graph

# Expected Betti numbers of the benchmark graphs, used to gate `bench` runs.
EXPECTED_BETTI = {
    "c5": {0: 1, 1: 1, 2: 0, 3: 0, 4: 0},
    "greene_sphere": {0: 1, 1: 0, 2: 1, 3: 0, 4: 0},
    "torus3": {0: 1, 1: 3, 2: 3, 3: 1},
    "k10": {0: 1, 1: 0, 2: 0, 3: 0, 4: 0},
    "c5_star": {0: 1, 1: 1, 2: 0, 3: 0, 4: 0},
}

# suite -> list of (graph, max_dim, assume_conjecture, ungated_dims)
# ungated rows run opportunistically: their Betti numbers are reported and
# compared but never fail the suite.
BENCH_SUITES = {
    "quick": [
        ("c5", 2, False, ()),
        ("greene_sphere", 1, False, ()),
        ("k10", 2, False, ()),
        ("c5_star", 2, False, ()),
    ],
    "standard": [
        ("c5", 3, False, ()),
        ("greene_sphere", 3, False, ()),
        ("k10", 2, False, ()),
        ("c5_star", 3, False, ()),
        ("torus3", 2, False, ()),
    ],
    "extended": [
        ("c5", 4, True, ()),
        ("greene_sphere", 3, False, ()),
        ("k10", 2, False, ()),
        ("c5_star", 3, False, ()),
        ("torus3", 3, False, (3,)),
    ],
}


def _load_graph(spec: str) -> Graph:
    if spec.startswith("builtin:"):
        return standard_graph(spec[len("builtin:"):])
    return read_graph(spec)


def _default_threads() -> int:
    raw = os.environ.get("CUBEHOM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _options_from_args(args) -> HomologyOptions:
    return HomologyOptions(
        preprocess=not args.no_preprocess,
        use_quotient=not args.no_quotient,
        assume_conjecture=args.assume_conjecture,
        threads=args.threads,
        naive_cap=args.naive_cap,
        memory_budget_mb=args.memory_budget_mb,
    )


def _add_common_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="graph file path or builtin:NAME")
    p.add_argument("--no-preprocess", action="store_true", help="skip vertex reduction")
    p.add_argument("--no-quotient", action="store_true",
                   help="work on the plain non-degenerate complex instead of symmetry classes")
    p.add_argument("--assume-conjecture", action="store_true",
                   help="apply the first-hit pairing cutoff in every dimension, "
                        "not just where it is a theorem")
    p.add_argument("--threads", type=int, default=_default_threads(),
                   help="worker processes (default: CUBEHOM_THREADS or 1)")
    p.add_argument("--naive-cap", type=int, default=10**8, help=argparse.SUPPRESS)
    p.add_argument("--memory-budget-mb", type=int, default=2048, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubehom",
                                     description="Exact cubical homology of reflexive graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="compute one Betti number or a profile")
    _add_common_options(p)
    dims = p.add_mutually_exclusive_group(required=True)
    dims.add_argument("--dim", type=int, help="single homology dimension")
    dims.add_argument("--max-dim", type=int, help="profile dimensions 0..N")
    p.add_argument("--naive", action="store_true",
                   help="use the brute-force set-map pipeline (requires --dim)")
    p.add_argument("--dump-matrix", metavar="PREFIX",
                   help="write boundary matrices as PREFIX.dK.mtx")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("bench", help="run a benchmark suite against expected Betti numbers")
    p.add_argument("--suite", choices=sorted(BENCH_SUITES), default="quick")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("reduce", help="remove homotopically removable vertices")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", default="reduced.graph", help="reduced graph file")
    p.add_argument("--trace", default=None,
                   help="JSON removal trace (default: <out>.trace.json)")

    p = sub.add_parser("verify", help="compare boundary ranks with and without the pairing cutoff")
    _add_common_options(p)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen", help="write a builtin graph to a file")
    p.add_argument("name", help="builtin graph name, e.g. torus3 or cycle:7")
    p.add_argument("out", help="output path (.json for JSON format)")
    return parser


def _cmd_homology(args) -> int:
    g = _load_graph(args.graph)
    opts = _options_from_args(args)
    if args.naive:
        if args.dim is None:
            print("--naive requires --dim", file=sys.stderr)
            return 2
        betti = naive_homology(g, args.dim, cap=opts.naive_cap)
        doc = {
            "graph": {"vertices": g.num_vertices, "edges": g.num_edges(),
                      "reduced_vertices": g.num_vertices},
            "dimension": args.dim,
            "betti": betti,
            "options": {"naive": True},
        }
        if args.json:
            print(json.dumps(doc))
        else:
            print(f"H_{args.dim} dimension (naive): {betti}")
        return 0
    collect = args.dump_matrix is not None
    if args.dim is not None:
        result = homology(g, args.dim, opts, collect_matrices=collect)
    else:
        result = betti_profile(g, args.max_dim, opts, collect_matrices=collect)
    if collect and result.matrices:
        for dim, mat in sorted(result.matrices.items()):
            write_matrix_market(mat, f"{args.dump_matrix}.d{dim}.mtx")
    if args.json:
        print(result.to_json())
        return 0
    info = result.graph
    print(f"graph: {info['vertices']} vertices, {info['edges']} edges"
          f" (reduced to {info['reduced_vertices']} vertices)")
    if args.dim is not None:
        print(f"H_{args.dim} dimension: {result.betti}")
    else:
        for k, b in enumerate(result.betti):
            print(f"H_{k} dimension: {b}")
    for row in result.class_counts:
        print(f"  dim {row['dim']}: {row['total']} classes, {row['kept']} kept")
    print(f"total time: {result.timings_ms['total_ms']:.1f} ms")
    return 0


def _cmd_bench(args) -> int:
    rows = []
    failures = []
    for name, max_dim, conjecture, ungated in BENCH_SUITES[args.suite]:
        g = standard_graph(name)
        opts = HomologyOptions(assume_conjecture=conjecture, threads=args.threads)
        t0 = time.perf_counter()
        prof = betti_profile(g, max_dim, opts)
        elapsed = time.perf_counter() - t0
        for dim in range(max_dim + 1):
            expected = EXPECTED_BETTI[name].get(dim)
            got = prof.betti[dim]
            gated = dim not in ungated and expected is not None
            ok = (not gated) or got == expected
            if not ok:
                failures.append((name, dim, expected, got))
            rows.append({
                "graph": name,
                "dim": dim,
                "betti": got,
                "expected": expected,
                "gated": gated,
                "ok": got == expected if expected is not None else None,
                "time_s": round(elapsed, 3),
            })
    if args.json:
        print(json.dumps({"suite": args.suite, "rows": rows}))
    else:
        print(f"{'graph':<14} {'dim':>3} {'betti':>5} {'expected':>8} {'ok':>4} {'time_s':>8}")
        for r in rows:
            exp = "-" if r["expected"] is None else r["expected"]
            ok = "-" if r["ok"] is None else ("yes" if r["ok"] else "NO")
            print(f"{r['graph']:<14} {r['dim']:>3} {r['betti']:>5} {exp:>8} {ok:>4} {r['time_s']:>8}")
    if failures:
        for name, dim, expected, got in failures:
            print(f"MISMATCH: {name} H_{dim}: expected {expected}, got {got}", file=sys.stderr)
        return 1
    return 0


def _cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    reduced, trace = reduce_graph(g)
    write_graph(reduced, args.out)
    trace_path = args.trace or f"{args.out}.trace.json"
    with open(trace_path, "w", encoding="utf-8") as f:
        json.dump(trace.to_dict(), f)
        f.write("\n")
    print(f"reduced {g.num_vertices} -> {reduced.num_vertices} vertices "
          f"({len(trace.removed)} removals); wrote {args.out} and {trace_path}")
    return 0


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    opts = _options_from_args(args)
    report = verify_shortcircuit(g, args.dim, opts)
    if args.json:
        print(json.dumps({"dimension": args.dim, "rank_full": report.rank_full,
                          "rank_short": report.rank_short, "equal": report.equal}))
    else:
        print(f"rank without cutoff: {report.rank_full}")
        print(f"rank with cutoff:    {report.rank_short}")
        print(f"equal: {report.equal}")
    return 0


def _cmd_gen(args) -> int:
    name = args.name[len("builtin:"):] if args.name.startswith("builtin:") else args.name
    g = standard_graph(name)
    write_graph(g, args.out)
    print(f"wrote {name} ({g.num_vertices} vertices, {g.num_edges()} edges) to {args.out}")
    return 0


_COMMANDS = {
    "homology": _cmd_homology,
    "bench": _cmd_bench,
    "reduce": _cmd_reduce,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"refused: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
