"""End-to-end homology drivers.

The optimized driver works on signed orbit classes: generate class sets
dimension by dimension, filter semi-degeneracies at the two dimensions that
form the boundary matrix, and stream the top boundary matrix without storing
its cubes.  The naive driver enumerates set maps wholesale and quotients by
degeneracies only; it exists to cross-check the optimized one, never to be
fast.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import factorial
from typing import NamedTuple, Optional

import json

from .boundary import (
    build_dictionary,
    build_matrix,
    build_plain_dictionary,
    build_plain_matrix,
    plain_boundary_column,
    stream_plain_top,
    stream_top_matrix,
)
from .enumeration import (
    ClassSet,
    SingularCube,
    initial_classes,
    naive_maps,
    next_dimension,
    next_dimension_classes,
)
from .errors import InputError, ResourceLimitError
from .graphs import Graph
from .preprocess import ReductionTrace, reduce_graph
from .ratlinalg import SparseRationalMatrix, kernel_dim, rank
from .templates import build_action_table, build_face_list


@dataclass(frozen=True)
class HomologyOptions:
    preprocess: bool = True
    use_quotient: bool = True
    assume_conjecture: bool = False
    threads: int = 1
    naive_cap: int = 10**8
    memory_budget_mb: int = 2048

    def flags(self) -> dict:
        # threads is execution detail, not semantics: results are identical for
        # any worker count, and serialized output must be too.
        return {
            "preprocess": self.preprocess,
            "use_quotient": self.use_quotient,
            "assume_conjecture": self.assume_conjecture,
        }


DEFAULT_OPTIONS = HomologyOptions()


@dataclass
class HomologyResult:
    graph: dict
    dimension: int
    betti: int
    class_counts: list
    timings_ms: dict
    options: dict
    matrices: Optional[dict] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "dimension": self.dimension,
            "betti": self.betti,
            "class_counts": self.class_counts,
            "timings_ms": self.timings_ms,
            "options": self.options,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class ProfileResult:
    graph: dict
    max_dimension: int
    betti: list
    class_counts: list
    timings_ms: dict
    options: dict
    matrices: Optional[dict] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "max_dimension": self.max_dimension,
            "betti": self.betti,
            "class_counts": self.class_counts,
            "timings_ms": self.timings_ms,
            "options": self.options,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class ShortcircuitReport(NamedTuple):
    rank_full: int
    rank_short: int
    equal: bool


def _prepare(g: Graph, opts: HomologyOptions):
    summary = {"vertices": g.num_vertices, "edges": g.num_edges()}
    if opts.preprocess:
        work, trace = reduce_graph(g)
    else:
        work, trace = g, ReductionTrace((), tuple(range(g.num_vertices)))
    summary["reduced_vertices"] = work.num_vertices
    return work, trace, summary


def _guard_classes(counts: list[int], next_dim: int, itemsize: int, budget_mb: int) -> None:
    """Refuse the next stored generation when its projected footprint exceeds
    the budget, extrapolating the growth ratio of the last two counts."""
    if counts[-1] == 0:
        return
    if len(counts) >= 2 and counts[-2] > 0:
        ratio = counts[-1] / counts[-2]
    else:
        ratio = float(counts[-1])
    projected = counts[-1] * max(ratio, 1.0)
    order = (1 << next_dim) * factorial(next_dim)
    width = 1 << next_dim
    projected_bytes = projected * order * width * itemsize * 2
    if projected_bytes > budget_mb * (1 << 20):
        raise ResourceLimitError(
            f"projected {projected:.3g} classes in dimension {next_dim} "
            f"(~{projected_bytes / 2**20:.0f} MiB packed) exceeds the "
            f"{budget_mb} MiB budget; raise memory_budget_mb to proceed"
        )


def _generate_class_sets(g: Graph, up_to: int, opts: HomologyOptions) -> list[ClassSet]:
    gens = [initial_classes(g)]
    counts = [len(gens[0])]
    itemsize = gens[0].elems.dtype.itemsize
    for k in range(1, up_to + 1):
        _guard_classes(counts, k, itemsize, opts.memory_budget_mb)
        gens.append(next_dimension_classes(gens[-1], g, threads=opts.threads))
        counts.append(len(gens[-1]))
    return gens


def _class_counts(gens: list[ClassSet]) -> list[dict]:
    out = []
    for k, cs in enumerate(gens):
        kept = int((~cs.semi_degenerate_mask()).sum())
        out.append({"dim": k, "total": len(cs), "kept": kept})
    return out


def _plain_levels(g: Graph, up_to: int, opts: HomologyOptions) -> list[list[SingularCube]]:
    levels = [[SingularCube((v,), 0) for v in range(g.num_vertices)]]
    counts = [len(levels[0])]
    for k in range(1, up_to + 1):
        _guard_classes(counts, k, 8, opts.memory_budget_mb)
        levels.append(next_dimension(levels[-1], g))
        counts.append(len(levels[-1]))
    return levels


def homology(g: Graph, n: int, opts: HomologyOptions = DEFAULT_OPTIONS,
             collect_matrices: bool = False) -> HomologyResult:
    """Dimension of the n-th homology group of g over the rationals."""
    if n < 0:
        raise InputError("homology dimension must be >= 0")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    work, _trace, summary = _prepare(g, opts)
    timings["preprocess_ms"] = (time.perf_counter() - t0) * 1000.0
    if opts.use_quotient:
        betti, counts, mats = _quotient_homology(work, n, opts, timings)
    else:
        betti, counts, mats = _plain_homology(work, n, opts, timings)
    timings["total_ms"] = (time.perf_counter() - t0) * 1000.0
    return HomologyResult(
        graph=summary,
        dimension=n,
        betti=betti,
        class_counts=counts,
        timings_ms=timings,
        options=opts.flags(),
        matrices=mats if collect_matrices else None,
    )


def _quotient_homology(work: Graph, n: int, opts: HomologyOptions, timings: dict):
    t = time.perf_counter()
    gens = _generate_class_sets(work, n, opts)
    counts = _class_counts(gens)
    timings["classes_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    kept_n = gens[n].kept()
    mats: dict[int, SparseRationalMatrix] = {}
    if n == 0:
        dimker = len(kept_n)
    else:
        kept_prev = gens[n - 1].kept()
        mat_n = build_matrix(kept_n, build_dictionary(kept_prev), build_face_list(n))
        mats[n] = mat_n
        dimker = kernel_dim(mat_n)
    timings["matrix_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    shortcircuit = opts.assume_conjecture or (n + 1) <= 3
    mat_top = stream_top_matrix(
        gens[n],
        build_dictionary(kept_n),
        work,
        build_face_list(n + 1),
        build_action_table(n + 1),
        shortcircuit=shortcircuit,
        threads=opts.threads,
    )
    mats[n + 1] = mat_top
    timings["stream_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    image = rank(mat_top)
    timings["rank_ms"] = (time.perf_counter() - t) * 1000.0
    return dimker - image, counts, mats


def _plain_homology(work: Graph, n: int, opts: HomologyOptions, timings: dict):
    t = time.perf_counter()
    levels = _plain_levels(work, n, opts)
    counts = [
        {"dim": k, "total": len(lv), "kept": sum(1 for c in lv if c.deg == 0)}
        for k, lv in enumerate(levels)
    ]
    timings["classes_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    nondeg_n = [c for c in levels[n] if c.deg == 0]
    mats: dict[int, SparseRationalMatrix] = {}
    if n == 0:
        dimker = len(nondeg_n)
    else:
        nondeg_prev = [c for c in levels[n - 1] if c.deg == 0]
        mat_n = build_plain_matrix(
            nondeg_n, build_plain_dictionary(nondeg_prev), build_face_list(n), len(nondeg_prev)
        )
        mats[n] = mat_n
        dimker = kernel_dim(mat_n)
    timings["matrix_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    mat_top = stream_plain_top(
        levels[n], build_plain_dictionary(nondeg_n), work, build_face_list(n + 1), len(nondeg_n)
    )
    mats[n + 1] = mat_top
    timings["stream_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    image = rank(mat_top)
    timings["rank_ms"] = (time.perf_counter() - t) * 1000.0
    return dimker - image, counts, mats


def betti_profile(g: Graph, max_n: int, opts: HomologyOptions = DEFAULT_OPTIONS,
                  collect_matrices: bool = False) -> ProfileResult:
    """Betti numbers for every dimension up to max_n, sharing class generations.

    Boundary ranks for the stored dimensions come from one matrix per
    dimension; only the top dimension is streamed.
    """
    if max_n < 0:
        raise InputError("profile dimension must be >= 0")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    work, _trace, summary = _prepare(g, opts)
    timings["preprocess_ms"] = (time.perf_counter() - t0) * 1000.0
    if not opts.use_quotient:
        # profile over the plain complex: reuse the single-dimension driver
        bettis = []
        counts = None
        for k in range(max_n + 1):
            res = homology(work, k, HomologyOptions(
                preprocess=False,
                use_quotient=False,
                assume_conjecture=opts.assume_conjecture,
                threads=opts.threads,
                naive_cap=opts.naive_cap,
                memory_budget_mb=opts.memory_budget_mb,
            ))
            bettis.append(res.betti)
            counts = res.class_counts
        timings["total_ms"] = (time.perf_counter() - t0) * 1000.0
        return ProfileResult(summary, max_n, bettis, counts, timings, opts.flags())

    t = time.perf_counter()
    gens = _generate_class_sets(work, max_n, opts)
    counts = _class_counts(gens)
    timings["classes_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    kept = [gens[k].kept() for k in range(max_n + 1)]
    mats: dict[int, SparseRationalMatrix] = {}
    ranks = [0] * (max_n + 2)
    for k in range(1, max_n + 1):
        mat = build_matrix(kept[k], build_dictionary(kept[k - 1]), build_face_list(k))
        mats[k] = mat
        ranks[k] = rank(mat)
    timings["matrix_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    shortcircuit = opts.assume_conjecture or (max_n + 1) <= 3
    mat_top = stream_top_matrix(
        gens[max_n],
        build_dictionary(kept[max_n]),
        work,
        build_face_list(max_n + 1),
        build_action_table(max_n + 1),
        shortcircuit=shortcircuit,
        threads=opts.threads,
    )
    mats[max_n + 1] = mat_top
    timings["stream_ms"] = (time.perf_counter() - t) * 1000.0

    t = time.perf_counter()
    ranks[max_n + 1] = rank(mat_top)
    timings["rank_ms"] = (time.perf_counter() - t) * 1000.0

    bettis = []
    for k in range(max_n + 1):
        dimker = len(kept[k]) - ranks[k] if k else len(kept[0])
        bettis.append(dimker - ranks[k + 1])
    timings["total_ms"] = (time.perf_counter() - t0) * 1000.0
    return ProfileResult(
        graph=summary,
        max_dimension=max_n,
        betti=bettis,
        class_counts=counts,
        timings_ms=timings,
        options=opts.flags(),
        matrices=mats if collect_matrices else None,
    )


def naive_homology(g: Graph, n: int, cap: int = 10**8) -> int:
    """Betti number by exhaustive set-map enumeration; the correctness oracle.

    No preprocessing, no symmetry quotient: just all maps, the degeneracy
    quotient and exact ranks.
    """
    if n < 0:
        raise InputError("homology dimension must be >= 0")
    level_n = naive_maps(g, n, cap)
    level_top = naive_maps(g, n + 1, cap)
    nondeg_n = [c for c in level_n if c.deg == 0]
    if n == 0:
        dimker = len(nondeg_n)
    else:
        level_prev = naive_maps(g, n - 1, cap)
        nondeg_prev = [c for c in level_prev if c.deg == 0]
        mat = build_plain_matrix(
            nondeg_n, build_plain_dictionary(nondeg_prev), build_face_list(n), len(nondeg_prev)
        )
        dimker = kernel_dim(mat)
    nondeg_top = [c for c in level_top if c.deg == 0]
    mat_top = build_plain_matrix(
        nondeg_top, build_plain_dictionary(nondeg_n), build_face_list(n + 1), len(nondeg_n)
    )
    return dimker - rank(mat_top)


def verify_shortcircuit(g: Graph, n: int, opts: HomologyOptions = DEFAULT_OPTIONS) -> ShortcircuitReport:
    """Rank of the dimension-n boundary matrix streamed with and without the
    first-hit cutoff.  Equality is a theorem for n = 2 and 3 and an open
    conjecture beyond; this reports, it does not assume."""
    if n < 1:
        raise InputError("short-circuit verification needs dimension >= 1")
    work, _trace, _summary = _prepare(g, opts)
    gens = _generate_class_sets(work, n - 1, opts)
    cdict = build_dictionary(gens[n - 1].kept())
    fl = build_face_list(n)
    table = build_action_table(n)
    full = stream_top_matrix(gens[n - 1], cdict, work, fl, table,
                             shortcircuit=False, threads=opts.threads)
    short = stream_top_matrix(gens[n - 1], cdict, work, fl, table,
                              shortcircuit=True, threads=opts.threads)
    r_full = rank(full)
    r_short = rank(short)
    return ShortcircuitReport(r_full, r_short, r_full == r_short)
