"""Deterministic fork-based parallel mapping.

Workers are forked after the shared state is published, so they read it
without pickling; results come back in task order, which keeps every merge
identical to a serial run regardless of worker count.
"""
from __future__ import annotations

import multiprocessing as mp

_STATE = None


def get_state():
    return _STATE


def chunk_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    """Split range(n) into at most `parts` contiguous (start, stop) spans."""
    parts = max(1, min(parts, n))
    base, extra = divmod(n, parts)
    spans = []
    start = 0
    for k in range(parts):
        stop = start + base + (1 if k < extra else 0)
        spans.append((start, stop))
        start = stop
    return spans


def parallel_map(fn, tasks, threads: int, state=None) -> list:
    """Apply a top-level function to tasks, optionally across forked workers."""
    global _STATE
    _STATE = state
    try:
        if threads <= 1 or len(tasks) <= 1:
            return [fn(t) for t in tasks]
        try:
            ctx = mp.get_context("fork")
        except ValueError:
            return [fn(t) for t in tasks]
        with ctx.Pool(processes=min(threads, len(tasks))) as pool:
            return pool.map(fn, tasks)
    finally:
        _STATE = None
