"""Sparse boundary matrix assembly.

Columns are boundaries of cubes expressed in the basis of the kept classes one
dimension down.  A coordinate dictionary maps every orbit element of every
kept class to its column index and relative sign; faces that miss the
dictionary were quotiented to zero and contribute nothing.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from . import parallel
from .enumeration import ClassSet, SingularCube, _first_per_class, _pair_scan, _SCAN_BLOCK
from .errors import InputError
from .graphs import Graph
from .ratlinalg import SparseRationalMatrix
from .templates import ActionTable, FaceList


class CoordinateDictionary:
    """Lookup from cube arrays (as raw bytes) to (class index, sign)."""

    __slots__ = ("map", "dim", "dtype", "num_classes")

    def __init__(self, mapping: dict, dim: int, dtype: np.dtype, num_classes: int):
        self.map = mapping
        self.dim = dim
        self.dtype = dtype
        self.num_classes = num_classes

    def lookup(self, vertices: Sequence[int]):
        key = np.asarray(vertices, dtype=self.dtype).tobytes()
        return self.map.get(key)

    def __len__(self) -> int:
        return len(self.map)


def build_dictionary(kept: ClassSet) -> CoordinateDictionary:
    """Key every element of every kept class by its array.

    Inside one kept class an array can repeat (nontrivial stabilizer) but
    always with a single sign; a sign clash would mean a semi-degenerate class
    slipped through the filter, which is an internal error.
    """
    mapping: dict[bytes, tuple[int, int]] = {}
    order = kept.order
    signs = kept.table.signs
    row_bytes = kept.elems.dtype.itemsize * kept.width
    buf = np.ascontiguousarray(kept.elems).tobytes()
    for i in range(len(kept)):
        for r in range(order):
            k = i * order + r
            key = buf[k * row_bytes : (k + 1) * row_bytes]
            value = (i, int(signs[r]))
            old = mapping.get(key)
            if old is None:
                mapping[key] = value
            elif old != value:
                raise RuntimeError(
                    f"conflicting dictionary entry for class {i}: {old} vs {value}; "
                    "a semi-degenerate class leaked through filtering"
                )
    return CoordinateDictionary(mapping, kept.dim, kept.elems.dtype, len(kept))


def boundary_column(cube: Sequence[int] | SingularCube, cdict: CoordinateDictionary, fl: FaceList):
    """Sparse boundary column of one n-cube over the kept (n-1)-classes.

    Face i contributes (-1)^i at its class row for the negative side and the
    opposite sign for the positive side, both multiplied by the element's
    relative sign from the dictionary; zero sums are dropped.
    """
    vertices = cube.vertices if isinstance(cube, SingularCube) else cube
    if len(vertices) != 2 ** fl.n:
        raise InputError(f"cube of length {len(vertices)} does not match dimension {fl.n}")
    row = np.asarray(vertices, dtype=cdict.dtype)
    return _column_from_row(row, cdict.map, fl.neg, fl.pos)


def _column_from_row(row: np.ndarray, mapping: dict, fl_neg: np.ndarray, fl_pos: np.ndarray):
    entries: dict[int, int] = {}
    for i in range(len(fl_neg)):
        sgn = -1 if (i + 1) % 2 else 1
        hit = mapping.get(row[fl_neg[i]].tobytes())
        if hit is not None:
            m, s = hit
            entries[m] = entries.get(m, 0) + sgn * s
        hit = mapping.get(row[fl_pos[i]].tobytes())
        if hit is not None:
            m, s = hit
            entries[m] = entries.get(m, 0) - sgn * s
    return sorted((m, v) for m, v in entries.items() if v)


def build_matrix(kept: ClassSet, cdict: CoordinateDictionary, fl: FaceList) -> SparseRationalMatrix:
    """Boundary matrix with one column per kept class representative."""
    if kept.dim != fl.n or cdict.dim != fl.n - 1:
        raise InputError("dimension mismatch between classes, dictionary and face list")
    reps = kept.reps
    columns = [
        _column_from_row(reps[i], cdict.map, fl.neg, fl.pos) for i in range(len(kept))
    ]
    return SparseRationalMatrix(cdict.num_classes, len(columns), columns)


def _stream_worker(span: tuple[int, int]) -> list:
    (elems, order, adj, next_perms, neg_rows, fl_neg, fl_pos, mapping, shortcircuit) = (
        parallel.get_state()
    )
    start_i, stop_i = span
    out = []
    for i in range(start_i, stop_i):
        base = i * order
        rep = elems[base]
        idx = _pair_scan(adj, rep, elems[base:])
        if shortcircuit:
            idx = _first_per_class(idx, order)
        if idx.size == 0:
            continue
        cand = elems[base:][idx]
        cubes = np.concatenate([np.broadcast_to(rep, cand.shape), cand], axis=1)
        for lo in range(0, len(cubes), _SCAN_BLOCK):
            block = np.ascontiguousarray(cubes[lo : lo + _SCAN_BLOCK])
            orbits = block[:, next_perms]
            semi = (orbits[:, neg_rows, :] == block[:, None, :]).all(axis=2).any(axis=1)
            for row in block[~semi]:
                out.append(_column_from_row(row, mapping, fl_neg, fl_pos))
    return out


def stream_top_matrix(
    classes: ClassSet,
    cdict: CoordinateDictionary,
    g: Graph,
    fl: FaceList,
    table: ActionTable,
    shortcircuit: bool = False,
    threads: int = 1,
) -> SparseRationalMatrix:
    """Boundary matrix one dimension up, generated column by column.

    Pairs each class representative against every element of every class with
    index at least its own; each successful gluing is orbit-checked for
    semi-degeneracy and, if kept, its boundary column is emitted immediately.
    The cubes themselves are never stored, and duplicate columns from repeated
    orbits are left in (they cannot change the rank).  With `shortcircuit` the
    element scan of each partner class stops at its first successful gluing.
    """
    if classes.dim != cdict.dim or fl.n != classes.dim + 1 or table.n != classes.dim + 1:
        raise InputError("dimension mismatch in top-matrix streaming")
    neg_rows = np.nonzero(table.signs < 0)[0]
    state = (
        classes.elems,
        classes.order,
        g.adjacency(),
        table.perms,
        neg_rows,
        fl.neg,
        fl.pos,
        cdict.map,
        shortcircuit,
    )
    spans = parallel.chunk_ranges(len(classes), max(1, threads) * 4)
    results = parallel.parallel_map(_stream_worker, spans, threads, state=state)
    columns = [col for chunk in results for col in chunk]
    return SparseRationalMatrix(cdict.num_classes, len(columns), columns)


# ---------------------------------------------------------------------------
# Plain (unquotiented) complexes: the same assembly over non-degenerate cubes.
# ---------------------------------------------------------------------------


def build_plain_dictionary(cubes: Sequence[SingularCube]) -> dict[tuple[int, ...], int]:
    return {c.vertices: i for i, c in enumerate(cubes)}


def plain_boundary_column(vertices: Sequence[int], mapping: dict, fl: FaceList):
    entries: dict[int, int] = {}
    for i in range(fl.n):
        sgn = -1 if (i + 1) % 2 else 1
        neg = tuple(vertices[m] for m in fl.neg[i])
        m = mapping.get(neg)
        if m is not None:
            entries[m] = entries.get(m, 0) + sgn
        pos = tuple(vertices[m] for m in fl.pos[i])
        m = mapping.get(pos)
        if m is not None:
            entries[m] = entries.get(m, 0) - sgn
    return sorted((m, v) for m, v in entries.items() if v)


def build_plain_matrix(cubes, mapping, fl: FaceList, nrows: int) -> SparseRationalMatrix:
    columns = [plain_boundary_column(c.vertices, mapping, fl) for c in cubes]
    return SparseRationalMatrix(nrows, len(columns), columns)


def stream_plain_top(
    cubes: Sequence[SingularCube], mapping, g: Graph, fl: FaceList, nrows: int
) -> SparseRationalMatrix:
    """Boundary matrix one dimension up from plain cubes, without storing them."""
    nbrs = g.neighbors
    columns = []
    for a in cubes:
        av, adeg = a.vertices, a.deg
        for b in cubes:
            bv = b.vertices
            deg = adeg & b.deg
            if deg or (av == bv):
                continue
            if all(w in nbrs[v] for v, w in zip(av, bv)):
                columns.append(plain_boundary_column(av + bv, mapping, fl))
    return SparseRationalMatrix(nrows, len(columns), columns)


def write_matrix_market(m: SparseRationalMatrix, path: str) -> None:
    """Dump as text: a `rows cols nnz` header, then 1-based `row col value` triplets."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{m.nrows} {m.ncols} {m.nnz()}\n")
        for j, col in enumerate(m.columns):
            for r, v in col:
                f.write(f"{r + 1} {j + 1} {v}\n")
