"""Exact sparse linear algebra over the rationals.

Scalars are python ints or ``fractions.Fraction``; arithmetic never leaves
exact rationals, so ranks are exact regardless of conditioning.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


class SparseRationalMatrix:
    """Column-major sparse matrix with exact rational entries.

    Each column is a list of ``(row, value)`` pairs with strictly increasing
    row indices and no zero values.
    """

    __slots__ = ("nrows", "ncols", "columns")

    def __init__(self, nrows: int, ncols: int, columns):
        columns = [list(c) for c in columns]
        if len(columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(columns)}")
        for col in columns:
            prev = -1
            for row, value in col:
                if not (prev < row < nrows):
                    raise ValueError(f"bad row index {row} (nrows={nrows})")
                if not value:
                    raise ValueError("explicit zero entry")
                prev = row
        self.nrows = nrows
        self.ncols = ncols
        self.columns = columns

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries):
        """Build from (row, col, value) triplets; duplicates are summed."""
        cols: list[dict[int, object]] = [dict() for _ in range(ncols)]
        for row, col, value in entries:
            cols[col][row] = cols[col].get(row, 0) + value
        columns = [sorted((r, v) for r, v in c.items() if v) for c in cols]
        return cls(nrows, ncols, columns)

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def transpose(self) -> "SparseRationalMatrix":
        rows: list[list[tuple[int, object]]] = [[] for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for row, value in col:
                rows[row].append((j, value))
        return SparseRationalMatrix(self.ncols, self.nrows, rows)

    def __repr__(self):
        return f"SparseRationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _pivot_cost(value) -> int:
    f = Fraction(value)
    return abs(f.numerator) + f.denominator


def rank(m: SparseRationalMatrix, fraction_free: bool = False) -> int:
    """Exact rank over the rationals.

    The default path is sparse left-looking Gaussian elimination: each column
    is reduced against the registered pivot columns and, if anything survives,
    becomes a new pivot itself.  Pivot rows are chosen to approximate the
    Markowitz rule: prefer rows seen in few columns so far, tie-broken by the
    simplest entry.  Exact duplicate columns cannot change the rank and are
    skipped outright.  ``fraction_free=True`` switches to dense Bareiss
    elimination, a safeguard for inputs whose rational entries grow badly.
    """
    if fraction_free:
        return _rank_bareiss(m)
    pivots: dict[int, dict[int, object]] = {}
    row_hits: dict[int, int] = {}
    seen: set[tuple] = set()
    rk = 0
    for col in m.columns:
        if not col:
            continue
        key = tuple((r, Fraction(v)) for r, v in col)
        if key in seen:
            continue
        seen.add(key)
        work = dict(col)
        for r in work:
            row_hits[r] = row_hits.get(r, 0) + 1
        while True:
            hit = -1
            for r in work:
                if r in pivots and r > hit:
                    hit = r
            if hit < 0:
                break
            factor = work.pop(hit)
            for r, v in pivots[hit].items():
                if r == hit:
                    continue
                nv = work.get(r, 0) - factor * v
                if nv:
                    work[r] = nv
                else:
                    work.pop(r, None)
        if not work:
            continue
        pr = min(work, key=lambda r: (row_hits.get(r, 0), _pivot_cost(work[r]), r))
        inv = 1 / Fraction(work[pr])
        pivots[pr] = {r: v * inv for r, v in work.items()}
        rk += 1
    return rk


def kernel_dim(m: SparseRationalMatrix, fraction_free: bool = False) -> int:
    """Dimension of the null space: columns minus rank."""
    return m.ncols - rank(m, fraction_free=fraction_free)


def _rank_bareiss(m: SparseRationalMatrix) -> int:
    # Dense fraction-free elimination on an integer rescaling of the matrix.
    # Column scaling by the lcm of denominators preserves rank.
    dense: list[list[int]] = []
    for col in m.columns:
        scale = 1
        for _, v in col:
            f = Fraction(v)
            scale = scale * f.denominator // gcd(scale, f.denominator)
        vec = [0] * m.nrows
        for r, v in col:
            f = Fraction(v) * scale
            vec[r] = f.numerator
        dense.append(vec)
    ncols = len(dense)
    if ncols == 0 or m.nrows == 0:
        return 0
    # dense is column-major; eliminate treating columns as vectors
    a = dense
    rk = 0
    prev = 1
    used_rows: set[int] = set()
    for j in range(ncols):
        pivot_row = -1
        for r in range(m.nrows):
            if r not in used_rows and a[j][r] != 0:
                pivot_row = r
                break
        if pivot_row < 0:
            continue
        pv = a[j][pivot_row]
        for j2 in range(j + 1, ncols):
            factor = a[j2][pivot_row]
            if factor == 0 and prev == 1:
                continue
            for r in range(m.nrows):
                if r in used_rows or r == pivot_row:
                    continue
                a[j2][r] = (a[j2][r] * pv - factor * a[j][r]) // prev
            a[j2][pivot_row] = 0
        used_rows.add(pivot_row)
        prev = pv
        rk += 1
    return rk
