"""Singular cube enumeration: the brute-force map generator, dimension-by-dimension
pairing with degeneracy tracking, and signed orbit classes of cubes.

A singular n-cube in a graph G is a map from the discrete n-cube into G,
stored as its length-2^n array of vertex images.  Two n-cubes A and B that are
pointwise adjacent glue into an (n+1)-cube whose array is concat(A, B); every
(n+1)-cube arises exactly once this way, which is what makes the inductive
generation complete.
"""
from __future__ import annotations

import itertools
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import parallel
from .errors import InputError, ResourceLimitError
from .graphs import Graph
from .templates import ActionTable, build_action_table, build_face_list, orbit_of

_SCAN_BLOCK = 2048


def cube_dim(length: int) -> int:
    n = length.bit_length() - 1
    if length != 1 << n:
        raise InputError(f"array length {length} is not a power of two")
    return n


class SingularCube(NamedTuple):
    """A cube array plus the bitmask of its degenerate coordinates
    (bit i-1 set when the two faces in coordinate i coincide)."""

    vertices: tuple[int, ...]
    deg: int = 0

    @property
    def dim(self) -> int:
        return cube_dim(len(self.vertices))

    @property
    def degenerate_coords(self) -> frozenset[int]:
        return frozenset(i + 1 for i in range(self.dim) if self.deg >> i & 1)


def direct_degeneracy(vertices: Sequence[int]) -> int:
    """Degenerate-coordinate bitmask by comparing the two faces per coordinate."""
    n = cube_dim(len(vertices))
    if n == 0:
        return 0
    fl = build_face_list(n)
    mask = 0
    for i in range(n):
        if all(vertices[a] == vertices[b] for a, b in zip(fl.neg[i], fl.pos[i])):
            mask |= 1 << i
    return mask


def _cube_edges(n: int) -> list[tuple[int, int]]:
    return [(p, p ^ (1 << k)) for p in range(1 << n) for k in range(n) if p < p ^ (1 << k)]


def naive_maps(g: Graph, n: int, cap: int = 10**8) -> list[SingularCube]:
    """Every graph map from the discrete n-cube into g, by filtering all set maps.

    Deliberately brute force; refuse when |V|^(2^n) exceeds `cap` instead of
    grinding forever, pointing at the pairing generator.
    """
    size = 1 << n
    total = g.num_vertices**size
    if total > cap:
        raise ResourceLimitError(
            f"{g.num_vertices}^{size} = {total} set maps exceeds the cap {cap}; "
            "use the pairing generator (next_dimension) instead"
        )
    edges = _cube_edges(n)
    nbrs = g.neighbors
    out = []
    for assignment in itertools.product(range(g.num_vertices), repeat=size):
        if all(assignment[q] in nbrs[assignment[p]] for p, q in edges):
            out.append(SingularCube(assignment, direct_degeneracy(assignment)))
    return out


def is_pair_cube(a: SingularCube, b: SingularCube, g: Graph) -> bool:
    """True when a and b are pointwise adjacent, i.e. glue into a higher cube."""
    if len(a.vertices) != len(b.vertices):
        raise InputError("cubes of different dimensions cannot pair")
    nbrs = g.neighbors
    return all(bv in nbrs[av] for av, bv in zip(a.vertices, b.vertices))


def pair(a: SingularCube, b: SingularCube) -> SingularCube:
    """Glue two n-cubes into an (n+1)-cube, propagating degeneracy.

    The glued cube is degenerate in coordinate i <= n exactly when both halves
    are, and in the new top coordinate exactly when the halves are equal.
    Callers must have checked is_pair_cube.
    """
    n = cube_dim(len(a.vertices))
    deg = a.deg & b.deg
    if a.vertices == b.vertices:
        deg |= 1 << n
    return SingularCube(a.vertices + b.vertices, deg)


def next_dimension(cubes: Sequence[SingularCube], g: Graph) -> list[SingularCube]:
    """All (n+1)-cubes from the complete list of n-cubes, each exactly once."""
    nbrs = g.neighbors
    out = []
    for a in cubes:
        av = a.vertices
        for b in cubes:
            bv = b.vertices
            if all(w in nbrs[v] for v, w in zip(av, bv)):
                deg = a.deg & b.deg
                if av == bv:
                    deg |= 1 << len(av).bit_length() - 1
                out.append(SingularCube(av + bv, deg))
    return out


# ---------------------------------------------------------------------------
# Signed orbit classes
# ---------------------------------------------------------------------------


class CubeClass(NamedTuple):
    """One orbit of cube arrays under signed cube symmetries.

    `elements` lists (array, sign) for every group element in table order,
    repetitions included; the representative is the first element, and
    `canonical_key` is the lexicographically smallest array in the orbit,
    the identity used for deduplication.
    """

    dim: int
    elements: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def representative(self) -> tuple[int, ...]:
        return self.elements[0][0]

    @property
    def canonical_key(self) -> tuple[int, ...]:
        return min(e[0] for e in self.elements)

    @property
    def is_semi_degenerate(self) -> bool:
        rep = self.elements[0][0]
        return any(sign == -1 and arr == rep for arr, sign in self.elements)


def orbit_class(vertices: Sequence[int], table: ActionTable) -> CubeClass:
    return CubeClass(table.n, tuple(orbit_of(vertices, table)))


def dedupe_classes(classes: Iterable[CubeClass]) -> list[CubeClass]:
    """Drop repeated orbits, keeping the first occurrence of each."""
    seen = set()
    out = []
    for c in classes:
        key = c.canonical_key
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def remove_semi_degenerate(classes: Iterable[CubeClass]) -> list[CubeClass]:
    """Drop classes fixed by some negative-sign symmetry; over the rationals
    those are identified with zero in the quotient complex."""
    return [c for c in classes if not c.is_semi_degenerate]


def vertex_dtype(num_vertices: int) -> np.dtype:
    if num_vertices <= 1 << 8:
        return np.dtype(np.uint8)
    if num_vertices <= 1 << 16:
        return np.dtype(np.uint16)
    return np.dtype(np.uint32)


class ClassSet:
    """All dimension-n classes of one graph, packed into flat arrays.

    Class i owns rows [i*order, (i+1)*order) of `elems`, one row per group
    element in table order; its representative is the first of those rows.
    """

    __slots__ = ("dim", "table", "elems", "keys", "_semi")

    def __init__(self, dim: int, table: ActionTable, elems: np.ndarray, keys: list[bytes]):
        self.dim = dim
        self.table = table
        self.elems = elems
        self.keys = keys
        self._semi = None

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def order(self) -> int:
        return self.table.order

    @property
    def width(self) -> int:
        return 1 << self.dim

    @property
    def reps(self) -> np.ndarray:
        return self.elems[:: self.order]

    def class_at(self, i: int) -> CubeClass:
        rows = self.elems[i * self.order : (i + 1) * self.order]
        return CubeClass(
            self.dim,
            tuple(
                (tuple(int(v) for v in row), int(s))
                for row, s in zip(rows, self.table.signs)
            ),
        )

    def to_classes(self) -> list[CubeClass]:
        return [self.class_at(i) for i in range(len(self))]

    def semi_degenerate_mask(self) -> np.ndarray:
        """Boolean per class: fixed by some negative-sign symmetry."""
        if self._semi is None:
            neg = np.nonzero(self.table.signs < 0)[0]
            count = len(self)
            out = np.zeros(count, dtype=bool)
            if neg.size and count:
                stacked = self.elems.reshape(count, self.order, self.width)
                for start in range(0, count, _SCAN_BLOCK):
                    block = stacked[start : start + _SCAN_BLOCK]
                    hit = (block[:, neg, :] == block[:, :1, :]).all(axis=2).any(axis=1)
                    out[start : start + _SCAN_BLOCK] = hit
            out.setflags(write=False)
            self._semi = out
        return self._semi

    def subset(self, indices: np.ndarray) -> "ClassSet":
        indices = np.asarray(indices, dtype=np.int64)
        rows = (indices[:, None] * self.order + np.arange(self.order)).ravel()
        elems = np.ascontiguousarray(self.elems[rows])
        keys = [self.keys[i] for i in indices]
        return ClassSet(self.dim, self.table, elems, keys)

    def kept(self) -> "ClassSet":
        """The non-semi-degenerate classes, in order."""
        return self.subset(np.nonzero(~self.semi_degenerate_mask())[0])


def initial_classes(g: Graph) -> ClassSet:
    """Dimension-0 classes: one singleton orbit per vertex."""
    dtype = vertex_dtype(g.num_vertices)
    elems = np.arange(g.num_vertices, dtype=dtype).reshape(-1, 1)
    keys = [elems[i].tobytes() for i in range(g.num_vertices)]
    return ClassSet(0, build_action_table(0), elems, keys)


def _canonical_rows(orbits: np.ndarray) -> np.ndarray:
    """Lexicographically smallest row of each orbit in a (count, order, width) stack."""
    count, order, width = orbits.shape
    flat = orbits.reshape(count * order, width)
    group = np.repeat(np.arange(count), order)
    keys = tuple(flat[:, c] for c in range(width - 1, -1, -1)) + (group,)
    first = np.lexsort(keys)[np.arange(count) * order]
    return flat[first]


def _pair_scan(adj: np.ndarray, rep: np.ndarray, tail: np.ndarray) -> np.ndarray:
    """Indices into `tail` of elements pointwise adjacent to `rep`."""
    ok = adj[rep, tail]
    return np.nonzero(ok.all(axis=1))[0]


def _first_per_class(idx: np.ndarray, order: int) -> np.ndarray:
    """Keep only the first hit inside each class-sized stripe of element indices."""
    if idx.size == 0:
        return idx
    stripe = idx // order
    _, first = np.unique(stripe, return_index=True)
    return idx[np.sort(first)]


def _generation_worker(span: tuple[int, int]) -> list[tuple[bytes, bytes]]:
    elems, order, adj, next_perms = parallel.get_state()
    start_i, stop_i = span
    seen: set[bytes] = set()
    out: list[tuple[bytes, bytes]] = []
    for i in range(start_i, stop_i):
        rep = elems[i * order]
        base = i * order
        idx = _pair_scan(adj, rep, elems[base:])
        if idx.size == 0:
            continue
        cand = elems[base:][idx]
        cubes = np.concatenate(
            [np.broadcast_to(rep, cand.shape), cand], axis=1
        )
        for lo in range(0, len(cubes), _SCAN_BLOCK):
            block = cubes[lo : lo + _SCAN_BLOCK]
            canon = np.ascontiguousarray(_canonical_rows(block[:, next_perms]))
            span_bytes = canon.itemsize * canon.shape[1]
            buf = canon.tobytes()
            cube_buf = np.ascontiguousarray(block).tobytes()
            for k in range(len(block)):
                key = buf[k * span_bytes : (k + 1) * span_bytes]
                if key not in seen:
                    seen.add(key)
                    out.append((key, cube_buf[k * span_bytes : (k + 1) * span_bytes]))
    return out


def next_dimension_classes(cs: ClassSet, g: Graph, threads: int = 1) -> ClassSet:
    """All distinct (n+1)-classes from the n-classes.

    Each class representative is paired against every element of every class
    with index at least its own; symmetry of the gluing covers the skipped
    half, and duplicates collapse on the canonical key.  The representative
    of each surviving class is the first cube generated for it.
    """
    next_table = build_action_table(cs.dim + 1)
    adj = g.adjacency()
    state = (cs.elems, cs.order, adj, next_table.perms)
    spans = parallel.chunk_ranges(len(cs), max(1, threads) * 4)
    results = parallel.parallel_map(_generation_worker, spans, threads, state=state)

    dtype = cs.elems.dtype
    width = 2 * cs.width
    keys: list[bytes] = []
    rep_rows: list[bytes] = []
    seen: set[bytes] = set()
    for chunk in results:
        for key, cube in chunk:
            if key not in seen:
                seen.add(key)
                keys.append(key)
                rep_rows.append(cube)
    if not keys:
        elems = np.empty((0, width), dtype=dtype)
        return ClassSet(cs.dim + 1, next_table, elems, [])
    reps = np.frombuffer(b"".join(rep_rows), dtype=dtype).reshape(len(keys), width)
    elems = reps[:, next_table.perms].reshape(len(keys) * next_table.order, width)
    elems = np.ascontiguousarray(elems)
    return ClassSet(cs.dim + 1, next_table, elems, keys)
