"""Reflexive graph model, benchmark constructors, products, quotients and file I/O.

A graph here is simple, undirected and reflexive: every vertex carries a loop,
and the loop is stored implicitly by always keeping ``v`` inside ``N(v)``.
File formats never list loops.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError


class Graph:
    """Immutable reflexive symmetric graph on vertices ``0..num_vertices-1``."""

    __slots__ = ("num_vertices", "neighbors", "_adj")

    def __init__(self, num_vertices: int, neighbor_sets: Iterable[Iterable[int]]):
        sets = []
        for v, nbrs in enumerate(neighbor_sets):
            s = frozenset(nbrs) | {v}
            for w in s:
                if not (0 <= w < num_vertices):
                    raise InputError(f"neighbor {w} of vertex {v} out of range [0, {num_vertices})")
            sets.append(s)
        if len(sets) != num_vertices:
            raise InputError(f"expected {num_vertices} neighborhoods, got {len(sets)}")
        for v, s in enumerate(sets):
            for w in s:
                if v not in sets[w]:
                    raise InputError(f"asymmetric adjacency: {w} in N({v}) but {v} not in N({w})")
        self.num_vertices = num_vertices
        self.neighbors = tuple(sets)
        self._adj = None

    def degree(self, v: int) -> int:
        """Neighborhood size, counting the loop once."""
        return len(self.neighbors[v])

    def edges(self) -> list[tuple[int, int]]:
        """Sorted non-loop edges as (u, w) with u < w."""
        out = []
        for v, s in enumerate(self.neighbors):
            out.extend((v, w) for w in s if w > v)
        out.sort()
        return out

    def num_edges(self) -> int:
        return sum(1 for v, s in enumerate(self.neighbors) for w in s if w > v)

    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix (reflexive), built once and shared."""
        if self._adj is None:
            a = np.zeros((self.num_vertices, self.num_vertices), dtype=bool)
            for v, s in enumerate(self.neighbors):
                a[v, sorted(s)] = True
            a.setflags(write=False)
            self._adj = a
        return self._adj

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.num_vertices == other.num_vertices
            and self.neighbors == other.neighbors
        )

    def __hash__(self):
        return hash((self.num_vertices, self.neighbors))

    def __repr__(self):
        return f"Graph({self.num_vertices} vertices, {self.num_edges()} edges)"


def from_edge_list(num_vertices: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from undirected edges; loops are implied, duplicates collapse."""
    sets: list[set[int]] = [set() for _ in range(num_vertices)]
    for u, w in edges:
        if not (0 <= u < num_vertices and 0 <= w < num_vertices):
            raise InputError(f"edge ({u}, {w}) out of range [0, {num_vertices})")
        sets[u].add(w)
        sets[w].add(u)
    return Graph(num_vertices, sets)


def box_product(g: Graph, h: Graph) -> Graph:
    """Box product: (v,w) ~ (v',w') iff one coordinate is equal and the other adjacent.

    Vertex (v, w) is flattened to v * |H| + w.
    """
    nh = h.num_vertices
    n = g.num_vertices * nh
    sets: list[set[int]] = [set() for _ in range(n)]
    for v in range(g.num_vertices):
        for w in range(nh):
            vw = v * nh + w
            s = sets[vw]
            for w2 in h.neighbors[w]:
                s.add(v * nh + w2)
            for v2 in g.neighbors[v]:
                s.add(v2 * nh + w)
    return Graph(n, sets)


def quotient(g: Graph, classes: Sequence[Sequence[int]]) -> Graph:
    """Quotient by a partition of the vertex set; class k becomes vertex k."""
    owner = [-1] * g.num_vertices
    for k, cls in enumerate(classes):
        for v in cls:
            if not (0 <= v < g.num_vertices):
                raise InputError(f"class member {v} out of range")
            if owner[v] != -1:
                raise InputError(f"vertex {v} appears in two classes")
            owner[v] = k
    if any(o == -1 for o in owner):
        missing = owner.index(-1)
        raise InputError(f"vertex {missing} not covered by any class")
    sets: list[set[int]] = [set() for _ in classes]
    for v in range(g.num_vertices):
        for w in g.neighbors[v]:
            sets[owner[v]].add(owner[w])
    return Graph(len(classes), sets)


def path_graph(n: int) -> Graph:
    """Path with n edges on vertices 0..n."""
    if n < 0:
        raise InputError("path length must be >= 0")
    return from_edge_list(n + 1, [(i, i + 1) for i in range(n)])


def cycle_graph(n: int) -> Graph:
    """Cycle on n vertices."""
    if n < 1:
        raise InputError("cycle size must be >= 1")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise InputError("complete graph size must be >= 1")
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def hypercube_graph(n: int) -> Graph:
    """n-dimensional hypercube: vertices are bitstrings, edges flip one bit."""
    if n < 0:
        raise InputError("hypercube dimension must be >= 0")
    edges = [(v, v ^ (1 << k)) for v in range(1 << n) for k in range(n) if v < v ^ (1 << k)]
    return from_edge_list(1 << n, edges)


def greene_sphere() -> Graph:
    """The 10-vertex sphere-like benchmark graph.

    Vertex 0 is the top apex, 1..4 the upper ring, 5..8 the lower ring and 9
    the bottom apex.  Each upper vertex meets two lower vertices so that every
    face of the suspension-like wiring is a square.
    """
    edges = [
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 5), (1, 6),
        (2, 5), (2, 7),
        (3, 6), (3, 8),
        (4, 7), (4, 8),
        (9, 5), (9, 6), (9, 7), (9, 8),
    ]
    return from_edge_list(10, edges)


def c5_star() -> Graph:
    """A 5-cycle with one triangle apex glued over each cycle edge (10 vertices)."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    for i in range(5):
        apex = 5 + i
        edges += [(apex, i), (apex, (i + 1) % 5)]
    return from_edge_list(10, edges)


def torus3() -> Graph:
    """Discrete 3-torus: the cube of the 6-vertex path with opposite faces glued."""
    i5 = path_graph(5)
    g = box_product(box_product(i5, i5), i5)
    # vertex (i, j, k) of the box power sits at (i * 6 + j) * 6 + k
    classes: dict[int, list[int]] = {}
    for i in range(6):
        for j in range(6):
            for k in range(6):
                key = ((i % 5) * 5 + (j % 5)) * 5 + (k % 5)
                classes.setdefault(key, []).append((i * 6 + j) * 6 + k)
    return quotient(g, [classes[k] for k in sorted(classes)])


_PLAIN_BUILTINS = {
    "c5": lambda: cycle_graph(5),
    "k10": lambda: complete_graph(10),
    "greene_sphere": greene_sphere,
    "c5_star": c5_star,
    "torus3": torus3,
}

_SIZED_BUILTINS = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "hypercube": hypercube_graph,
}


def standard_graph(name: str) -> Graph:
    """Named benchmark graphs: c5, k10, greene_sphere, c5_star, torus3,
    and sized families path:N, cycle:N, complete:N, hypercube:N."""
    if name in _PLAIN_BUILTINS:
        return _PLAIN_BUILTINS[name]()
    if ":" in name:
        family, _, size = name.partition(":")
        if family in _SIZED_BUILTINS:
            try:
                k = int(size)
            except ValueError:
                raise InputError(f"bad size {size!r} in graph name {name!r}") from None
            if k < 1:
                raise InputError(f"size parameter in {name!r} must be >= 1")
            return _SIZED_BUILTINS[family](k)
    raise InputError(f"unknown graph name {name!r}")


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.num_vertices
    comps = []
    for v in range(g.num_vertices):
        if seen[v]:
            continue
        stack, comp = [v], []
        seen[v] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def read_graph(path: str) -> Graph:
    """Read a graph file.

    Text format: a header line ``v <num_vertices>`` followed by ``e <u> <w>``
    lines with 0-based ids; lines starting with ``#`` are ignored.  Files whose
    first non-space character is ``{`` (or whose name ends in ``.json``) are
    parsed as ``{"vertices": n, "edges": [[u, w], ...]}``.  Loops are implicit
    and never listed; any one-sided edge is repaired by symmetric closure.
    """
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    if str(path).endswith(".json") or text.lstrip()[:1] == "{":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{path}: invalid JSON: {e}") from None
        try:
            n = int(doc["vertices"])
            edges = [(int(u), int(w)) for u, w in doc["edges"]]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"{path}: expected keys 'vertices' and 'edges': {e}") from None
        return from_edge_list(n, edges)
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            if n is not None:
                raise InputError(f"{path}:{lineno}: duplicate header line")
            try:
                n = int(parts[1])
            except ValueError:
                raise InputError(f"{path}:{lineno}: bad vertex count {parts[1]!r}") from None
        elif parts[0] == "e" and len(parts) == 3:
            if n is None:
                raise InputError(f"{path}:{lineno}: edge before 'v' header")
            try:
                u, w = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError(f"{path}:{lineno}: bad edge line {line!r}") from None
            if not (0 <= u < n and 0 <= w < n):
                raise InputError(f"{path}:{lineno}: edge ({u}, {w}) out of range [0, {n})")
            edges.append((u, w))
        else:
            raise InputError(f"{path}:{lineno}: unrecognized line {line!r}")
    if n is None:
        raise InputError(f"{path}: missing 'v <num_vertices>' header")
    return from_edge_list(n, edges)


def write_graph(g: Graph, path: str) -> None:
    """Write a graph; format chosen by extension (.json or text)."""
    if str(path).endswith(".json"):
        doc = {"vertices": g.num_vertices, "edges": [[u, w] for u, w in g.edges()]}
        with open(path, "w", encoding="utf-8") as f:
            json.dump(doc, f)
            f.write("\n")
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"v {g.num_vertices}\n")
        for u, w in g.edges():
            f.write(f"e {u} {w}\n")
