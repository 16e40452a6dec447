"""Homology-preserving graph reduction.

A vertex v is removable when some other vertex w satisfies N(v) subset of
N(w): folding v onto w is then a deformation of the identity, so deleting v
changes no homology group in any dimension.  The reducer deletes such
vertices one at a time, rescanning from the start after every removal because
a deletion can create new removable vertices.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

from .graphs import Graph


class ReductionTrace(NamedTuple):
    """What was removed and where the survivors went.

    `removed` lists (vertex, witness) pairs in removal order, in the original
    labelling; `survivor_map` sends each original vertex to its dense id in
    the reduced graph, or None if it was removed.
    """

    removed: tuple[tuple[int, int], ...]
    survivor_map: tuple[Optional[int], ...]

    def to_dict(self) -> dict:
        return {
            "removed": [[v, w] for v, w in self.removed],
            "survivor_map": list(self.survivor_map),
        }


def find_removable(g: Graph) -> Optional[tuple[int, int]]:
    """Lexicographically least (v, w) with v != w and N(v) contained in N(w)."""
    for v in range(g.num_vertices):
        nv = g.neighbors[v]
        for w in range(g.num_vertices):
            if w != v and nv <= g.neighbors[w]:
                return (v, w)
    return None


def reduce_graph(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Remove removable vertices until none remain; homology is unchanged.

    Deterministic: always removes the lexicographically least (v, w) pair,
    judged in the original labelling, and restarts the scan after each
    removal.  The result is relabelled densely.
    """
    alive = list(range(g.num_vertices))
    nbrs = {v: set(g.neighbors[v]) for v in alive}
    removed: list[tuple[int, int]] = []
    while True:
        found = None
        for v in alive:
            nv = nbrs[v]
            for w in alive:
                if w != v and nv <= nbrs[w]:
                    found = (v, w)
                    break
            if found:
                break
        if not found:
            break
        v, w = found
        removed.append((v, w))
        alive.remove(v)
        for u in nbrs.pop(v):
            if u != v:
                nbrs[u].discard(v)
    relabel = {v: i for i, v in enumerate(alive)}
    reduced = Graph(len(alive), [{relabel[u] for u in nbrs[v]} for v in alive])
    survivor = tuple(relabel.get(v) for v in range(g.num_vertices))
    return reduced, ReductionTrace(tuple(removed), survivor)
