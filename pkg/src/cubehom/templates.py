"""Precomputed combinatorics of the discrete n-cube.

Vertices of the n-cube are indexed by integers in [0, 2^n); coordinate k of
vertex m is bit k-1 of m (coordinate 1 is the least significant bit).  Gluing
two n-cubes into an (n+1)-cube appends the new coordinate as the most
significant bit, so the glued vertex array is the plain concatenation of the
two halves.

Everything here is built once per dimension, cached, and immutable.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import InputError


class FaceList(NamedTuple):
    """Index tables mapping an n-cube array to its 2n faces.

    ``neg[i-1][j]`` is the position in the parent array of vertex j of the
    face fixing coordinate i to 0; ``pos`` likewise for 1.
    """

    n: int
    neg: np.ndarray  # (n, 2^(n-1)) int64
    pos: np.ndarray


class GroupElement(NamedTuple):
    """Signed coordinate permutation: coordinate i of the image reads
    coordinate perm[i-1] of the input, flipped when reversal[i-1] == -1."""

    perm: tuple[int, ...]
    reversal: tuple[int, ...]
    sign: int


class ActionTable(NamedTuple):
    """Vertex-index permutations realizing every group element on cube arrays.

    Row r satisfies ``sigma(A)[m] = A[perms[r][m]]`` for any array A of length
    2^n; ``signs[r]`` is the sign of that element.  Row 0 is the identity.
    """

    n: int
    perms: np.ndarray  # (order, 2^n) int64
    signs: np.ndarray  # (order,) int8
    elements: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.signs)


def _insert_bit(value: int, position: int, bit: int) -> int:
    low = value & ((1 << position) - 1)
    high = value >> position
    return low | (bit << position) | (high << (position + 1))


@lru_cache(maxsize=None)
def build_face_list(n: int) -> FaceList:
    """Face index lists for dimension n >= 1."""
    if n < 1:
        raise InputError("face lists exist for dimension >= 1")
    half = 1 << (n - 1)
    neg = np.empty((n, half), dtype=np.int64)
    pos = np.empty((n, half), dtype=np.int64)
    for i in range(1, n + 1):
        for j in range(half):
            neg[i - 1, j] = _insert_bit(j, i - 1, 0)
            pos[i - 1, j] = _insert_bit(j, i - 1, 1)
    neg.setflags(write=False)
    pos.setflags(write=False)
    return FaceList(n, neg, pos)


def faces_of(vertices, fl: FaceList) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (negative, positive) face pairs of a cube array, by coordinate."""
    if len(vertices) != 2 ** fl.n:
        raise InputError(f"cube of length {len(vertices)} does not match dimension {fl.n}")
    out = []
    for i in range(fl.n):
        out.append(
            (
                tuple(vertices[m] for m in fl.neg[i]),
                tuple(vertices[m] for m in fl.pos[i]),
            )
        )
    return out


def _perm_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def generate_group(n: int) -> tuple[GroupElement, ...]:
    """All signed coordinate permutations in a fixed deterministic order.

    The identity comes first; after that elements are ordered lexicographically
    by (perm, reversal) with +1 sorting before -1.  There are 2^n * n! of them.
    """
    elements = []
    for perm in itertools.permutations(range(1, n + 1)):
        base = _perm_sign(perm)
        for reversal in itertools.product((1, -1), repeat=n):
            sign = base
            for r in reversal:
                sign *= r
            elements.append(GroupElement(perm, reversal, sign))
    return tuple(elements)


def vertex_image(v: int, g: GroupElement, n: int) -> int:
    """Image of cube vertex v under a group element."""
    out = 0
    for i in range(n):
        bit = (v >> (g.perm[i] - 1)) & 1
        if g.reversal[i] == -1:
            bit ^= 1
        out |= bit << i
    return out


@lru_cache(maxsize=None)
def build_action_table(n: int) -> ActionTable:
    elements = generate_group(n)
    size = 1 << n
    perms = np.empty((len(elements), size), dtype=np.int64)
    signs = np.empty(len(elements), dtype=np.int8)
    for r, g in enumerate(elements):
        for m in range(size):
            perms[r, m] = vertex_image(m, g, n)
        signs[r] = g.sign
    perms.setflags(write=False)
    signs.setflags(write=False)
    return ActionTable(n, perms, signs, elements)


def orbit_of(vertices, table: ActionTable) -> list[tuple[tuple[int, ...], int]]:
    """The signed orbit of a cube array, in table order; entry 0 is (A, +1).

    Repetitions appear whenever the stabilizer is nontrivial.
    """
    verts = tuple(vertices)
    if len(verts) != 1 << table.n:
        raise InputError(f"cube of length {len(verts)} does not match dimension {table.n}")
    return [
        (tuple(verts[m] for m in row), int(sign))
        for row, sign in zip(table.perms, table.signs)
    ]
