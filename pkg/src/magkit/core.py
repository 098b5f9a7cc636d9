"""Multiaspect-graph shapes, canonical indexing, and the in-memory MAG.

A MAG of order p relates composite vertices: p-tuples drawn from p finite
aspect sets of sizes (n_1, ..., n_p). The whole toolkit rests on two fixed
bijections that depend only on those sizes, never on which edges exist:

  * vertex_index: coordinate tuples <-> [0, N), mixed radix with the first
    aspect varying fastest. For a second-order MAG read as (vertices, times)
    this is time-major, so all composite vertices of one time instant are
    contiguous and same-instant edges form diagonal blocks of the adjacency
    matrix of the order-1 image.
  * edge_rank: unordered pairs of distinct vertex indices <-> [0, M) with
    M = (N^2 - N) / 2, in lexicographic pair order.

A SimpleMag is a shape plus one presence bit per possible composite edge in
rank order; that bit sequence is the MAG's characteristic string.

All indices are 0-based.
"""

from __future__ import annotations

import sys
from math import isqrt
from typing import Iterable, Iterator, Sequence

from .bitstring import BitString
from .errors import (
    ArithmeticOverflowError,
    RangeError,
    SelfLoopError,
    ShapeError,
)

Coords = tuple[int, ...]


class CompanionTuple:
    """Aspect sizes (n_1, ..., n_p); fixes a MAG's shape and orderings."""

    __slots__ = ("sizes", "order", "vertex_count", "possible_edges", "strides")

    def __init__(self, sizes: Sequence[int]):
        sizes = tuple(int(n) for n in sizes)
        if not sizes:
            raise ShapeError("a MAG needs at least one aspect")
        if any(n < 1 for n in sizes):
            raise ShapeError(f"aspect sizes must be positive, got {sizes}")
        strides = []
        total = 1
        for n in sizes:
            strides.append(total)
            total *= n
            if total > sys.maxsize:
                raise ArithmeticOverflowError(
                    "composite vertex count exceeds the platform index range"
                )
        edges = total * (total - 1) // 2
        if edges > sys.maxsize:
            raise ArithmeticOverflowError(
                "possible edge count exceeds the platform index range"
            )
        self.sizes = sizes
        self.order = len(sizes)
        self.vertex_count = total
        self.possible_edges = edges
        self.strides = tuple(strides)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CompanionTuple):
            return NotImplemented
        return self.sizes == other.sizes

    def __hash__(self) -> int:
        return hash(self.sizes)

    def __repr__(self) -> str:
        return f"CompanionTuple({self.sizes})"


def _check_coords(shape: CompanionTuple, coords: Sequence[int]) -> Coords:
    coords = tuple(int(c) for c in coords)
    if len(coords) != shape.order:
        raise ShapeError(
            f"composite vertex has {len(coords)} coordinates, shape expects {shape.order}"
        )
    for c, n in zip(coords, shape.sizes):
        if not 0 <= c < n:
            raise ShapeError(f"coordinate {c} out of range [0, {n}) in {coords}")
    return coords


def vertex_index(shape: CompanionTuple, coords: Sequence[int]) -> int:
    """Mixed-radix index of a composite vertex, first aspect fastest."""
    coords = _check_coords(shape, coords)
    idx = 0
    for c, stride in zip(coords, shape.strides):
        idx += c * stride
    return idx


def vertex_from_index(shape: CompanionTuple, index: int) -> Coords:
    """Inverse of vertex_index."""
    index = int(index)
    if not 0 <= index < shape.vertex_count:
        raise RangeError(
            f"vertex index {index} out of range [0, {shape.vertex_count})"
        )
    coords = []
    for n in shape.sizes:
        coords.append(index % n)
        index //= n
    return tuple(coords)


def possible_edge_count(shape: CompanionTuple) -> int:
    """(N^2 - N) / 2 possible unordered composite edges."""
    return shape.possible_edges


def _pair_rank(n_vertices: int, a: int, b: int) -> int:
    # Lexicographic rank of pair (a, b), a < b, over [0, n_vertices).
    return a * n_vertices - a * (a + 1) // 2 + (b - a - 1)


def _row_start(n_vertices: int, a: int) -> int:
    # Rank of pair (a, a+1): where row a of the upper triangle begins.
    return a * n_vertices - a * (a + 1) // 2


def _pair_from_rank(n_vertices: int, rank: int) -> tuple[int, int]:
    # Closed-form row via isqrt, then a correction step for the two floors.
    disc = (2 * n_vertices - 1) ** 2 - 8 * rank
    a = (2 * n_vertices - 1 - isqrt(disc)) // 2
    while a > 0 and _row_start(n_vertices, a) > rank:
        a -= 1
    while _row_start(n_vertices, a + 1) <= rank:
        a += 1
    b = rank - _row_start(n_vertices, a) + a + 1
    return a, b


def edge_rank(shape: CompanionTuple, u: Sequence[int], v: Sequence[int]) -> int:
    """Canonical rank of the unordered composite edge {u, v}.

    Depends only on the shape. Raises SelfLoopError when u == v.
    """
    a = vertex_index(shape, u)
    b = vertex_index(shape, v)
    if a == b:
        raise SelfLoopError(f"self-loop at composite vertex {tuple(u)}")
    if a > b:
        a, b = b, a
    return _pair_rank(shape.vertex_count, a, b)


def edge_from_rank(shape: CompanionTuple, rank: int) -> tuple[Coords, Coords]:
    """Inverse of edge_rank; endpoint with smaller vertex index first."""
    rank = int(rank)
    if not 0 <= rank < shape.possible_edges:
        raise RangeError(
            f"edge rank {rank} out of range [0, {shape.possible_edges})"
        )
    a, b = _pair_from_rank(shape.vertex_count, rank)
    return vertex_from_index(shape, a), vertex_from_index(shape, b)


class SimpleMag:
    """Undirected MAG without self-loops: shape + packed presence bits.

    Bit j of `bits` is 1 iff the edge of rank j is present, i.e. `bits` is
    the characteristic string under the canonical edge ordering.

    Intended use is build-then-read: all reads are pure and safe to share
    across threads once mutation (set_edge) has stopped.
    """

    __slots__ = ("shape", "bits")

    def __init__(self, shape: CompanionTuple, bits: BitString | None = None):
        if bits is None:
            bits = BitString(shape.possible_edges)
        elif bits.bit_length != shape.possible_edges:
            raise ShapeError(
                f"characteristic string holds {bits.bit_length} bits, "
                f"shape requires {shape.possible_edges}"
            )
        self.shape = shape
        self.bits = bits

    @classmethod
    def from_edges(
        cls, shape: CompanionTuple, edges: Iterable[tuple[Sequence[int], Sequence[int]]]
    ) -> "SimpleMag":
        g = cls(shape)
        for u, v in edges:
            g.set_edge(u, v)
        return g

    def has_edge(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.bits.get(edge_rank(self.shape, u, v))

    def set_edge(self, u: Sequence[int], v: Sequence[int], present: bool = True) -> None:
        self.bits.set(edge_rank(self.shape, u, v), present)

    def edge_count(self) -> int:
        return self.bits.count()

    def present_ranks(self) -> Iterator[int]:
        """Ranks of present edges in ascending order."""
        for byte_index, byte in enumerate(self.bits.payload):
            while byte:
                top = 7 - (byte.bit_length() - 1)
                yield byte_index * 8 + top
                byte &= ~(0x80 >> top)

    def edges(self) -> Iterator[tuple[Coords, Coords]]:
        """Present edges in rank order, smaller-index endpoint first."""
        for rank in self.present_ranks():
            yield edge_from_rank(self.shape, rank)

    def to_classical_edges(self) -> list[tuple[int, int]]:
        """Edge list of the order-1 image over vertex indices [0, N)."""
        n = self.shape.vertex_count
        return [_pair_from_rank(n, rank) for rank in self.present_ranks()]

    def copy(self) -> "SimpleMag":
        return SimpleMag(self.shape, self.bits.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleMag):
            return NotImplemented
        return self.shape == other.shape and self.bits == other.bits

    def __repr__(self) -> str:
        return f"SimpleMag(shape={self.shape.sizes}, edges={self.edge_count()})"
