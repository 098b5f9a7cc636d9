"""Topology analyzers over the composite-edge structure.

Degrees, composite diameter, common neighbors (the interior vertices of the
vertex-disjoint 2-paths between a pair), sequential-coupling and
snapshot-likeness verdicts, and detection of non-sequential interdimensional
edges: edges whose coordinates on a chosen aspect differ by two or more
(transtemporal when that aspect is time, crosslayer when it is a layer type).

Adjacency lives in two interchangeable forms: per-vertex Python-int bitsets
for BFS-style scans, and a dense uint8 matrix whose float32 square counts
common neighbors for all pairs at once.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import (
    CompanionTuple,
    SimpleMag,
    vertex_from_index,
    vertex_index,
)
from .errors import ArgumentError, ShapeError
from .snapshot import coupling_positions, spatial_positions

_MATMUL_BLOCK = 256


def adjacency_rows(g: SimpleMag) -> list[int]:
    """Row bitsets: bit b of row a is set iff edge {a, b} is present."""
    n = g.shape.vertex_count
    rows = [0] * n
    row_len = n - 1
    x = g.bits.to_int()
    mask = (1 << row_len) - 1 if row_len > 0 else 0
    offset = 0
    for a in range(n - 1):
        upper = (x >> offset) & mask
        rows[a] |= upper << (a + 1)
        offset += row_len
        row_len -= 1
        mask >>= 1
    for a in range(n):
        rest = rows[a] >> (a + 1)
        while rest:
            b = (a + 1) + (rest & -rest).bit_length() - 1
            rows[b] |= 1 << a
            rest &= rest - 1
    return rows


def dense_adjacency(g: SimpleMag) -> np.ndarray:
    """Symmetric 0/1 adjacency matrix over vertex indices."""
    n = g.shape.vertex_count
    adj = np.zeros((n, n), dtype=np.uint8)
    if n > 1:
        iu = np.triu_indices(n, 1)
        adj[iu] = g.bits.to_array()
        adj |= adj.T
    return adj


def degree_profile(g: SimpleMag) -> tuple[list[int], float]:
    """Degrees of every composite vertex and the max |d(v) - (N-1)/2|."""
    degrees = dense_adjacency(g).sum(axis=1, dtype=np.int64)
    n = g.shape.vertex_count
    half = (n - 1) / 2
    deviation = float(np.abs(degrees - half).max())
    return degrees.tolist(), deviation


def composite_diameter(g: SimpleMag) -> int | None:
    """Max BFS eccentricity over composite vertices; None if disconnected."""
    n = g.shape.vertex_count
    rows = adjacency_rows(g)
    full = (1 << n) - 1
    diameter = 0
    for source in range(n):
        visited = 1 << source
        frontier = visited
        depth = 0
        while frontier:
            reach = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                reach |= rows[v]
                f &= f - 1
            frontier = reach & ~visited
            if frontier:
                visited |= frontier
                depth += 1
        if visited != full:
            return None
        diameter = max(diameter, depth)
    return diameter


def common_neighbor_count(g: SimpleMag, u: Sequence[int], v: Sequence[int]) -> int:
    """|N(u) & N(v)|; u and v themselves can never appear in it."""
    a = vertex_index(g.shape, u)
    b = vertex_index(g.shape, v)
    if a == b:
        raise ArgumentError("common neighbors need two distinct composite vertices")
    rows = adjacency_rows(g)
    return (rows[a] & rows[b]).bit_count()


def common_neighbor_matrix(g: SimpleMag) -> np.ndarray:
    """All-pairs common-neighbor counts (int32, diagonal = degrees)."""
    adj = dense_adjacency(g).astype(np.float32)
    n = adj.shape[0]
    out = np.empty((n, n), dtype=np.int32)
    for lo in range(0, n, _MATMUL_BLOCK):
        hi = min(lo + _MATMUL_BLOCK, n)
        out[lo:hi] = (adj[lo:hi] @ adj).astype(np.int32)
    return out


def common_neighbor_extremes(g: SimpleMag) -> tuple[int, int] | None:
    """(min, max) common-neighbor count over all pairs; None when N < 2."""
    n = g.shape.vertex_count
    if n < 2:
        return None
    counts = common_neighbor_matrix(g)
    iu = np.triu_indices(n, 1)
    pairs = counts[iu]
    return int(pairs.min()), int(pairs.max())


def is_sequentially_coupled(g: SimpleMag):
    """(flag, first violation) for the sequential-coupling test.

    Holds iff every same-node temporal edge spans consecutive instants and
    every node is coupled to itself at every consecutive pair of instants.
    A violation is ("missing-coupling" | "non-sequential-coupling", (u, v)).
    """
    if g.shape.order != 2:
        raise ShapeError(f"expected a second-order MAG, got order {g.shape.order}")
    n_vertices, n_times = g.shape.sizes
    for node in range(n_vertices):
        for i in range(n_times):
            for j in range(i + 1, n_times):
                present = g.has_edge((node, i), (node, j))
                if j == i + 1 and not present:
                    return False, ("missing-coupling", ((node, i), (node, j)))
                if j > i + 1 and present:
                    return False, ("non-sequential-coupling", ((node, i), (node, j)))
    return True, None


def is_snapshot_like(g: SimpleMag, implied_couplings: bool = False) -> bool:
    """True iff every present edge is spatial (or a sequential coupling
    when implied_couplings), i.e. the snapshot encoder would accept g."""
    shape = g.shape
    if shape.order != 2:
        raise ShapeError(f"expected a second-order MAG, got order {shape.order}")
    allowed = np.zeros(shape.possible_edges, dtype=bool)
    allowed[spatial_positions(shape)] = True
    if implied_couplings:
        allowed[coupling_positions(shape)] = True
    present = g.bits.to_array().astype(bool)
    return not (present & ~allowed).any()


def is_non_sequential_interdimensional(
    u: Sequence[int], v: Sequence[int], aspect: int
) -> bool:
    """True iff the endpoints' aspect-`aspect` coordinates differ by >= 2.

    `aspect` is 1-based; aspect 1 (the vertices) carries no ordering, so
    only 2..p are admissible.
    """
    if len(u) != len(v):
        raise ShapeError("endpoints have different orders")
    if not 2 <= aspect <= len(u):
        raise ArgumentError(f"aspect {aspect} out of range [2, {len(u)}]")
    return abs(u[aspect - 1] - v[aspect - 1]) >= 2


def _present_pairs(g: SimpleMag) -> tuple[np.ndarray, np.ndarray]:
    # Vectorized rank -> (a, b) for all present edges.
    ranks = np.flatnonzero(g.bits.to_array()).astype(np.int64)
    n = g.shape.vertex_count
    disc = (2 * n - 1) ** 2 - 8 * ranks
    a = ((2 * n - 1) - np.sqrt(disc.astype(np.float64))) // 2
    a = a.astype(np.int64)
    for _ in range(2):
        start = a * n - a * (a + 1) // 2
        a = np.where((start > ranks) & (a > 0), a - 1, a)
        start_next = (a + 1) * n - (a + 1) * (a + 2) // 2
        a = np.where(start_next <= ranks, a + 1, a)
    start = a * n - a * (a + 1) // 2
    b = ranks - start + a + 1
    return a, b


def _aspect_coords(shape: CompanionTuple, idx: np.ndarray, aspect: int) -> np.ndarray:
    stride = shape.strides[aspect - 1]
    return (idx // stride) % shape.sizes[aspect - 1]


def non_sequential_census(g: SimpleMag) -> dict[int, int]:
    """Per-aspect counts of present edges with coordinate gap >= 2."""
    a, b = _present_pairs(g)
    census = {}
    for aspect in range(2, g.shape.order + 1):
        ca = _aspect_coords(g.shape, a, aspect)
        cb = _aspect_coords(g.shape, b, aspect)
        census[aspect] = int((np.abs(ca - cb) >= 2).sum())
    return census


def verify_non_sequential_reachability(g: SimpleMag, aspect: int):
    """(verdict, failing pairs) for aspect-k reachability.

    For every pair of composite vertices whose aspect-k coordinates are
    more than two apart, confirms a connecting path of length <= 2 that
    contains at least one non-sequential interdimensional edge on aspect k.
    Vacuously true when no pair qualifies.
    """
    shape = g.shape
    if shape.order < 2:
        raise ShapeError("reachability check needs order >= 2")
    if not 2 <= aspect <= shape.order:
        raise ArgumentError(f"aspect {aspect} out of range [2, {shape.order}]")
    n = shape.vertex_count
    n_k = shape.sizes[aspect - 1]
    coord_k = _aspect_coords(shape, np.arange(n, dtype=np.int64), aspect)
    groups = [np.flatnonzero(coord_k == c) for c in range(n_k)]
    rows = adjacency_rows(g)
    failures = []
    for i in range(n_k):
        for j in range(i + 3, n_k):
            for a in groups[i]:
                row_a = rows[a]
                for b in groups[j]:
                    if (row_a >> int(b)) & 1:
                        continue  # direct edge has gap >= 3
                    common = row_a & rows[b]
                    found = False
                    while common:
                        w = (common & -common).bit_length() - 1
                        cw = int(coord_k[w])
                        if abs(cw - i) >= 2 or abs(cw - j) >= 2:
                            found = True
                            break
                        common &= common - 1
                    if not found:
                        failures.append(
                            (
                                vertex_from_index(shape, int(a)),
                                vertex_from_index(shape, int(b)),
                            )
                        )
    return not failures, failures


def topo_report(g: SimpleMag, reachability_aspect: int | None = None) -> dict:
    """Full analyzer sweep as a JSON-ready dict (stable, sortable keys)."""
    shape = g.shape
    degrees, deviation = degree_profile(g)
    diameter = composite_diameter(g)
    extremes = common_neighbor_extremes(g)
    report = {
        "shape": list(shape.sizes),
        "edgeCount": g.edge_count(),
        "degrees": degrees,
        "maxDegreeDeviation": deviation,
        "diameter": "disconnected" if diameter is None else diameter,
        "minCommonNeighbors": None if extremes is None else extremes[0],
        "maxCommonNeighbors": None if extremes is None else extremes[1],
        "sequentiallyCoupled": None,
        "snapshotLike": None,
        "interdimensionalCensus": {
            str(aspect): count for aspect, count in non_sequential_census(g).items()
        },
    }
    if shape.order == 2:
        report["sequentiallyCoupled"] = is_sequentially_coupled(g)[0]
        report["snapshotLike"] = is_snapshot_like(g)
    if reachability_aspect is not None:
        verdict, failures = verify_non_sequential_reachability(g, reachability_aspect)
        report["nonSequentialReachability"] = {
            "aspect": reachability_aspect,
            "verdict": verdict,
            "failingPairCount": len(failures),
            "failingPairs": [
                [list(u), list(v)] for u, v in failures[:10]
            ],
        }
    return report
