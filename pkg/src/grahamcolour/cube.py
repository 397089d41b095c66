"""Hypercube geometry: canonical edge indexing and coplanar-quad enumeration.

Vertices of the n-cube are n-bit integers (coordinate i, 1-based, lives in
bit i-1).  The complete graph on them has

    edge_count(n)  = 2^(2n-1) - 2^(n-1)

edges, indexed colexicographically: the edge {u, v} with u < v has id
v*(v-1)//2 + u.  This order is frozen; it doubles as the bit order of the
colouring file format.

A "quad" is a set of 4 distinct vertices spanning an affine plane (rank of
the three difference vectors is exactly 2).  Every such quad in a cube is a
parallelogram: two disjoint vertex pairs with the same coordinate-wise sum
(equivalently the same midpoint).  Grouping pairs by midpoint therefore
enumerates all quads without any rank computation, and summing the pair
combinations per midpoint class reproduces the closed form

    quad_count(n)  = 2^(n-3) * (3^n - 2^(n+1) + 1)

exactly.  The rank test `is_coplanar` is kept as an independent oracle and
is authoritative if the two ever disagree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

MAX_DIMENSION = 14


class PlanarQuad(NamedTuple):
    """Four coplanar vertices and the six edge ids among them, both sorted."""

    vertices: tuple[int, int, int, int]
    edges: tuple[int, int, int, int, int, int]


class CountRow(NamedTuple):
    n: int
    n_edges: int
    n_quads: int


def edge_count(n: int) -> int:
    """Number of edges of the complete graph on 2^n vertices."""
    if n < 0:
        raise ValueError(f"dimension must be nonnegative, got {n}")
    if n == 0:
        return 0
    return (1 << (2 * n - 1)) - (1 << (n - 1))


def quad_count(n: int) -> int:
    """Number of coplanar 4-vertex subsets, 2^(n-3)(3^n - 2^(n+1) + 1).

    The 2^(n-3) factor is fractional for n = 2, so the product is formed in
    rationals and converted at the end.
    """
    if n < 2:
        return 0
    value = Fraction(2) ** (n - 3) * (3**n - 2 ** (n + 1) + 1)
    if value.denominator != 1:
        raise ArithmeticError(f"quad count for n={n} is not integral: {value}")
    return value.numerator


def count_row(n: int) -> CountRow:
    """Exact (n_E, n_K) row for 2 <= n <= 64."""
    if not 2 <= n <= 64:
        raise ValueError(f"dimension out of range 2..64: {n}")
    return CountRow(n, edge_count(n), quad_count(n))


def edge_index(u: int, v: int, n: int) -> int:
    """Canonical id of the edge {u, v}."""
    top = 1 << n
    if not (0 <= u < top and 0 <= v < top):
        raise ValueError(f"vertex out of range for n={n}: ({u}, {v})")
    if u == v:
        raise ValueError(f"edge endpoints must differ, got {u} twice")
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def edge_endpoints(e: int, n: int) -> tuple[int, int]:
    """Inverse of edge_index: id -> (u, v) with u < v."""
    if not 0 <= e < edge_count(n):
        raise ValueError(f"edge id out of range for n={n}: {e}")
    # v is the largest integer with v(v-1)/2 <= e
    v = (1 + int_sqrt(8 * e + 1)) // 2
    u = e - v * (v - 1) // 2
    return u, v


def int_sqrt(x: int) -> int:
    import math

    return math.isqrt(x)


def _coordinates(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def _int_rank(rows: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (integer) elimination."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        piv = None
        for r in range(rank, nrows):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        for r in range(rank + 1, nrows):
            if rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [lead * a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def is_coplanar(quad, n: int) -> bool:
    """True iff the 4 distinct vertices lie in a common affine plane.

    Exact integer arithmetic; no floating point.
    """
    vs = list(quad)
    if len(vs) != 4 or len(set(vs)) != 4:
        raise ValueError(f"need 4 distinct vertices, got {quad}")
    top = 1 << n
    for v in vs:
        if not 0 <= v < top:
            raise ValueError(f"vertex out of range for n={n}: {v}")
    p0 = _coordinates(vs[0], n)
    diffs = [[c - b for c, b in zip(_coordinates(v, n), p0)] for v in vs[1:]]
    return _int_rank(diffs) <= 2


def _bit_positions(mask: int) -> list[int]:
    out = []
    i = 0
    while mask >> i:
        if (mask >> i) & 1:
            out.append(i)
        i += 1
    return out


def _submasks_ascending(mask: int) -> list[int]:
    """All submasks of mask, ascending (by depositing a counter into its bits)."""
    pos = _bit_positions(mask)
    out = []
    for j in range(1 << len(pos)):
        s = 0
        for b, p in enumerate(pos):
            if (j >> b) & 1:
                s |= 1 << p
        out.append(s)
    return out


def _class_pairs(d: int) -> tuple[list[int], list[int]]:
    """Vertex-pair offsets for a midpoint class with difference mask d.

    Pairs with xor u^v = d and common and-part a are {a|ou, a|ov} for the
    returned offset lists (ou always contains the lowest bit of d, making
    each unordered pair appear once).
    """
    low = d & -d
    rest = d ^ low
    us, vs = [], []
    for t in _submasks_ascending(rest):
        us.append(t | low)
        vs.append(rest ^ t)
    return us, vs


def enumerate_planar_quads(n: int) -> Iterator[PlanarQuad]:
    """Yield every coplanar quad exactly once, in a fixed deterministic order.

    Order: difference mask d ascending, common part a ascending, then pair
    combinations (i, j) with i < j lexicographically.  Matches the batch
    enumeration order.  Empty for n < 2.
    """
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension out of supported range 2..{MAX_DIMENSION}: {n}")
    if n < 2:
        return
    full = (1 << n) - 1
    for d in range(1, 1 << n):
        if d & (d - 1) == 0:
            continue  # popcount 1: single pair per class, no quad
        us, vs = _class_pairs(d)
        m = len(us)
        comp = full ^ d
        for a in _submasks_ascending(comp):
            for i in range(m):
                p, q = a | us[i], a | vs[i]
                for j in range(i + 1, m):
                    r, s = a | us[j], a | vs[j]
                    verts = tuple(sorted((p, q, r, s)))
                    edges = tuple(
                        sorted(
                            edge_index(x, y, n)
                            for k, x in enumerate(verts)
                            for y in verts[k + 1 :]
                        )
                    )
                    yield PlanarQuad(verts, edges)


def iter_quad_vertex_batches(
    n: int, batch_cap: int = 1 << 22
) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]:
    """Stream all quads as four int32 vertex columns (p, q, r, s).

    Row order matches enumerate_planar_quads; rows are (p,q) + (r,s) pair
    pairs, not sorted within the row.  Memory is bounded by batch_cap rows
    per yield regardless of n.
    """
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension out of supported range 2..{MAX_DIMENSION}: {n}")
    if n < 2:
        return
    full = (1 << n) - 1
    for d in range(1, 1 << n):
        if d & (d - 1) == 0:
            continue
        us_l, vs_l = _class_pairs(d)
        us = np.asarray(us_l, dtype=np.int32)
        vs = np.asarray(vs_l, dtype=np.int32)
        m = len(us_l)
        a_arr = np.asarray(_submasks_ascending(full ^ d), dtype=np.int32)
        n_a = len(a_arr)
        n_combo = m * (m - 1) // 2
        if n_combo == 0:
            continue
        if n_combo <= batch_cap:
            # chunk the a axis; each chunk carries all combos, preserving
            # (a, combo) row order
            ii, jj = next(_combo_blocks(m, n_combo))
            step = max(1, batch_cap // n_combo)
            for a0 in range(0, n_a, step):
                ab = a_arr[a0 : a0 + step]
                p = (ab[:, None] | us[ii][None, :]).ravel()
                q = (ab[:, None] | vs[ii][None, :]).ravel()
                r = (ab[:, None] | us[jj][None, :]).ravel()
                s = (ab[:, None] | vs[jj][None, :]).ravel()
                yield p, q, r, s
        else:
            # a single pair-combination sweep exceeds the cap: emit one a
            # at a time, chunking the combos
            for a in a_arr:
                for ii, jj in _combo_blocks(m, batch_cap):
                    yield a | us[ii], a | vs[ii], a | us[jj], a | vs[jj]


def _combo_blocks(m: int, cap: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """(i, j) index pairs with i < j < m, in lexicographic order, <= cap per block."""
    cap = max(1, cap)
    ii: list[np.ndarray] = []
    jj: list[np.ndarray] = []
    size = 0
    for i in range(m - 1):
        j0 = i + 1
        while j0 < m:
            take = min(m - j0, cap - size)
            ii.append(np.full(take, i, dtype=np.int32))
            jj.append(np.arange(j0, j0 + take, dtype=np.int32))
            size += take
            j0 += take
            if size == cap:
                yield np.concatenate(ii), np.concatenate(jj)
                ii, jj, size = [], [], 0
    if size:
        yield np.concatenate(ii), np.concatenate(jj)


def quad_edge_columns(
    p: np.ndarray, q: np.ndarray, r: np.ndarray, s: np.ndarray
) -> np.ndarray:
    """Six edge-id columns, shape (rows, 6), for vertex columns of one batch."""
    cols = np.empty((p.shape[0], 6), dtype=np.int32)
    for k, (x, y) in enumerate(((p, q), (r, s), (p, r), (p, s), (q, r), (q, s))):
        lo = np.minimum(x, y)
        hi = np.maximum(x, y)
        cols[:, k] = hi * (hi - 1) // 2 + lo
    return cols
