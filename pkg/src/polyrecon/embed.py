"""Coordinate embedding: visibility graph + angles -> polygon up to similarity.

The graph is triangulated by recursing on last-visible witnesses, then the
dual tree is walked from the base edge (v_0, v_{n-1}), placing each third
corner by the law of sines.  The output is the canonical representative of
the similarity class: v_0 at the origin, unit base edge along direction 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import MalformedGraph, NumericallyDegenerate, SizeMismatch
from .geom import EPS_ANGLE, TAU, normalize_angle
from .oracle import AngleData, Polygon, VisibilityGraph


@dataclass(frozen=True)
class Triangulation:
    """n-2 empty triangles, parent-before-children order, root first."""

    n: int
    triangles: tuple  # ((a, l, b), ...) with a < l < b

    @property
    def diagonals(self) -> frozenset:
        boundary = {(i, i + 1) for i in range(self.n - 1)} | {(0, self.n - 1)}
        out = set()
        for a, l, b in self.triangles:
            for e in ((a, l), (l, b), (a, b)):
                if e not in boundary:
                    out.add(e)
        return frozenset(out)


def triangulate(g: VisibilityGraph, data: Optional[AngleData] = None) -> Triangulation:
    """Split chains on the largest-index vertex visible to the chain start.

    Such a vertex is always a triangle witness for the chain's end edge, so
    each emitted triangle is empty and its edges lie in the graph.
    """
    n = g.n
    if n < 3:
        raise MalformedGraph(f"graph on {n} < 3 vertices")
    if data is not None and data.n != n:
        raise MalformedGraph("angle data size does not match graph")
    adj = g.adjacency()
    triangles = []
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        l = -1
        for cand in range(j - 1, i, -1):
            if adj[i, cand]:
                l = cand
                break
        if l < 0 or not adj[l, j]:
            raise MalformedGraph(f"no witness closes the chain ({i}, {j})")
        triangles.append((i, l, j))
        # LIFO: (i, l) is processed before (l, j); both parents are placed.
        stack.append((l, j))
        stack.append((i, l))
    if len(triangles) != n - 2:
        raise MalformedGraph(f"{len(triangles)} triangles for n={n}")
    return Triangulation(n, tuple(triangles))


def _rank_matrix(g: VisibilityGraph) -> np.ndarray:
    """rank[i, w] = CCW visibility rank of w at vertex i (boundary order)."""
    n = g.n
    adj = g.adjacency()
    rank = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        targets = np.nonzero(adj[i])[0]
        order = np.argsort((targets - i - 1) % n, kind="stable")
        rank[i, targets[order]] = np.arange(1, len(targets) + 1)
    return rank


def corner_angles(g: VisibilityGraph, data: AngleData, tri: Triangulation) -> np.ndarray:
    """(n-2, 3) corner angles of each triangle, read from the rank tables."""
    rank = _rank_matrix(g)
    prefix = data.prefix_matrix()

    def between(v, a, b):
        ra, rb = int(rank[v, a]), int(rank[v, b])
        if ra == 0 or rb == 0 or not ra < rb:
            raise MalformedGraph(f"corner ({v}; {a}, {b}) not resolvable from ranks")
        return prefix[v, rb - 1] - prefix[v, ra - 1]

    out = np.empty((len(tri.triangles), 3), dtype=np.float64)
    for t, (i, l, j) in enumerate(tri.triangles):
        out[t, 0] = between(i, l, j)
        out[t, 1] = between(l, j, i)
        out[t, 2] = between(j, i, l)
    return out


def embed(g: VisibilityGraph, data: AngleData) -> Polygon:
    """Place coordinates: v_0 = (0, 0), v_{n-1} = (1, 0), CCW."""
    if data.n != g.n:
        raise MalformedGraph("angle data size does not match graph")
    if not np.array_equal(g.degrees(), data.degrees):
        raise MalformedGraph("graph degrees disagree with angle data")
    n = g.n
    tri = triangulate(g, data)
    angles = corner_angles(g, data, tri)
    coords = np.full((n, 2), np.nan, dtype=np.float64)
    coords[0] = (0.0, 0.0)
    coords[n - 1] = (1.0, 0.0)
    for (i, l, j), (alpha, gamma, beta) in zip(tri.triangles, angles):
        # alpha at v_i, gamma at v_l, beta at v_j; v_i and v_j already placed.
        if min(alpha, gamma, beta) <= EPS_ANGLE:
            raise NumericallyDegenerate(
                f"triangle ({i}, {l}, {j}) has corner angle <= {EPS_ANGLE}"
            )
        base = coords[j] - coords[i]
        d = math.hypot(base[0], base[1])
        theta = math.atan2(base[1], base[0]) - alpha
        r = d * math.sin(beta) / math.sin(gamma)
        coords[l] = (coords[i][0] + r * math.cos(theta),
                     coords[i][1] + r * math.sin(theta))
    poly = Polygon(coords)
    if poly.signed_area() < 0.0:
        poly = Polygon(coords * np.array([1.0, -1.0]))
    return poly


@dataclass(frozen=True)
class SimilarityReport:
    matched: bool
    scale: float
    rotation: float
    translation: tuple
    max_relative_deviation: float

    def __str__(self) -> str:
        return (
            f"matched={self.matched} scale={self.scale:.17g} "
            f"rotation={self.rotation:.17g} "
            f"max_relative_deviation={self.max_relative_deviation:.17g}"
        )


def similarity_compare(p: Polygon, q: Polygon, tol: float = 1e-6) -> SimilarityReport:
    """Least-squares direct similarity (rotation + scale + translation) p -> q.

    Correspondence is by index; deviations are measured relative to q's
    diameter.
    """
    if p.n != q.n:
        raise SizeMismatch(f"vertex counts differ: {p.n} vs {q.n}")
    zp = p.coords[:, 0] + 1j * p.coords[:, 1]
    zq = q.coords[:, 0] + 1j * q.coords[:, 1]
    cp, cq = zp.mean(), zq.mean()
    dp, dq = zp - cp, zq - cq
    w = np.vdot(dp, dq) / np.vdot(dp, dp)  # sum(conj(dp) * dq) / sum(|dp|^2)
    mapped = w * dp + cq
    # Diameter of q, chunked to bound memory.
    diam = 0.0
    pts = q.coords
    for s in range(0, q.n, 1024):
        block = pts[s:s + 1024]
        d2 = ((block[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
        diam = max(diam, float(np.sqrt(d2.max())))
    dev = float(np.max(np.abs(mapped - zq))) / diam
    t = cq - w * cp
    return SimilarityReport(
        matched=dev <= tol,
        scale=float(abs(w)),
        rotation=normalize_angle(float(np.angle(w))),
        translation=(float(t.real), float(t.imag)),
        max_relative_deviation=dev,
    )
