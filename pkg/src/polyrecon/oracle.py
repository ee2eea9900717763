"""The forward problem: polygons, brute-force visibility, angle measurement.

Everything here works from known coordinates and serves as the ground-truth
oracle against which the angle-only reconstruction algorithms are tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import GenerationFailed, InvalidIndex, InvalidPolygon
from .geom import AREA_EPS_SCALE, TAU, PrefixTable, build_prefix


@dataclass(frozen=True)
class Polygon:
    """CCW-ordered vertex coordinates; indices are taken modulo n."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.coords, dtype=np.float64))
        if c.ndim != 2 or c.shape[1] != 2:
            raise ValueError("coords must have shape (n, 2)")
        object.__setattr__(self, "coords", c)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "Polygon":
        return cls(np.array(list(points), dtype=np.float64))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    def signed_area(self) -> float:
        x = self.coords[:, 0]
        y = self.coords[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@dataclass(frozen=True)
class VisibilityGraph:
    """Symmetric edge set over vertex indices, stored as sorted (i, j) pairs."""

    n: int
    edges: np.ndarray  # (m, 2) int32, i < j, lexicographically sorted

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=np.int32).reshape(-1, 2)
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        keys = lo.astype(np.int64) * self.n + hi
        order = np.argsort(keys, kind="stable")
        object.__setattr__(self, "edges", np.column_stack([lo[order], hi[order]]))

    @property
    def m(self) -> int:
        return self.edges.shape[0]

    def edge_set(self) -> frozenset:
        return frozenset((int(a), int(b)) for a, b in self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        a, b = (i, j) if i < j else (j, i)
        keys = self.edges[:, 0].astype(np.int64) * self.n + self.edges[:, 1]
        pos = np.searchsorted(keys, a * self.n + b)
        return pos < len(keys) and keys[pos] == a * self.n + b

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        np.add.at(d, self.edges[:, 0], 1)
        np.add.at(d, self.edges[:, 1], 1)
        return d

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        adj[self.edges[:, 0], self.edges[:, 1]] = True
        adj[self.edges[:, 1], self.edges[:, 0]] = True
        return adj

    def __eq__(self, other) -> bool:
        if not isinstance(other, VisibilityGraph):
            return NotImplemented
        return self.n == other.n and self.edges.shape == other.edges.shape \
            and bool(np.all(self.edges == other.edges))


@dataclass
class AngleData:
    """The reconstruction input: per-vertex degree and consecutive gaps.

    ``angles[i]`` holds the ``degrees[i] - 1`` CCW gaps at vertex i, starting
    at the ray to v_{i+1}.
    """

    degrees: np.ndarray
    angles: list  # list of float64 arrays

    def __post_init__(self):
        self.degrees = np.asarray(self.degrees, dtype=np.int64)
        self.angles = [np.asarray(a, dtype=np.float64) for a in self.angles]

    @property
    def n(self) -> int:
        return len(self.degrees)

    def interior_angle(self, i: int) -> float:
        return float(self.angles[i].sum())

    def total_interior(self) -> float:
        return float(sum(a.sum() for a in self.angles))

    def prefix_table(self, i: int) -> PrefixTable:
        return build_prefix(self.angles[i], int(self.degrees[i]))

    def prefix_matrix(self) -> np.ndarray:
        """Padded (n, max_degree) cumulative table; row i valid up to degrees[i]."""
        dmax = int(self.degrees.max())
        out = np.zeros((self.n, dmax), dtype=np.float64)
        for i, gaps in enumerate(self.angles):
            np.cumsum(gaps, out=out[i, 1:len(gaps) + 1])
        return out

    def copy(self) -> "AngleData":
        return AngleData(self.degrees.copy(), [a.copy() for a in self.angles])


# Fixtures used throughout the test suite.
TRI = Polygon.from_points([(0, 0), (1, 0), (0, 1)])
SQ = Polygon.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
HEXL = Polygon.from_points([(0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)])


class Violation(Enum):
    OK = "OK"
    TOO_FEW_VERTICES = "TooFewVertices"
    NOT_SIMPLE = "NotSimple"
    NOT_CCW = "NotCCW"
    COLLINEAR_TRIPLE = "CollinearTriple"


@dataclass(frozen=True)
class ValidationReport:
    verdict: Violation
    detail: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.verdict is Violation.OK

    def __str__(self) -> str:
        if self.ok:
            return "OK"
        return f"{self.verdict.value}{self.detail or ''}"


def validate_polygon(p: Polygon) -> ValidationReport:
    """Check vertex count, simplicity, CCW orientation and general position."""
    if p.n < 3:
        return ValidationReport(Violation.TOO_FEW_VERTICES, (p.n,))
    a, b = _kernels.nonsimple_pair(p.coords)
    if a >= 0:
        return ValidationReport(Violation.NOT_SIMPLE, (int(a), int(b)))
    if p.signed_area() <= 0.0:
        return ValidationReport(Violation.NOT_CCW)
    m = float(np.abs(p.coords).max())
    i, j, k = _kernels.collinear_triple(p.coords, AREA_EPS_SCALE * m * m)
    if i >= 0:
        return ValidationReport(Violation.COLLINEAR_TRIPLE, (int(i), int(j), int(k)))
    return ValidationReport(Violation.OK)


def _require_valid(p: Polygon) -> None:
    report = validate_polygon(p)
    if not report.ok:
        raise InvalidPolygon(report)


def is_visible_bruteforce(p: Polygon, i: int, j: int) -> bool:
    """True iff the closed segment v_i v_j lies entirely in the closed polygon."""
    n = p.n
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise InvalidIndex(f"invalid vertex pair ({i}, {j}) for n={n}")
    return bool(_kernels.visible_pair(p.coords, i, j))


def visibility_graph_oracle(p: Polygon) -> VisibilityGraph:
    """Brute-force O(n^3) visibility graph; the ground-truth oracle."""
    _require_valid(p)
    vis = _kernels.visibility_matrix(p.coords)
    iu, ju = np.triu_indices(p.n, k=1)
    mask = vis[iu, ju]
    return VisibilityGraph(p.n, np.column_stack([iu[mask], ju[mask]]).astype(np.int32))


def measure_angles(p: Polygon, graph: Optional[VisibilityGraph] = None) -> AngleData:
    """Measure the per-vertex consecutive visibility angles of a valid polygon."""
    if graph is None:
        graph = visibility_graph_oracle(p)
    else:
        _require_valid(p)
    adj = graph.adjacency()
    n = p.n
    degrees = np.zeros(n, dtype=np.int64)
    gaps_per_vertex = []
    for i in range(n):
        targets = np.nonzero(adj[i])[0]
        d = p.coords[targets] - p.coords[i]
        theta = np.arctan2(d[:, 1], d[:, 0])
        nxt = (i + 1) % n
        base = theta[targets == nxt][0]
        rel = (theta - base) % TAU
        rel[targets == nxt] = 0.0
        order = np.argsort(rel, kind="stable")
        ordered = targets[order]
        if ordered[0] != nxt or ordered[-1] != (i - 1) % n:
            raise InvalidPolygon(ValidationReport(Violation.NOT_CCW, (i,)))
        gaps = np.diff(rel[order])
        degrees[i] = len(targets)
        gaps_per_vertex.append(gaps)
    return AngleData(degrees, gaps_per_vertex)


def random_simple_polygon(n: int, seed: int) -> Polygon:
    """Deterministic random simple polygon via 2-opt edge uncrossing."""
    if n < 3:
        raise GenerationFailed(f"need n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    max_steps = 100 * n * n
    for _attempt in range(20):
        coords = rng.random((n, 2))
        steps = _kernels.untangle_2opt(coords, max_steps)
        if steps < 0:
            continue
        poly = Polygon(coords)
        if poly.signed_area() < 0.0:
            poly = Polygon(coords[::-1].copy())
        # Jitter away collinear triples, re-untangle, re-check.
        for _jitter in range(5):
            report = validate_polygon(poly)
            if report.ok:
                return poly
            if report.verdict is not Violation.COLLINEAR_TRIPLE:
                break
            c = poly.coords + rng.normal(scale=1e-9, size=(n, 2))
            if _kernels.untangle_2opt(c, max_steps) < 0:
                break
            poly = Polygon(c if Polygon(c).signed_area() > 0.0 else c[::-1].copy())
    raise GenerationFailed(f"could not generate a valid polygon (n={n}, seed={seed})")


def random_convex_polygon(n: int, seed: int) -> Polygon:
    """Vertices on the unit circle: strictly convex, never three collinear."""
    if n < 3:
        raise GenerationFailed(f"need n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    while True:
        angles = np.sort(rng.uniform(0.0, TAU, n))
        gaps = np.diff(np.concatenate([angles, [angles[0] + TAU]]))
        if gaps.min() > 1e-6:
            break
    return Polygon(np.column_stack([np.cos(angles), np.sin(angles)]))


def measure_angles_convex(p: Polygon) -> AngleData:
    """O(n^2) angle measurement for strictly convex polygons (complete graph)."""
    n = p.n
    cr = np.roll(p.coords, -1, axis=0) - p.coords
    nx = np.roll(cr, -1, axis=0)
    turns = cr[:, 0] * nx[:, 1] - cr[:, 1] * nx[:, 0]
    if np.any(turns <= 0.0):
        raise InvalidPolygon(ValidationReport(Violation.NOT_CCW))
    gaps = _kernels.convex_gap_matrix(p.coords)
    degrees = np.full(n, n - 1, dtype=np.int64)
    return AngleData(degrees, [gaps[i] for i in range(n)])
