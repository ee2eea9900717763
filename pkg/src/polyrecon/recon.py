"""Visibility-graph reconstruction from angle data via triangle witnesses.

Two drivers share one rank-table state: the original algorithm scans every
chain vertex as a potential witness (O(n^3) lookups), the improved one tests
only the last identified visible vertex per pair (O(n^2) total).  The hot
loops live in ``_kernels``; the pure-Python state here mirrors them for
tests and instrumentation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import InconsistentInput, PreconditionViolated
from .geom import EPS_ANGLE, PrefixTable
from .oracle import AngleData, VisibilityGraph

logger = logging.getLogger(__name__)

ALGORITHMS = ("original", "improved")


@dataclass
class FBState:
    """Forward/backward rank tables and their counters.

    ``F[i][j] = t`` marks v_j as the t-th visible vertex of v_i in CCW order
    (0 = not yet identified); ``B`` is filled from the CW end.  ``L[i]`` /
    ``Lp[i]`` count the non-zero entries, ``I[i]`` / ``Ip[i]`` hold the last
    / first identified visible vertex.
    """

    n: int
    deg: np.ndarray
    tables: list  # list[PrefixTable]
    F: np.ndarray
    B: np.ndarray
    L: np.ndarray
    Lp: np.ndarray
    I: np.ndarray
    Ip: np.ndarray
    edges: set


@dataclass(frozen=True)
class WitnessAngles:
    """The three angles of a triangle-witness test and their sum."""

    up_i: float
    up_j: float
    at_l: float

    @property
    def total(self) -> float:
        return self.up_i + self.up_j + self.at_l


@dataclass
class ReconStats:
    candidate_checks: int
    witness_sums: int
    near_misses: int
    max_accepted_dev: float
    min_rejected_dev: float


@dataclass
class ReconResult:
    graph: VisibilityGraph
    stats: ReconStats


def _check_structure(data: AngleData) -> None:
    if data.n < 3:
        raise InconsistentInput(f"need n >= 3, got {data.n}")
    for i in range(data.n):
        if data.degrees[i] < 2:
            raise InconsistentInput(f"deg(v_{i}) = {data.degrees[i]} < 2")
        if len(data.angles[i]) != data.degrees[i] - 1:
            raise InconsistentInput(f"vertex {i}: wrong number of angles")
        if np.any(data.angles[i] <= 0.0):
            raise InconsistentInput(f"vertex {i}: non-positive angle")
        if data.interior_angle(i) >= 2.0 * math.pi:
            raise InconsistentInput(f"vertex {i}: angle sum >= 2*pi")


def init_state(data: AngleData) -> FBState:
    """Record the boundary edges both ways and reset all counters."""
    _check_structure(data)
    n = data.n
    deg = data.degrees
    F = np.zeros((n, n), dtype=np.int32)
    B = np.zeros((n, n), dtype=np.int32)
    L = np.ones(n, dtype=np.int64)
    Lp = np.ones(n, dtype=np.int64)
    I = np.empty(n, dtype=np.int64)
    Ip = np.empty(n, dtype=np.int64)
    edges = set()
    for i in range(n):
        nxt = (i + 1) % n
        prv = (i - 1) % n
        F[i, nxt] = 1
        B[i, prv] = deg[i]
        I[i] = nxt
        Ip[i] = prv
        edges.add((min(i, nxt), max(i, nxt)))
    tables = [data.prefix_table(i) for i in range(n)]
    return FBState(n, deg, tables, F, B, L, Lp, I, Ip, edges)


def witness_sum(state: FBState, i: int, j: int, l: int) -> WitnessAngles:
    """The two approximated angles at v_i, v_j plus the full angle at v_l."""
    ri1 = int(state.F[i, l])
    rj2 = int(state.B[j, l])
    rl1 = int(state.F[l, j])
    rl2 = int(state.B[l, i])
    if ri1 == 0 or rj2 == 0 or rl1 == 0 or rl2 == 0:
        raise PreconditionViolated(
            f"witness ranks missing for (i={i}, j={j}, l={l})"
        )
    up_i = state.tables[i].angle_between(ri1, int(state.L[i]) + 1)
    up_j = state.tables[j].angle_between(int(state.deg[j] - state.Lp[j]), rj2)
    at_l = state.tables[l].angle_between(rl1, rl2)
    return WitnessAngles(up_i, up_j, at_l)


def _record_edge(state: FBState, i: int, j: int) -> None:
    state.edges.add((min(i, j), max(i, j)))
    state.F[i, j] = state.L[i] + 1
    state.B[j, i] = state.deg[j] - state.Lp[j]
    state.L[i] += 1
    state.Lp[j] += 1
    state.I[i] = j
    state.Ip[j] = i


def run_iteration(state: FBState, k: int, algorithm: str = "improved") -> None:
    """Pure-Python reference sweep for separation k (used by tests)."""
    n = state.n
    for i in range(n):
        j = (i + k) % n
        if algorithm == "improved":
            candidates = [int(state.I[i])]
        else:
            candidates = [(i + t) % n for t in range(1, k)]
        for l in candidates:
            if state.F[i, l] == 0 or state.B[j, l] == 0:
                continue
            w = witness_sum(state, i, j, l)
            if abs(w.total - math.pi) <= EPS_ANGLE:
                if state.F[i, j] == 0 and state.F[j, i] == 0:
                    _record_edge(state, i, j)
                break


def run_sweep(data: AngleData, algorithm: str = "improved") -> VisibilityGraph:
    """Full pure-Python reconstruction; reference for the compiled kernels."""
    state = init_state(data)
    for k in range(2, (data.n + 1) // 2 + 1):
        run_iteration(state, k, algorithm)
    edges = np.array(sorted(state.edges), dtype=np.int32).reshape(-1, 2)
    return VisibilityGraph(data.n, edges)


def reconstruct(data: AngleData, algorithm: str = "improved") -> ReconResult:
    """Reconstruct the visibility graph and report operation counters."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    _check_structure(data)
    prefix = data.prefix_matrix()
    deg = np.ascontiguousarray(data.degrees, dtype=np.int64)
    eu, ev, m, checks, sums, near, max_acc, min_rej, err = _kernels.reconstruct_kernel(
        deg, prefix, EPS_ANGLE, algorithm == "improved"
    )
    if err != _kernels.OK:
        raise InconsistentInput(
            f"rank-table violation during the {algorithm} sweep (code {err})"
        )
    if near:
        logger.warning(
            "%d witness sums within (eps, 10*eps] of pi; tolerance is fragile here",
            near,
        )
    graph = VisibilityGraph(data.n, np.column_stack([eu[:m], ev[:m]]))
    stats = ReconStats(int(checks), int(sums), int(near), float(max_acc), float(min_rej))
    return ReconResult(graph, stats)


def reconstruct_original(data: AngleData) -> VisibilityGraph:
    return reconstruct(data, "original").graph


def reconstruct_improved(data: AngleData) -> VisibilityGraph:
    return reconstruct(data, "improved").graph


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    stage: Optional[str] = None
    detail: Optional[str] = None

    def __str__(self) -> str:
        if self.consistent:
            return "Consistent"
        return f"Inconsistent at {self.stage}: {self.detail}"


#: Tolerance for the angle-by-angle round-trip comparison.
ROUNDTRIP_TOL = 1e-6


def detect_inconsistency(data: AngleData) -> ConsistencyReport:
    """Decide whether the angle data can belong to any simple polygon.

    Structural checks first, then a reconstruction run, then the full
    round trip: embed the graph, re-measure the embedded polygon and compare
    angle-by-angle.
    """
    from .embed import embed  # deferred: embed imports this module's graphs
    from .oracle import measure_angles, validate_polygon

    try:
        _check_structure(data)
    except InconsistentInput as exc:
        return ConsistencyReport(False, "structure", str(exc))
    if int(data.degrees.sum()) % 2 != 0:
        return ConsistencyReport(False, "structure", "odd total degree")
    expected = (data.n - 2) * math.pi
    if abs(data.total_interior() - expected) > 1e-9 * data.n:
        return ConsistencyReport(
            False, "structure",
            f"interior angle total {data.total_interior():.12g} != (n-2)*pi",
        )
    try:
        result = reconstruct(data, "improved")
    except InconsistentInput as exc:
        return ConsistencyReport(False, "reconstruction", str(exc))
    got = result.graph.degrees()
    if not np.array_equal(got, data.degrees):
        bad = int(np.nonzero(got != data.degrees)[0][0])
        return ConsistencyReport(
            False, "degrees",
            f"vertex {bad}: reconstructed degree {int(got[bad])}, claimed {int(data.degrees[bad])}",
        )
    try:
        poly = embed(result.graph, data)
    except Exception as exc:  # MalformedGraph / NumericallyDegenerate
        return ConsistencyReport(False, "embedding", str(exc))
    report = validate_polygon(poly)
    if not report.ok:
        return ConsistencyReport(False, "embedding", f"embedded polygon invalid: {report}")
    remeasured = measure_angles(poly)
    if not np.array_equal(remeasured.degrees, data.degrees):
        return ConsistencyReport(False, "round-trip", "degree mismatch after re-measurement")
    for i in range(data.n):
        dev = float(np.max(np.abs(remeasured.angles[i] - data.angles[i])))
        if dev > ROUNDTRIP_TOL:
            return ConsistencyReport(
                False, "round-trip",
                f"vertex {i}: angle deviates by {dev:.3g} rad after re-measurement",
            )
    return ConsistencyReport(True)
