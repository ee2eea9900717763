"""Angle and orientation primitives with O(1) angle-range queries.

Every angle in this package is a plain float in radians, normalized into
[0, 2*pi).  Per-vertex cumulative angle tables (:class:`PrefixTable`) make
any rank-to-rank angle query a single subtraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DegeneratePoints, InvalidAngleSequence, RankOutOfRange

TAU = 2.0 * math.pi

#: Absolute tolerance for every angle comparison in the package.  Input
#: angles derived from double-precision coordinates carry ~1e-12 error per
#: arctangent; 1e-7 leaves generous headroom while still rejecting genuinely
#: distinct angle sums.
EPS_ANGLE = 1e-7

#: Orientation tolerance scale: the signed-area predicate treats a triple as
#: collinear when |2*area| <= AREA_EPS_SCALE * (max coordinate magnitude)^2.
AREA_EPS_SCALE = 1e-12


def normalize_angle(theta: float) -> float:
    """Reduce an angle into [0, 2*pi)."""
    r = theta % TAU
    # A tiny negative input can round to exactly TAU under fmod.
    if r >= TAU:
        return 0.0
    return r


def ccw_angle(from_dir: float, to_dir: float) -> float:
    """CCW rotation taking ray direction ``from_dir`` onto ``to_dir``."""
    return normalize_angle(to_dir - from_dir)


def direction(p, q) -> float:
    """Direction of the ray p -> q, CCW from the positive x-axis, in [0, 2*pi)."""
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    if dx == 0.0 and dy == 0.0:
        raise DegeneratePoints(f"direction undefined for coincident points {tuple(p)}")
    return normalize_angle(math.atan2(dy, dx))


class Orientation(Enum):
    CCW = 1
    COLLINEAR = 0
    CW = -1


def orientation(p, q, r) -> Orientation:
    """Sign of the signed area of triangle (p, q, r), with a relative tolerance."""
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    m = max(abs(p[0]), abs(p[1]), abs(q[0]), abs(q[1]), abs(r[0]), abs(r[1]))
    tol = AREA_EPS_SCALE * m * m
    if abs(cross) <= tol:
        return Orientation.COLLINEAR
    return Orientation.CCW if cross > 0.0 else Orientation.CW


@dataclass(frozen=True)
class PrefixTable:
    """Cumulative visibility angles at one vertex.

    ``cumulative[t-1]`` is the CCW angle from the ray to the first visible
    vertex (the CCW boundary neighbour) to the ray to the t-th visible
    vertex; ``cumulative[0] == 0``.
    """

    cumulative: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.cumulative)

    @property
    def interior_angle(self) -> float:
        return float(self.cumulative[-1])

    def angle_between(self, s: int, t: int) -> float:
        """Angle between the rays to the s-th and t-th visible vertices, s < t."""
        if not (1 <= s < t <= self.degree):
            raise RankOutOfRange(f"ranks ({s}, {t}) invalid for degree {self.degree}")
        return float(self.cumulative[t - 1] - self.cumulative[s - 1])


def build_prefix(angles: Sequence[float], degree: int) -> PrefixTable:
    """Build the cumulative table from the ``degree - 1`` consecutive gaps."""
    gaps = np.asarray(angles, dtype=np.float64)
    if gaps.ndim != 1 or len(gaps) != degree - 1:
        raise InvalidAngleSequence(
            f"expected {degree - 1} angles for degree {degree}, got {len(gaps)}"
        )
    if np.any(gaps <= 0.0):
        raise InvalidAngleSequence("non-positive visibility angle")
    total = float(gaps.sum())
    if total >= TAU:
        raise InvalidAngleSequence(f"angle sum {total} >= 2*pi")
    cumulative = np.empty(degree, dtype=np.float64)
    cumulative[0] = 0.0
    np.cumsum(gaps, out=cumulative[1:])
    return PrefixTable(cumulative)
