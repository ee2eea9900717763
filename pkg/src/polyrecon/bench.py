"""Benchmark runner: operation counters first, wall time second.

Candidate-check counters are deterministic for a fixed input, which makes
the O(n)-factor saving of the improved sweep testable independent of the
machine.  Inputs come from two families: ``random`` (2-opt untangled simple
polygons, measured by the brute-force oracle) and ``convex`` (vertices on a
circle, measured in O(n^2)); the convex family keeps large sizes feasible,
since the forward oracle itself is cubic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np

from .oracle import (
    AngleData,
    measure_angles,
    measure_angles_convex,
    random_convex_polygon,
    random_simple_polygon,
)
from .recon import reconstruct

FAMILIES = ("random", "convex")

CSV_HEADER = "algorithm,n,wall_time,candidate_checks,edges_found"


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    n: int
    wall_time: float
    candidate_checks: int
    edges_found: int

    def csv_row(self) -> str:
        return (
            f"{self.algorithm},{self.n},{self.wall_time:.17g},"
            f"{self.candidate_checks},{self.edges_found}"
        )


def make_input(n: int, seed: int, family: str = "random") -> AngleData:
    """Deterministic benchmark input for one size."""
    if family == "random":
        return measure_angles(random_simple_polygon(n, seed))
    if family == "convex":
        return measure_angles_convex(random_convex_polygon(n, seed))
    raise ValueError(f"unknown family {family!r}")


def warm_up() -> None:
    """Trigger JIT compilation so wall times measure the algorithms only."""
    data = make_input(8, 0, "convex")
    for algorithm in ("original", "improved"):
        reconstruct(data, algorithm)


def run_bench(
    sizes: Sequence[int],
    repeats: int = 1,
    seed: int = 0,
    algorithms: Iterable[str] = ("original", "improved"),
    family: str = "random",
) -> List[BenchRecord]:
    warm_up()
    records = []
    for n in sizes:
        data = make_input(n, seed + n, family)
        for algorithm in algorithms:
            for _rep in range(repeats):
                t0 = time.perf_counter()
                result = reconstruct(data, algorithm)
                elapsed = time.perf_counter() - t0
                records.append(BenchRecord(
                    algorithm=algorithm,
                    n=n,
                    wall_time=elapsed,
                    candidate_checks=result.stats.candidate_checks,
                    edges_found=result.graph.m,
                ))
    return records


def write_csv(records: Sequence[BenchRecord], path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(CSV_HEADER + "\n")
        for rec in records:
            fh.write(rec.csv_row() + "\n")
