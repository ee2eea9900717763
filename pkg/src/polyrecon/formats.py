"""POLY / ANGLES / GRAPH text formats.

POLY:   ``POLY <n>`` then n lines ``<x> <y>``, vertex 0 first, CCW.
ANGLES: ``PRA <n>`` then per vertex ``V <i> <deg>`` and one line of
        deg-1 space-separated radian values.
GRAPH:  ``VG <n>`` then one line ``E <i> <j>`` per edge, i < j, sorted.

Serializers emit 17 significant digits so files are bit-stable.
"""

from __future__ import annotations

from typing import List, TextIO, Union

import numpy as np

from .errors import FormatError
from .oracle import AngleData, Polygon, VisibilityGraph

PathLike = Union[str, "os.PathLike[str]"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _read_lines(path: PathLike) -> List[str]:
    with open(path, "r", encoding="ascii") as fh:
        return [ln.rstrip("\n") for ln in fh]


def _header(lines: List[str], tag: str, path) -> int:
    if not lines:
        raise FormatError(f"{path}: empty file")
    parts = lines[0].split()
    if len(parts) != 2 or parts[0] != tag:
        raise FormatError(f"{path}: expected '{tag} <n>' header, got {lines[0]!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError(f"{path}: bad vertex count {parts[1]!r}") from None
    return n


def write_poly(poly: Polygon, path: PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"POLY {poly.n}\n")
        for x, y in poly.coords:
            fh.write(f"{_fmt(x)} {_fmt(y)}\n")


def read_poly(path: PathLike) -> Polygon:
    lines = _read_lines(path)
    n = _header(lines, "POLY", path)
    if len(lines) < n + 1:
        raise FormatError(f"{path}: expected {n} coordinate lines")
    coords = np.empty((n, 2), dtype=np.float64)
    for r in range(n):
        parts = lines[1 + r].split()
        if len(parts) != 2:
            raise FormatError(f"{path}: line {r + 2}: expected '<x> <y>'")
        try:
            coords[r] = (float(parts[0]), float(parts[1]))
        except ValueError:
            raise FormatError(f"{path}: line {r + 2}: bad coordinate") from None
    if not np.all(np.isfinite(coords)):
        raise FormatError(f"{path}: non-finite coordinate")
    return Polygon(coords)


def write_angles(data: AngleData, path: PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"PRA {data.n}\n")
        for i in range(data.n):
            fh.write(f"V {i} {int(data.degrees[i])}\n")
            fh.write(" ".join(_fmt(a) for a in data.angles[i]) + "\n")


def read_angles(path: PathLike) -> AngleData:
    lines = _read_lines(path)
    n = _header(lines, "PRA", path)
    degrees = np.empty(n, dtype=np.int64)
    angles = []
    row = 1
    for i in range(n):
        if row + 1 >= len(lines) + 1:
            raise FormatError(f"{path}: truncated at vertex {i}")
        parts = lines[row].split()
        if len(parts) != 3 or parts[0] != "V" or parts[1] != str(i):
            raise FormatError(f"{path}: line {row + 1}: expected 'V {i} <deg>'")
        try:
            deg = int(parts[2])
        except ValueError:
            raise FormatError(f"{path}: line {row + 1}: bad degree") from None
        if row + 1 >= len(lines):
            raise FormatError(f"{path}: missing angle line for vertex {i}")
        try:
            vals = np.array([float(v) for v in lines[row + 1].split()], dtype=np.float64)
        except ValueError:
            raise FormatError(f"{path}: line {row + 2}: bad angle value") from None
        if len(vals) != deg - 1:
            raise FormatError(
                f"{path}: vertex {i}: {len(vals)} angles for degree {deg}"
            )
        degrees[i] = deg
        angles.append(vals)
        row += 2
    return AngleData(degrees, angles)


def write_graph(g: VisibilityGraph, path: PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"VG {g.n}\n")
        for a, b in g.edges:
            fh.write(f"E {a} {b}\n")


def read_graph(path: PathLike) -> VisibilityGraph:
    lines = _read_lines(path)
    n = _header(lines, "VG", path)
    edges = []
    for ln_no, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "E":
            raise FormatError(f"{path}: line {ln_no}: expected 'E <i> <j>'")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise FormatError(f"{path}: line {ln_no}: bad index") from None
        if not (0 <= a < b < n):
            raise FormatError(f"{path}: line {ln_no}: edge ({a}, {b}) out of range")
        edges.append((a, b))
    return VisibilityGraph(n, np.array(edges, dtype=np.int32).reshape(-1, 2))
