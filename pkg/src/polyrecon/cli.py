"""Command-line surface.

Exit codes: 0 success, 1 verification/consistency failure, 2 usage or parse
error.
"""

from __future__ import annotations

import sys

import click

from . import bench as bench_mod
from . import formats
from .errors import FormatError, GenerationFailed, InconsistentInput, PolyreconError
from .oracle import (
    measure_angles,
    random_simple_polygon,
    validate_polygon,
    visibility_graph_oracle,
)
from .recon import detect_inconsistency, reconstruct
from .embed import embed, similarity_compare


def _fail(message: str, code: int = 1) -> None:
    click.echo(message, err=True)
    sys.exit(code)


@click.group()
def main() -> None:
    """Reconstruct simple polygons from per-vertex visibility angles."""


@main.command()
@click.option("--n", "n", type=int, required=True, help="Vertex count (>= 3).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def generate(n: int, seed: int, out: str) -> None:
    """Write a deterministic random simple polygon as a POLY file."""
    if n < 3:
        raise click.UsageError(f"--n must be >= 3, got {n}")
    try:
        poly = random_simple_polygon(n, seed)
    except GenerationFailed as exc:
        _fail(f"GenerationFailed: {exc}")
    formats.write_poly(poly, out)


@main.command()
@click.option("--poly", "poly_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), required=True)
def measure(poly_path: str, out: str) -> None:
    """Measure the visibility angle sequences of a POLY file."""
    try:
        poly = formats.read_poly(poly_path)
    except FormatError as exc:
        _fail(str(exc), code=2)
    report = validate_polygon(poly)
    if not report.ok:
        _fail(str(report))
    formats.write_angles(measure_angles(poly), out)


@main.command("reconstruct")
@click.option("--angles", "angles_path", type=click.Path(exists=True), required=True)
@click.option("--algorithm", type=click.Choice(["original", "improved"]),
              default="improved", show_default=True)
@click.option("--out-graph", type=click.Path(), required=True)
@click.option("--out-poly", type=click.Path(), default=None,
              help="Also embed coordinates and write a canonical POLY file.")
def reconstruct_cmd(angles_path: str, algorithm: str, out_graph: str, out_poly) -> None:
    """Reconstruct the visibility graph from an ANGLES file."""
    try:
        data = formats.read_angles(angles_path)
    except FormatError as exc:
        _fail(str(exc), code=2)
    verdict = detect_inconsistency(data)
    if not verdict.consistent:
        _fail(f"Inconsistent: {verdict}")
    try:
        graph = reconstruct(data, algorithm).graph
    except InconsistentInput as exc:
        _fail(f"Inconsistent: {exc}")
    formats.write_graph(graph, out_graph)
    if out_poly is not None:
        formats.write_poly(embed(graph, data), out_poly)


@main.command()
@click.option("--poly", "poly_path", type=click.Path(exists=True), required=True)
@click.option("--tol", type=float, default=1e-6, show_default=True)
def verify(poly_path: str, tol: float) -> None:
    """Round trip: measure, reconstruct, embed, compare up to similarity."""
    try:
        poly = formats.read_poly(poly_path)
    except FormatError as exc:
        _fail(str(exc), code=2)
    report = validate_polygon(poly)
    if not report.ok:
        _fail(f"validation: {report}")
    try:
        data = measure_angles(poly)
    except PolyreconError as exc:
        _fail(f"measure: {exc}")
    try:
        graph = reconstruct(data, "improved").graph
    except PolyreconError as exc:
        _fail(f"reconstruct: {exc}")
    truth = visibility_graph_oracle(poly)
    graph_match = graph == truth
    try:
        embedded = embed(graph, data)
    except PolyreconError as exc:
        _fail(f"embed: {exc}")
    sim = similarity_compare(embedded, poly, tol)
    consistency = detect_inconsistency(data)
    click.echo(f"graph_match={graph_match}")
    click.echo(str(sim))
    click.echo(str(consistency))
    if not (graph_match and sim.matched and consistency.consistent):
        sys.exit(1)


@main.command()
@click.option("--angles", "angles_path", type=click.Path(exists=True), required=True)
def diff(angles_path: str) -> None:
    """Run both algorithms and compare edge sets and candidate counters."""
    try:
        data = formats.read_angles(angles_path)
    except FormatError as exc:
        _fail(str(exc), code=2)
    try:
        original = reconstruct(data, "original")
        improved = reconstruct(data, "improved")
    except InconsistentInput as exc:
        _fail(f"Inconsistent: {exc}")
    if original.graph != improved.graph:
        _fail(
            "MISMATCH: edge sets differ "
            f"(original {original.graph.m}, improved {improved.graph.m})"
        )
    click.echo(
        f"MATCH edges={original.graph.m} "
        f"original_checks={original.stats.candidate_checks} "
        f"improved_checks={improved.stats.candidate_checks}"
    )


@main.command()
@click.option("--sizes", required=True, help="Comma-separated vertex counts.")
@click.option("--repeats", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(), required=True)
@click.option("--algorithms", default="original,improved", show_default=True)
@click.option("--family", type=click.Choice(list(bench_mod.FAMILIES)),
              default="random", show_default=True)
def bench(sizes: str, repeats: int, seed: int, csv_path: str,
          algorithms: str, family: str) -> None:
    """Benchmark the algorithms; one CSV row per (algorithm, size, repeat)."""
    try:
        size_list = [int(s) for s in sizes.split(",") if s.strip()]
    except ValueError:
        raise click.UsageError(f"bad --sizes {sizes!r}") from None
    if not size_list or any(s < 3 for s in size_list):
        raise click.UsageError("--sizes must list integers >= 3")
    algos = [a.strip() for a in algorithms.split(",") if a.strip()]
    if any(a not in ("original", "improved") for a in algos):
        raise click.UsageError(f"bad --algorithms {algorithms!r}")
    records = bench_mod.run_bench(size_list, repeats, seed, algos, family)
    bench_mod.write_csv(records, csv_path)
    click.echo(f"wrote {len(records)} records to {csv_path}")


if __name__ == "__main__":
    main()
