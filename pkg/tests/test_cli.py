import numpy as np
from click.testing import CliRunner

from polyrecon import formats, measure_angles, visibility_graph_oracle
from polyrecon.bench import CSV_HEADER
from polyrecon.cli import main
from polyrecon.oracle import HEXL, Polygon


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


class TestGenerate:
    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.poly", tmp_path / "b.poly"
        assert run("generate", "--n", 16, "--seed", 7, "--out", a).exit_code == 0
        assert run("generate", "--n", 16, "--seed", 7, "--out", b).exit_code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_changes_output(self, tmp_path):
        a, b = tmp_path / "a.poly", tmp_path / "b.poly"
        run("generate", "--n", 16, "--seed", 1, "--out", a)
        run("generate", "--n", 16, "--seed", 2, "--out", b)
        assert a.read_bytes() != b.read_bytes()

    def test_n_too_small_is_usage_error(self, tmp_path):
        assert run("generate", "--n", 2, "--out", tmp_path / "x.poly").exit_code == 2


class TestMeasure:
    def test_happy_path(self, tmp_path):
        poly_p, ang_p = tmp_path / "h.poly", tmp_path / "h.angles"
        formats.write_poly(HEXL, poly_p)
        result = run("measure", "--poly", poly_p, "--out", ang_p)
        assert result.exit_code == 0
        back = formats.read_angles(ang_p)
        truth = measure_angles(HEXL)
        assert np.array_equal(back.degrees, truth.degrees)

    def test_nonsimple_rejected(self, tmp_path):
        bowtie = Polygon.from_points([(0, 0), (1, 1), (1, 0), (0, 1)])
        poly_p = tmp_path / "bow.poly"
        formats.write_poly(bowtie, poly_p)
        result = run("measure", "--poly", poly_p, "--out", tmp_path / "x.angles")
        assert result.exit_code == 1
        assert "NotSimple" in result.output

    def test_malformed_poly_is_exit_2(self, tmp_path):
        poly_p = tmp_path / "bad.poly"
        poly_p.write_text("POLY 3\n0 0\n1\n0 1\n")
        result = run("measure", "--poly", poly_p, "--out", tmp_path / "x.angles")
        assert result.exit_code == 2


class TestReconstruct:
    def test_graph_matches_oracle(self, tmp_path):
        ang_p, g_p = tmp_path / "h.angles", tmp_path / "h.graph"
        formats.write_angles(measure_angles(HEXL), ang_p)
        result = run("reconstruct", "--angles", ang_p, "--out-graph", g_p)
        assert result.exit_code == 0
        assert formats.read_graph(g_p) == visibility_graph_oracle(HEXL)

    def test_out_poly_round_trips(self, tmp_path):
        ang_p = tmp_path / "h.angles"
        formats.write_angles(measure_angles(HEXL), ang_p)
        g_p, p_p = tmp_path / "h.graph", tmp_path / "h.poly"
        result = run("reconstruct", "--angles", ang_p,
                     "--out-graph", g_p, "--out-poly", p_p)
        assert result.exit_code == 0
        embedded = formats.read_poly(p_p)
        assert visibility_graph_oracle(embedded) == visibility_graph_oracle(HEXL)

    def test_perturbed_angles_are_inconsistent(self, tmp_path):
        data = measure_angles(HEXL)
        data.angles[0][1] += 1e-3
        ang_p = tmp_path / "bad.angles"
        formats.write_angles(data, ang_p)
        result = run("reconstruct", "--angles", ang_p,
                     "--out-graph", tmp_path / "x.graph")
        assert result.exit_code == 1
        assert "Inconsistent" in result.output

    def test_both_algorithms_accepted(self, tmp_path):
        ang_p = tmp_path / "h.angles"
        formats.write_angles(measure_angles(HEXL), ang_p)
        for algo in ("original", "improved"):
            g_p = tmp_path / f"{algo}.graph"
            assert run("reconstruct", "--angles", ang_p, "--algorithm", algo,
                       "--out-graph", g_p).exit_code == 0
        assert (tmp_path / "original.graph").read_bytes() == \
            (tmp_path / "improved.graph").read_bytes()


class TestVerify:
    def test_round_trip_passes(self, tmp_path):
        poly_p = tmp_path / "g.poly"
        run("generate", "--n", 24, "--seed", 3, "--out", poly_p)
        result = run("verify", "--poly", poly_p)
        assert result.exit_code == 0
        assert "graph_match=True" in result.output

    def test_bowtie_fails(self, tmp_path):
        bowtie = Polygon.from_points([(0, 0), (1, 1), (1, 0), (0, 1)])
        poly_p = tmp_path / "bow.poly"
        formats.write_poly(bowtie, poly_p)
        assert run("verify", "--poly", poly_p).exit_code == 1


class TestDiff:
    def test_match_line(self, tmp_path):
        ang_p = tmp_path / "h.angles"
        formats.write_angles(measure_angles(HEXL), ang_p)
        result = run("diff", "--angles", ang_p)
        assert result.exit_code == 0
        assert result.output.startswith("MATCH edges=11 ")
        assert "original_checks=" in result.output
        assert "improved_checks=" in result.output


class TestBench:
    def test_csv_shape(self, tmp_path):
        csv_p = tmp_path / "b.csv"
        result = run("bench", "--sizes", "8,12", "--repeats", 2,
                     "--csv", csv_p, "--algorithms", "improved")
        assert result.exit_code == 0
        lines = csv_p.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 2 * 2
        for line in lines[1:]:
            algo, n, wall, checks, edges = line.split(",")
            assert algo == "improved"
            assert int(n) in (8, 12)
            assert float(wall) >= 0.0
            assert int(checks) > 0
            assert int(edges) >= int(n)

    def test_bad_sizes_is_usage_error(self, tmp_path):
        assert run("bench", "--sizes", "8,banana",
                   "--csv", tmp_path / "b.csv").exit_code == 2
