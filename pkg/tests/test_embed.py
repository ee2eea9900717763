import math

import numpy as np
import pytest

from polyrecon import (
    Polygon,
    embed,
    measure_angles,
    random_simple_polygon,
    reconstruct_improved,
    similarity_compare,
    triangulate,
    visibility_graph_oracle,
)
from polyrecon.embed import corner_angles
from polyrecon.errors import MalformedGraph, SizeMismatch
from polyrecon.oracle import HEXL, SQ, TRI, VisibilityGraph


def segments_cross(a, b, c, d):
    def o(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (o(a, b, c) * o(a, b, d) < 0) and (o(c, d, a) * o(c, d, b) < 0)


class TestTriangulate:
    def test_triangle(self, tri_data):
        g = visibility_graph_oracle(TRI)
        assert triangulate(g, tri_data).triangles == ((0, 1, 2),)

    def test_square(self, sq_data):
        g = visibility_graph_oracle(SQ)
        t = triangulate(g, sq_data)
        assert t.triangles == ((0, 2, 3), (0, 1, 2))
        assert t.diagonals == {(0, 2)}

    def test_hexl_counts_and_membership(self, hexl_graph, hexl_data):
        t = triangulate(hexl_graph, hexl_data)
        assert len(t.triangles) == 4
        assert len(t.diagonals) == 3
        edges = hexl_graph.edge_set()
        for a, l, b in t.triangles:
            for e in ((a, l), (l, b), (a, b)):
                assert e in edges

    def test_hexl_triangles_are_empty(self, hexl_graph, hexl_data):
        # Every emitted triangle must avoid the polygon boundary: geometric
        # confirmation of the witness-based recursion, from coordinates.
        t = triangulate(hexl_graph, hexl_data)
        c = HEXL.coords
        for a, l, b in t.triangles:
            for e in range(HEXL.n):
                f = (e + 1) % HEXL.n
                for u, v in ((a, l), (l, b), (a, b)):
                    assert not segments_cross(c[u], c[v], c[e], c[f])

    @pytest.mark.parametrize("n,seed", [(12, 0), (20, 3), (33, 8)])
    def test_random_counts(self, n, seed):
        p = random_simple_polygon(n, seed)
        g = visibility_graph_oracle(p)
        t = triangulate(g, measure_angles(p, g))
        assert len(t.triangles) == n - 2
        assert len(t.diagonals) == n - 3
        # Each diagonal is shared by exactly two triangles.
        count = {}
        boundary = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
        for tri in t.triangles:
            a, l, b = tri
            for e in ((a, l), (l, b), (a, b)):
                count[e] = count.get(e, 0) + 1
        for e, c in count.items():
            assert c == (1 if e in boundary else 2)

    def test_malformed_graph(self):
        # Boundary-only cycle on 5 vertices: no diagonal can close any chain.
        edges = np.array([(i, i + 1) for i in range(4)] + [(0, 4)], dtype=np.int32)
        with pytest.raises(MalformedGraph):
            triangulate(VisibilityGraph(5, edges))


class TestCornerAngles:
    def test_sums_to_pi(self, hexl_graph, hexl_data):
        t = triangulate(hexl_graph, hexl_data)
        sums = corner_angles(hexl_graph, hexl_data, t).sum(axis=1)
        assert np.allclose(sums, math.pi, atol=3e-7)


class TestEmbed:
    def test_triangle_angles(self, tri_data):
        g = visibility_graph_oracle(TRI)
        e = embed(g, tri_data)
        sim = similarity_compare(e, TRI, 1e-9)
        assert sim.matched

    def test_square_unit_edges(self, sq_data):
        g = visibility_graph_oracle(SQ)
        e = embed(g, sq_data)
        lengths = np.linalg.norm(np.roll(e.coords, -1, axis=0) - e.coords, axis=1)
        assert np.allclose(lengths, 1.0, atol=1e-12)

    def test_base_normalization(self, hexl_graph, hexl_data):
        e = embed(hexl_graph, hexl_data)
        assert np.allclose(e.coords[0], (0, 0), atol=1e-15)
        assert np.allclose(e.coords[-1], (1, 0), atol=1e-15)
        assert e.signed_area() > 0

    def test_hexl_scale_is_one_third(self, hexl_graph, hexl_data):
        e = embed(hexl_graph, hexl_data)
        sim = similarity_compare(HEXL, e, 1e-6)
        assert sim.matched
        assert sim.scale == pytest.approx(1 / 3, abs=1e-12)

    @pytest.mark.parametrize("n,seed", [(10, 1), (24, 5), (48, 9)])
    def test_round_trip(self, n, seed):
        p = random_simple_polygon(n, seed)
        data = measure_angles(p)
        e = embed(reconstruct_improved(data), data)
        assert similarity_compare(p, e, 1e-6).matched

    @pytest.mark.parametrize("n,seed", [(9, 2), (18, 4)])
    def test_remeasure_idempotence(self, n, seed):
        p = random_simple_polygon(n, seed)
        data = measure_angles(p)
        e = embed(reconstruct_improved(data), data)
        again = measure_angles(e)
        assert np.array_equal(again.degrees, data.degrees)
        for a, b in zip(again.angles, data.angles):
            assert np.max(np.abs(a - b)) <= 1e-6


class TestSimilarityCompare:
    def test_exact_similarity_recovered(self):
        theta = math.pi / 6
        rot = np.array([[math.cos(theta), -math.sin(theta)],
                        [math.sin(theta), math.cos(theta)]])
        q = Polygon(HEXL.coords @ rot.T * 2.0 + np.array([5.0, 7.0]))
        sim = similarity_compare(HEXL, q, 1e-9)
        assert sim.matched
        assert sim.scale == pytest.approx(2.0, abs=1e-12)
        assert sim.rotation == pytest.approx(theta, abs=1e-12)
        assert sim.max_relative_deviation <= 1e-12

    def test_mismatch_not_matched(self):
        q = Polygon(HEXL.coords.copy())
        q.coords[3] += 0.5
        sim = similarity_compare(HEXL, q, 1e-6)
        assert not sim.matched

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            similarity_compare(SQ, TRI)
