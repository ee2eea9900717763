import numpy as np
import pytest

from polyrecon import measure_angles, random_simple_polygon, visibility_graph_oracle
from polyrecon.oracle import HEXL, SQ, TRI


@pytest.fixture(scope="session")
def hexl_graph():
    return visibility_graph_oracle(HEXL)


@pytest.fixture(scope="session")
def hexl_data():
    return measure_angles(HEXL)


@pytest.fixture(scope="session")
def sq_data():
    return measure_angles(SQ)


@pytest.fixture(scope="session")
def tri_data():
    return measure_angles(TRI)


CORPUS_SIZES = (8, 16, 32, 64, 128)
CORPUS_SEEDS = tuple(range(40))


@pytest.fixture(scope="session")
def corpus():
    """The 200 random polygons shared by the acceptance criteria."""
    out = []
    for n in CORPUS_SIZES:
        for seed in CORPUS_SEEDS:
            poly = random_simple_polygon(n, seed)
            graph = visibility_graph_oracle(poly)
            data = measure_angles(poly, graph)
            out.append((n, seed, poly, graph, data))
    return out
