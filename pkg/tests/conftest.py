import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from selfsim.analysis import analyze
from selfsim.neighbor import build_neighbor_graph
from selfsim.presets import load_preset


@pytest.fixture(scope="session")
def chair():
    return analyze(load_preset("chair"))


@pytest.fixture(scope="session")
def fsquare():
    return analyze(load_preset("fractal-square"))


@pytest.fixture(scope="session")
def sierpinski():
    return analyze(load_preset("sierpinski"))


@pytest.fixture(scope="session")
def example_a_all():
    return analyze(load_preset("example-a"), filter_kind="all")


@pytest.fixture(scope="session")
def chair_graph(chair):
    return chair.graph


@pytest.fixture(scope="session")
def square_tile():
    return analyze(load_preset("square-tile"))


@pytest.fixture(scope="session")
def chair_spec():
    return load_preset("chair")


@pytest.fixture(scope="session")
def fsquare_spec():
    return load_preset("fractal-square")
