from fractions import Fraction
from pathlib import Path

import pytest

import tatgraphs
from tatgraphs.formats import parse_graph, parse_nielsen

FIXTURES = Path(tatgraphs.__file__).parent / "fixtures"


def load(name: str):
    text = (FIXTURES / name).read_text()
    return parse_nielsen(text) if name.endswith(".nls") else parse_graph(text)


def F(x, y=1):
    return Fraction(x, y)


@pytest.fixture(scope="session")
def fixture_path():
    return FIXTURES


@pytest.fixture(scope="session")
def nested():
    return load("nested_tori.tat")


@pytest.fixture(scope="session")
def spoked():
    return load("spoked_tori.tat")
