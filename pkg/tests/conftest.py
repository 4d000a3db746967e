import os
import pathlib
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lietp.poset import build_poset

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")


@pytest.fixture(scope="session")
def data_dir():
    return pathlib.Path(DATA_DIR).resolve()


@pytest.fixture
def chain2():
    return build_poset(["1", "2"], [("1", "2")])


@pytest.fixture
def chain3():
    return build_poset(["1", "2", "3"], [("1", "2"), ("2", "3")])


@pytest.fixture
def chain5():
    labels = ["1", "2", "3", "4", "5"]
    return build_poset(labels, list(zip(labels, labels[1:])))


@pytest.fixture
def vee():
    return build_poset(["1", "2", "3"], [("1", "2"), ("1", "3")])


@pytest.fixture
def branch4():
    return build_poset(["1", "2", "3", "4"],
                       [("1", "2"), ("2", "3"), ("1", "4")])


@pytest.fixture
def zigzag():
    return build_poset(["1", "2", "3", "4"],
                       [("1", "3"), ("2", "3"), ("2", "4")])


@pytest.fixture
def crown():
    return build_poset(["1", "2", "3", "4"],
                       [("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")])


@pytest.fixture
def twochains():
    return build_poset(["1", "2", "3", "4", "5"],
                       [("1", "2"), ("2", "4"), ("1", "3"), ("3", "5")])
