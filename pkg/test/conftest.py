from pathlib import Path

import pytest

from scavenger.core.qcore import QPoint3
from scavenger.fileio import parse_vertex_file, read_certificate

DATA = Path(__file__).parent.parent / "scavenger" / "data"

T30_CHART = {
    "x0": QPoint3(0, 0, 0),
    "x1": QPoint3(-1, -2, 5),
    "x2": QPoint3(1, 3, 4),
    "x3": QPoint3("16/3", "8/15", "94/15"),
    "x4": QPoint3(5, 2, 1),
}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def t22_appendix():
    return parse_vertex_file(DATA / "appendix_t22.txt")


@pytest.fixture
def t22_seed():
    return list(parse_vertex_file(DATA / "seed_t22.txt").points)


@pytest.fixture
def t30_certificate():
    return read_certificate(DATA / "appendix_t30.cert")


@pytest.fixture
def t34_certificate():
    return read_certificate(DATA / "appendix_t34.cert")


@pytest.fixture
def t34_uncorrected():
    return read_certificate(DATA / "appendix_t34_uncorrected.cert")


@pytest.fixture
def t66_certificate():
    return read_certificate(DATA / "appendix_t66.cert")


@pytest.fixture
def t30_chart():
    return dict(T30_CHART)
