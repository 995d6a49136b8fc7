from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scavenger.core.qcore import (
    ORIGIN,
    QPoint3,
    QVec3,
    dist_sq,
    is_squarefree,
    midpoint,
    norm_sq,
    parse_point,
    parse_rational,
    rational_square_root,
    reduce_distance,
    squarefree_part,
    to_rational,
)
from scavenger.errors import ParseError, PreconditionError

F = Fraction
positive_fractions = st.fractions(min_value=F(1, 10**6), max_value=10**6, max_denominator=10**4)


def test_norm_sq_examples():
    assert norm_sq(QVec3(F(14, 3), F(1, 3), F(1, 3))) == 22
    assert norm_sq(QVec3(0, 0, 0)) == 0
    assert norm_sq(QVec3(F(19, 3), F(38, 15), F(19, 15))) == F(722, 15)


def test_dist_sq_examples():
    assert dist_sq(ORIGIN, QPoint3(3, 3, 2)) == 22
    assert dist_sq(QPoint3(1, 3, 4), QPoint3(-1, -2, 5)) == 30
    p = QPoint3(F(1, 7), -2, F(5, 3))
    assert dist_sq(p, p) == 0


@given(st.tuples(*[st.fractions(max_denominator=50)] * 6))
def test_dist_sq_is_symmetric(coords):
    p, q = QPoint3(*coords[:3]), QPoint3(*coords[3:])
    assert dist_sq(p, q) == dist_sq(q, p) == norm_sq(p - q)


def test_points_and_vectors():
    p, q = QPoint3(1, 2, 3), QPoint3(3, 2, 1)
    assert q - p == QVec3(2, 0, -2)
    assert p + QVec3(2, 0, -2) == q
    assert midpoint(p, q) == QPoint3(2, 2, 2)
    assert QVec3(1, 0, 0).cross(QVec3(0, 1, 0)) == QVec3(0, 0, 1)
    assert str(QPoint3(F(-1, 2), 0, 3)) == "-1/2 0 3"


def test_squarefree_part():
    assert squarefree_part(12) == 3
    assert squarefree_part(22) == 22
    assert squarefree_part(40) == 10
    assert squarefree_part(1) == 1
    with pytest.raises(PreconditionError):
        squarefree_part(0)


@given(st.integers(min_value=1, max_value=10**9))
def test_squarefree_part_divides_out_a_square(n):
    core = squarefree_part(n)
    assert n % core == 0
    assert rational_square_root(n // core) is not None
    assert is_squarefree(core)


def test_rational_square_root():
    assert rational_square_root(F(9, 4)) == F(3, 2)
    assert rational_square_root(0) == 0
    assert rational_square_root(2) is None
    assert rational_square_root(F(4, 3)) is None
    with pytest.raises(PreconditionError):
        rational_square_root(-1)


@given(st.fractions(max_denominator=10**6))
def test_rational_square_root_of_square(q):
    assert rational_square_root(q * q) == abs(q)


def test_parse_rational():
    assert parse_rational("-3/6") == F(-1, 2)
    assert parse_rational(" 7 ") == 7
    with pytest.raises(ParseError, match="zero denominator"):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("1.5")


def test_parse_point_reports_position():
    assert parse_point("1/3 -2 0") == QPoint3(F(1, 3), -2, 0)
    with pytest.raises(ParseError) as info:
        parse_point("1 x 3", line=4)
    assert (info.value.line, info.value.column) == (4, 3)
    with pytest.raises(ParseError):
        parse_point("1 2")


def test_to_rational_rejects_floats():
    assert to_rational("5/10") == F(1, 2)
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_reduce_distance_examples():
    assert reduce_distance(88) == (22, 2)
    assert reduce_distance(F(539, 30)) == (330, F(7, 30))
    with pytest.raises(PreconditionError):
        reduce_distance(0)


@given(positive_fractions)
def test_reduce_distance_recovers_q(q):
    r, scale = reduce_distance(q)
    assert scale * scale * r == q
    assert is_squarefree(r)
