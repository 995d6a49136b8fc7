from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scavenger.core.geom import (
    CIRCUMRADIUS_TOO_LARGE,
    IRRATIONAL_APEX,
    ConicParam,
    Plane,
    RCircle,
    apex_points,
    bisector_plane,
    circle_param,
    circle_plane_points,
    circumcenter,
    conic_point,
    embed_isosceles,
    equidistant_circle,
    farey_parameters,
    isometry_between,
    rational_point_on_circle,
    reflect,
    reflect_point,
)
from scavenger.core.qcore import ORIGIN, QPoint3, QVec3, dist_sq, norm_sq
from scavenger.errors import (
    CollinearError,
    DegenerateError,
    EmptyIntersectionError,
    PreconditionError,
)

F = Fraction
small_ints = st.integers(min_value=-30, max_value=30)
int_vectors = st.builds(QVec3, small_ints, small_ints, small_ints)

UNIT_CIRCLE = dict(a=1, b=0, c=1, d=0, e=0, f=-1)


def test_bisector_plane():
    assert bisector_plane(ORIGIN, QPoint3(2, 0, 0)).same_as(Plane(QVec3(1, 0, 0), 1))
    assert bisector_plane(ORIGIN, QPoint3(5, 2, 1)).same_as(Plane(QVec3(5, 2, 1), 15))
    assert bisector_plane(QPoint3(1, 1, 1), QPoint3(1, 1, 3)).same_as(Plane(QVec3(0, 0, 1), 2))
    with pytest.raises(PreconditionError):
        bisector_plane(ORIGIN, ORIGIN)


def test_equidistant_circle_examples():
    s = equidistant_circle(QPoint3(-1, -2, 5), QPoint3(F(16, 3), F(8, 15), F(94, 15)), 30)
    assert s.center == QPoint3(F(13, 6), F(-11, 15), F(169, 30))
    assert s.radius_sq == F(539, 30)
    c1 = equidistant_circle(ORIGIN, QPoint3(-8, 5, 3), 34)
    assert c1.center == QPoint3(-4, F(5, 2), F(3, 2))
    assert c1.radius_sq == F(19, 2)
    point = equidistant_circle(ORIGIN, QPoint3(2, 0, 0), 1)
    assert point.degenerate and point.center == QPoint3(1, 0, 0)


def test_equidistant_circle_errors():
    with pytest.raises(EmptyIntersectionError):
        equidistant_circle(ORIGIN, QPoint3(4, 0, 0), 1)
    with pytest.raises(PreconditionError):
        equidistant_circle(ORIGIN, QPoint3(4, 0, 0), 0)


def test_conic_point_unit_circle():
    cp = ConicParam(**UNIT_CIRCLE, base=(F(-1), F(0)))
    assert conic_point(cp, 1) == (0, 1)
    assert conic_point(cp, 0) == (1, 0)
    assert conic_point(cp, None) == (-1, 0)


def test_conic_point_errors():
    hyperbola = ConicParam(a=1, b=0, c=-1, d=0, e=0, f=-1, base=(F(1), F(0)))
    with pytest.raises(DegenerateError):
        conic_point(hyperbola, 1)
    with pytest.raises(PreconditionError):
        ConicParam(**UNIT_CIRCLE, base=(F(1), F(1)))


@given(st.fractions(max_denominator=1000))
def test_conic_point_stays_on_conic(s):
    cp = ConicParam(a=2, b=1, c=3, d=-4, e=F(1, 2), f=2, base=(F(1), F(0)))
    assert cp.evaluate(*conic_point(cp, s)) == 0


def test_circle_param_plane_circle():
    circle = RCircle(ORIGIN, F(1), Plane(QVec3(0, 0, 1), 0))
    param = circle_param(circle, QPoint3(1, 0, 0))
    assert param.eliminated_axis == 2
    assert param.point(1) == QPoint3(0, -1, 0)
    assert param.point(0) == QPoint3(-1, 0, 0)
    assert param.point(None) == QPoint3(1, 0, 0)


def test_circle_param_errors():
    circle = equidistant_circle(ORIGIN, QPoint3(2, 0, 0), 2)
    with pytest.raises(PreconditionError):
        circle_param(circle, QPoint3(1, 2, 0))
    with pytest.raises(DegenerateError):
        circle_param(equidistant_circle(ORIGIN, QPoint3(2, 0, 0), 1), QPoint3(1, 0, 0))


def test_circle_param_t34_circle():
    v0, v1, v2 = ORIGIN, QPoint3(-5, 0, 3), QPoint3(-8, 5, 3)
    param = circle_param(equidistant_circle(v0, v2, 34), v1)
    for s in farey_parameters(6):
        p = param.point(s)
        assert dist_sq(p, v0) == dist_sq(p, v2) == 34


def test_circle_param_inverse():
    v0, v1, v2 = ORIGIN, QPoint3(-5, 0, 3), QPoint3(-8, 5, 3)
    param = circle_param(equidistant_circle(v0, v2, 34), v1)
    assert param.parameter_of(v1) is None
    for s in farey_parameters(4):
        p = param.point(s)
        if p != v1:
            assert param.parameter_of(p) == s
    with pytest.raises(PreconditionError):
        param.parameter_of(v0)


# (p, q, known point at equal distance from both)
CIRCLES_WITH_A_POINT = [
    (ORIGIN, QPoint3(2, 0, 0), QPoint3(1, 2, 3)),
    (ORIGIN, QPoint3(-8, 5, 3), QPoint3(-5, 0, 3)),
    (QPoint3(1, 1, 1), QPoint3(3, 1, 1), QPoint3(2, F(1, 2), 4)),
    (ORIGIN, QPoint3(2, 2, 0), QPoint3(1, 1, 3)),
    (QPoint3(-1, -2, 5), QPoint3(F(16, 3), F(8, 15), F(94, 15)), QPoint3(1, 3, 4)),
    (ORIGIN, QPoint3(0, 0, 2), QPoint3(3, 4, 1)),
    (QPoint3(1, 2, 3), QPoint3(1, 2, 5), QPoint3(2, 2, 4)),
    (ORIGIN, QPoint3(4, 2, 0), QPoint3(3, -1, 2)),
    (QPoint3(F(1, 3), 0, 0), QPoint3(F(-1, 3), 0, 0), QPoint3(0, 1, 1)),
    (ORIGIN, QPoint3(2, 2, 2), QPoint3(3, 0, 0)),
]


@pytest.mark.parametrize("p, q, known", CIRCLES_WITH_A_POINT)
def test_parameterization_exactness(p, q, known):
    t = dist_sq(known, p)
    assert dist_sq(known, q) == t
    param = circle_param(equidistant_circle(p, q, t), known)
    for s in farey_parameters(7)[:100]:
        point = param.point(s)
        assert dist_sq(point, p) == t
        assert dist_sq(point, q) == t


def test_circumcenter_examples():
    assert circumcenter(ORIGIN, QPoint3(1, 0, 0), QPoint3(0, 1, 0)) == (
        QPoint3(F(1, 2), F(1, 2), 0), F(1, 2), QVec3(0, 0, 1)
    )
    assert circumcenter(QPoint3(1, 0, 0), QPoint3(0, 1, 0), QPoint3(0, 0, 1)) == (
        QPoint3(F(1, 3), F(1, 3), F(1, 3)), F(2, 3), QVec3(1, 1, 1)
    )
    with pytest.raises(CollinearError):
        circumcenter(ORIGIN, QPoint3(1, 1, 1), QPoint3(2, 2, 2))


@given(int_vectors, int_vectors, int_vectors)
def test_circumcenter_is_equidistant(a, b, c):
    p1, p2, p3 = ORIGIN + a, ORIGIN + b, ORIGIN + c
    try:
        center, r_sq, normal = circumcenter(p1, p2, p3)
    except CollinearError:
        return
    assert dist_sq(center, p1) == dist_sq(center, p2) == dist_sq(center, p3) == r_sq
    assert normal.dot(p2 - p1) == normal.dot(p3 - p1) == 0


def test_apex_points_examples():
    apex = apex_points(QPoint3(1, 0, 0), QPoint3(0, 1, 0), QPoint3(0, 0, 1), 1)
    assert set(apex) == {ORIGIN, QPoint3(F(2, 3), F(2, 3), F(2, 3))}
    too_small = apex_points(ORIGIN, QPoint3(1, 0, 0), QPoint3(0, 1, 0), F(1, 4))
    assert len(too_small) == 0 and too_small.reason == CIRCUMRADIUS_TOO_LARGE
    irrational = apex_points(ORIGIN, QPoint3(1, 0, 0), QPoint3(0, 1, 0), 1)
    assert len(irrational) == 0 and irrational.reason == IRRATIONAL_APEX


def test_apex_points_recovers_appendix_vertex():
    x4 = QPoint3(0, 5, 3)
    y0 = QPoint3(F(-9, 13), F(-3, 13), F(-12, 13))
    z1 = QPoint3(F(-39, 7), F(-1, 7), F(12, 7))
    apex = apex_points(x4, y0, z1, 34)
    assert QPoint3(F(-159, 227), F(-106, 227), F(1113, 227)) in apex.points
    for q in apex:
        assert dist_sq(q, x4) == dist_sq(q, y0) == dist_sq(q, z1) == 34


def test_reflect_examples():
    assert reflect(QVec3(1, 0, 0), QVec3(1, -1, 0)) == QVec3(0, 1, 0)
    assert reflect(QVec3(1, 0, 0), QVec3(0, 0, 1)) == QVec3(1, 0, 0)
    with pytest.raises(PreconditionError):
        reflect(QVec3(1, 0, 0), QVec3(0, 0, 0))


@given(int_vectors, int_vectors)
def test_reflect_preserves_norm_and_is_an_involution(v, mirror):
    if mirror.is_zero():
        return
    image = reflect(v, mirror)
    assert norm_sq(image) == norm_sq(v)
    assert reflect(image, mirror) == v


def test_reflect_point_and_isometry():
    assert reflect_point(QPoint3(3, 0, 0), Plane(QVec3(1, 0, 0), 1)) == QPoint3(-1, 0, 0)
    phi = isometry_between(QVec3(3, 3, 2), QVec3(2, 3, 3))
    assert phi(QVec3(3, 3, 2)) == QVec3(2, 3, 3)
    assert norm_sq(phi(QVec3(1, 2, 3))) == 14
    with pytest.raises(PreconditionError):
        isometry_between(QVec3(1, 0, 0), QVec3(1, 1, 0))


def test_rational_point_on_circle():
    circle = equidistant_circle(QPoint3(-1, -2, 5), QPoint3(F(16, 3), F(8, 15), F(94, 15)), 30)
    assert circle.contains(rational_point_on_circle(circle))


@pytest.mark.parametrize("r, d", [(2, 1), (30, 26), (26, 30), (2, 2)])
def test_embed_isosceles(r, d):
    p1, p2, apex = embed_isosceles(r, d)
    assert dist_sq(p1, p2) == r
    assert dist_sq(p1, apex) == dist_sq(p2, apex) == d


def test_farey_parameters():
    assert farey_parameters(1) == [-1, 0, 1]
    assert farey_parameters(2) == [-1, 0, 1, -2, F(-1, 2), F(1, 2), 2]
    with pytest.raises(PreconditionError):
        farey_parameters(0)


def test_circle_plane_points():
    circle = equidistant_circle(ORIGIN, QPoint3(2, 0, 0), 2)
    assert circle_plane_points(circle, Plane(QVec3(0, 1, 0), 0)) == [QPoint3(1, 0, -1), QPoint3(1, 0, 1)]
    assert circle_plane_points(circle, Plane(QVec3(1, 0, 0), 5)) == []
    assert circle_plane_points(circle, Plane(QVec3(0, 0, 1), 5)) == []
