"""
Exact rational geometry in Q^3: bisector planes, equidistant circles,
conic parameterization of circle points, circumcenters, apex points and
reflections.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from scavenger.core.numtheory import (
    TernaryForm,
    isosceles_embeddable,
    legendre_solvable,
    legendre_solution,
    rational_three_squares,
)
from scavenger.core.qcore import (
    ORIGIN,
    QPoint3,
    QVec3,
    dist_sq,
    midpoint,
    norm_sq,
    rational_square_root,
    to_rational,
)
from scavenger.errors import (
    CollinearError,
    DegenerateError,
    EmptyIntersectionError,
    NotEmbeddableError,
    PreconditionError,
)

logger = logging.getLogger("scavenger")

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class Plane:
    """alpha*x + beta*y + gamma*z = offset."""
    normal: QVec3
    offset: Fraction

    def __post_init__(self):
        if self.normal.is_zero():
            raise PreconditionError("plane normal must be non-zero")
        object.__setattr__(self, "offset", to_rational(self.offset))

    def value(self, p: QPoint3) -> Fraction:
        return self.normal.dot(p.as_vector())

    def contains(self, p: QPoint3) -> bool:
        return self.value(p) == self.offset

    def same_as(self, other: "Plane") -> bool:
        """Same point set, whatever the scaling of the equation."""
        if not self.normal.cross(other.normal).is_zero():
            return False
        mine, theirs = list(self.normal), list(other.normal)
        i = next(k for k in range(3) if mine[k] != 0)
        return other.offset == theirs[i] / mine[i] * self.offset

    def __str__(self):
        a, b, c = self.normal
        return f"{a}x + {b}y + {c}z = {self.offset}"


@dataclass(frozen=True)
class RCircle:
    center: QPoint3
    radius_sq: Fraction
    plane: Plane

    @property
    def degenerate(self) -> bool:
        return self.radius_sq == 0

    def contains(self, p: QPoint3) -> bool:
        return self.plane.contains(p) and dist_sq(p, self.center) == self.radius_sq


@dataclass(frozen=True)
class ConicParam:
    """a x^2 + b xy + c y^2 + d x + e y + f = 0 with a rational base point."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    f: Fraction
    base: tuple[Fraction, Fraction]

    def evaluate(self, x, y) -> Fraction:
        return (self.a * x * x + self.b * x * y + self.c * y * y
                + self.d * x + self.e * y + self.f)

    def __post_init__(self):
        if self.evaluate(*self.base) != 0:
            raise PreconditionError(f"base point {self.base} is not on the conic")


def conic_point(cp: ConicParam, s) -> tuple[Fraction, Fraction]:
    """
    Rational point of the conic for parameter s; s=None stands for infinity.

    The line through the base point with direction (1, s) meets the conic
    a second time at the returned point.
    """
    xi, eta = cp.base
    a, b, c, d, e = cp.a, cp.b, cp.c, cp.d, cp.e
    if s is None:
        if c == 0:
            raise DegenerateError("parameter at infinity needs c != 0")
        return (xi, (-b * xi - c * eta - e) / c)
    s = to_rational(s)
    den = a + b * s + c * s * s
    if den == 0:
        raise DegenerateError(f"parameter {s} makes the denominator vanish")
    x = (-d - a * xi - b * eta - (2 * c * eta + e) * s + c * xi * s * s) / den
    y = (a * eta - (2 * a * xi + d) * s - (b * xi + c * eta + e) * s * s) / den
    return (x, y)


def bisector_plane(p: QPoint3, q: QPoint3) -> Plane:
    if p == q:
        raise PreconditionError(f"bisector of coincident points {p}")
    normal = q - p
    return Plane(normal, normal.dot(midpoint(p, q).as_vector()))


def equidistant_circle(p: QPoint3, q: QPoint3, t) -> RCircle:
    """
    All points at squared distance t from both p and q.
    """
    t = to_rational(t)
    if t <= 0:
        raise PreconditionError(f"squared distance must be positive, got {t}")
    plane = bisector_plane(p, q)
    radius_sq = t - dist_sq(p, q) / 4
    if radius_sq < 0:
        raise EmptyIntersectionError(f"no point is at sqrt({t}) from both {p} and {q}")
    return RCircle(midpoint(p, q), radius_sq, plane)


def _elimination_axis(normal: QVec3) -> int:
    # largest |component|, ties broken z, then y, then x
    comps = list(normal)
    return max((2, 1, 0), key=lambda i: abs(comps[i]))


@dataclass(frozen=True)
class CircleParam:
    """
    Rational points of a circle from one known point.

    The coordinate `eliminated_axis` is written as
    offset + slope_u * u + slope_v * v in the two kept coordinates (u, v).
    """
    circle: RCircle
    conic: ConicParam
    eliminated_axis: int
    back_substitution: tuple[Fraction, Fraction, Fraction]

    @property
    def kept_axes(self) -> tuple[int, int]:
        return tuple(i for i in range(3) if i != self.eliminated_axis)

    def _lift(self, u, v) -> QPoint3:
        offset, slope_u, slope_v = self.back_substitution
        coords = [None, None, None]
        i, j = self.kept_axes
        coords[i], coords[j] = u, v
        coords[self.eliminated_axis] = offset + slope_u * u + slope_v * v
        return QPoint3(*coords)

    def point(self, s) -> QPoint3:
        return self._lift(*conic_point(self.conic, s))

    def parameter_of(self, p: QPoint3):
        """Parameter producing p; None means infinity (the known point)."""
        if not self.circle.contains(p):
            raise PreconditionError(f"{p} is not on the circle")
        coords = list(p)
        i, j = self.kept_axes
        xi, eta = self.conic.base
        if coords[i] == xi:
            return None
        return (coords[j] - eta) / (coords[i] - xi)


def circle_param(c: RCircle, known_point: QPoint3) -> CircleParam:
    """
    Parameterize the rational points of a circle through a known one.
    """
    if c.degenerate:
        raise DegenerateError("cannot parameterize a degenerate circle")
    if not c.contains(known_point):
        raise PreconditionError(f"{known_point} is not on the circle")
    normal = list(c.plane.normal)
    axis = _elimination_axis(c.plane.normal)
    i, j = [k for k in range(3) if k != axis]
    gamma = normal[axis]
    offset = c.plane.offset / gamma
    p, q = -normal[i] / gamma, -normal[j] / gamma
    center = list(c.center)
    cu, cv = center[i], center[j]
    k = offset - center[axis]
    conic = ConicParam(
        a=1 + p * p,
        b=2 * p * q,
        c=1 + q * q,
        d=-2 * cu + 2 * p * k,
        e=-2 * cv + 2 * q * k,
        f=cu * cu + cv * cv + k * k - c.radius_sq,
        base=(list(known_point)[i], list(known_point)[j]),
    )
    return CircleParam(c, conic, axis, (offset, p, q))


def circumcenter(p1: QPoint3, p2: QPoint3, p3: QPoint3) -> tuple[QPoint3, Fraction, QVec3]:
    """
    Circumcenter, squared circumradius and plane normal (p2-p1) x (p3-p1).
    """
    a, b = p2 - p1, p3 - p1
    normal = a.cross(b)
    if normal.is_zero():
        raise CollinearError(f"{p1}, {p2}, {p3} are collinear")
    nn = norm_sq(normal)
    offset = (b.cross(normal).scale(norm_sq(a)) + normal.cross(a).scale(norm_sq(b))).scale(Fraction(1, 2) / nn)
    center = p1 + offset
    return center, norm_sq(offset), normal


@dataclass(frozen=True)
class ApexResult:
    """Apex points (0, 1 or 2 of them) and why the list is empty, if it is."""
    points: tuple[QPoint3, ...]
    reason: str = ""

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


CIRCUMRADIUS_TOO_LARGE = "circumradius exceeds sqrt(t)"
IRRATIONAL_APEX = "irrational apex"


def apex_points(p1: QPoint3, p2: QPoint3, p3: QPoint3, t) -> ApexResult:
    """
    Rational points at squared distance t from all three points.
    """
    t = to_rational(t)
    center, r_sq, normal = circumcenter(p1, p2, p3)
    if r_sq > t:
        return ApexResult((), CIRCUMRADIUS_TOO_LARGE)
    s = rational_square_root((t - r_sq) / norm_sq(normal))
    if s is None:
        return ApexResult((), IRRATIONAL_APEX)
    if s == 0:
        return ApexResult((center,))
    return ApexResult((center + normal.scale(s), center - normal.scale(s)))


def reflect(v: QVec3, mirror: QVec3) -> QVec3:
    """Reflect v in the plane through the origin orthogonal to mirror."""
    if mirror.is_zero():
        raise PreconditionError("mirror vector must be non-zero")
    return v - mirror.scale(2 * v.dot(mirror) / norm_sq(mirror))


def reflect_point(p: QPoint3, plane: Plane) -> QPoint3:
    shift = (plane.offset - plane.value(p)) / norm_sq(plane.normal)
    return p + plane.normal.scale(2 * shift)


def isometry_between(v1: QVec3, v2: QVec3):
    """
    A rational linear isometry sending v1 to v2 (equal norms): one reflection,
    or the identity when v1 == v2.
    """
    if norm_sq(v1) != norm_sq(v2):
        raise PreconditionError(f"{v1} and {v2} have different lengths")
    if v1 == v2:
        return lambda v: v
    mirror = v1 - v2
    return lambda v: reflect(v, mirror)


def _orthogonal_basis(w: QVec3) -> tuple[QVec3, QVec3]:
    comps = list(w)
    axis = min(range(3), key=lambda i: abs(comps[i]))
    unit = QVec3(*(1 if i == axis else 0 for i in range(3)))
    e1 = w.cross(unit)
    return e1, w.cross(e1)


def rational_point_on_circle(c: RCircle, max_work: int | None = None) -> QPoint3:
    """
    A rational point on a circle with rational center, radius^2 and plane.

    With e1, e2 an orthogonal rational basis of the plane direction, the
    circle points are center + (X/Z) e1 + (Y/Z) e2 for the zeros of
    |e1|^2 X^2 + |e2|^2 Y^2 - radius^2 Z^2.
    """
    if c.degenerate:
        return c.center
    e1, e2 = _orthogonal_basis(c.plane.normal)
    coeffs = (norm_sq(e1), norm_sq(e2), -c.radius_sq)
    scale = lcm(*(coef.denominator for coef in coeffs))
    form = TernaryForm(*(int(coef * scale) for coef in coeffs))
    if not legendre_solvable(form):
        raise NotEmbeddableError(f"circle about {c.center} with radius^2 {c.radius_sq} has no rational point")
    x, y, z = legendre_solution(form, max_work=max_work)
    point = c.center + e1.scale(Fraction(x, z)) + e2.scale(Fraction(y, z))
    if not c.contains(point):
        raise DegenerateError(f"constructed point {point} is off the circle")
    return point


def embed_isosceles(r, d, max_work: int | None = 10**7) -> tuple[QPoint3, QPoint3, QPoint3]:
    """
    Rational points p1, p2, apex with |p1-p2|^2 = r and both legs d.

    The base runs from the origin along a three-squares representation of
    r; the apex is a rational point of the circle of points at sqrt(d) from
    both base ends.

    Args:
        r (Fraction): Squared base.
        d (Fraction): Squared legs.
        max_work (int | None): Budget for the apex search.

    Returns:
        tuple[QPoint3, QPoint3, QPoint3]: (p1, p2, apex).
    """
    r, d = to_rational(r), to_rational(d)
    verdict = isosceles_embeddable(r, d)
    if not verdict:
        raise NotEmbeddableError(f"T(sqrt {r}, sqrt {d}, sqrt {d}) does not embed: {verdict.reason}")
    p1 = ORIGIN
    p2 = p1 + QVec3(*rational_three_squares(r))
    apex = rational_point_on_circle(equidistant_circle(p1, p2, d), max_work=max_work)
    logger.debug(f"isosceles r={r} d={d}: apex {apex}")
    return p1, p2, apex


def farey_parameters(height: int) -> list[Fraction]:
    """
    Rationals p/q with |p| <= height and 1 <= q <= height, in lowest terms,
    ordered by max(|p|, q) and then by value.
    """
    if height < 1:
        raise PreconditionError(f"height must be positive, got {height}")
    values = {Fraction(p, q) for q in range(1, height + 1) for p in range(-height, height + 1)}
    return sorted(values, key=lambda s: (max(abs(s.numerator), s.denominator), s))


def circle_plane_points(c: RCircle, plane: Plane) -> list[QPoint3]:
    """
    Rational points where a circle meets a plane it does not lie in.

    The two planes meet in a line p0 + lambda*u; substituting into the
    sphere equation leaves a quadratic in lambda whose discriminant must be
    a rational square.
    """
    u = c.plane.normal.cross(plane.normal)
    if u.is_zero():
        return []
    uu = norm_sq(u)
    p0 = ORIGIN + (plane.normal.cross(u).scale(c.plane.offset) + u.cross(c.plane.normal).scale(plane.offset)).scale(
        Fraction(1) / uu
    )
    w = p0 - c.center
    uw = u.dot(w)
    quarter_disc = uw * uw - uu * (norm_sq(w) - c.radius_sq)
    if quarter_disc < 0:
        return []
    root = rational_square_root(quarter_disc)
    if root is None:
        return []
    lambdas = sorted({(-uw + root) / uu, (-uw - root) / uu})
    return [p0 + u.scale(lam) for lam in lambdas]
