"""
Exact rational scalars, points and vectors of Q^3.

Everything here is exact: the scalar is fractions.Fraction and no function
ever produces a float.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from sympy import factorint

from scavenger.errors import ParseError, PreconditionError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational text to a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str, line: int = 0, column: int = 0) -> Fraction:
    """
    Parse `a/b` or `a` with an optional leading `-`.

    Args:
        text (str): The token to parse.
        line (int): Line number for error reporting.
        column (int): Column number for error reporting.

    Returns:
        Fraction: The value in lowest terms.
    """
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"malformed rational {text!r}", line, column)
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}", line, column)
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True, order=True)
class QVec3:
    dx: Fraction
    dy: Fraction
    dz: Fraction

    def __post_init__(self):
        for name in ("dx", "dy", "dz"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    def __iter__(self):
        return iter((self.dx, self.dy, self.dz))

    def __add__(self, other):
        return QVec3(self.dx + other.dx, self.dy + other.dy, self.dz + other.dz)

    def __sub__(self, other):
        return QVec3(self.dx - other.dx, self.dy - other.dy, self.dz - other.dz)

    def __neg__(self):
        return QVec3(-self.dx, -self.dy, -self.dz)

    def scale(self, k) -> "QVec3":
        k = to_rational(k)
        return QVec3(k * self.dx, k * self.dy, k * self.dz)

    def dot(self, other) -> Fraction:
        return self.dx * other.dx + self.dy * other.dy + self.dz * other.dz

    def cross(self, other) -> "QVec3":
        return QVec3(
            self.dy * other.dz - self.dz * other.dy,
            self.dz * other.dx - self.dx * other.dz,
            self.dx * other.dy - self.dy * other.dx,
        )

    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0 and self.dz == 0

    def __str__(self):
        return " ".join(format_rational(c) for c in self)


@dataclass(frozen=True, order=True)
class QPoint3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __sub__(self, other):
        if isinstance(other, QVec3):
            return QPoint3(self.x - other.dx, self.y - other.dy, self.z - other.dz)
        return QVec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __add__(self, vec):
        return QPoint3(self.x + vec.dx, self.y + vec.dy, self.z + vec.dz)

    def as_vector(self) -> QVec3:
        return QVec3(self.x, self.y, self.z)

    def __str__(self):
        return " ".join(format_rational(c) for c in self)


ORIGIN = QPoint3(0, 0, 0)


def midpoint(p: QPoint3, q: QPoint3) -> QPoint3:
    half = Fraction(1, 2)
    return QPoint3(half * (p.x + q.x), half * (p.y + q.y), half * (p.z + q.z))


def parse_point(text: str, line: int = 0) -> QPoint3:
    """Parse three rationals separated by single spaces."""
    tokens = text.strip().split(" ")
    if len(tokens) != 3 or any(not tok for tok in tokens):
        raise ParseError(f"expected three rationals, got {text.strip()!r}", line, 1)
    coords = []
    column = 1
    for tok in tokens:
        coords.append(parse_rational(tok, line, column))
        column += len(tok) + 1
    return QPoint3(*coords)


def norm_sq(v: QVec3) -> Fraction:
    return v.dot(v)


def dist_sq(p: QPoint3, q: QPoint3) -> Fraction:
    return norm_sq(p - q)


def squarefree_part(n: int) -> int:
    """
    Square-free part n0 of n, where n = k^2 * n0.

    Args:
        n (int): A positive integer.

    Returns:
        int: The square-free part.
    """
    if n < 1:
        raise PreconditionError(f"squarefree_part needs n >= 1, got {n}")
    part = 1
    # factorint runs trial division, then Pollard rho on the cofactor
    for prime, exponent in factorint(n).items():
        if exponent % 2:
            part *= prime
    return part


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_part(n) == n


def integer_sqrt_exact(n: int):
    """Return s with s*s == n, or None."""
    if n < 0:
        return None
    s = isqrt(n)
    return s if s * s == n else None


def rational_square_root(q) -> Fraction | None:
    """
    Exact non-negative square root of a rational, or None when irrational.

    Args:
        q (Fraction): A non-negative rational.

    Returns:
        Fraction | None: s >= 0 with s*s == q, or None.
    """
    q = to_rational(q)
    if q < 0:
        raise PreconditionError(f"rational_square_root of negative value {q}")
    num = integer_sqrt_exact(q.numerator)
    den = integer_sqrt_exact(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def reduce_distance(q) -> tuple[int, Fraction]:
    """
    Write sqrt(q) as scale * sqrt(r) with r a square-free integer.

    Args:
        q (Fraction): A positive rational squared distance.

    Returns:
        tuple[int, Fraction]: (r, scale) with scale^2 * r == q.
    """
    q = to_rational(q)
    if q <= 0:
        raise PreconditionError(f"reduce_distance needs q > 0, got {q}")
    product = q.numerator * q.denominator
    r = squarefree_part(product)
    k = isqrt(product // r)
    return r, Fraction(k, q.denominator)
