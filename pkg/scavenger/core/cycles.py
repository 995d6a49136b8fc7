"""
Rational vectors of a fixed length, 5-cycle search and symmetric 5-cycles.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import permutations, product
from math import gcd, isqrt, lcm

import numpy as np

from scavenger.core.geom import (
    Plane,
    bisector_plane,
    circle_param,
    embed_isosceles,
    equidistant_circle,
    farey_parameters,
    isometry_between,
    rational_point_on_circle,
    reflect_point,
)
from scavenger.core.numtheory import eq_pair_feasible, in_T
from scavenger.core.qcore import ORIGIN, QPoint3, QVec3, dist_sq, midpoint, to_rational
from scavenger.errors import (
    DegenerateError,
    EmptyIntersectionError,
    NotEmbeddableError,
    PreconditionError,
    SearchExhaustedError,
)
from scavenger.workers import first_result

logger = logging.getLogger("scavenger")

DEFAULT_DENOMINATORS = frozenset({1, 3})

# rows of (|J| x n) triple sums per numpy batch in find_5cycle
_BATCH = 1 << 21


@dataclass(frozen=True)
class VectorPool:
    t: Fraction
    denominators: frozenset
    height_bound: int
    vectors: tuple[QVec3, ...]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


def _signed_permutations(a: int, b: int, c: int) -> set[tuple[int, int, int]]:
    variants = set()
    for perm in permutations((a, b, c)):
        for signs in product((1, -1), repeat=3):
            variants.add(tuple(s * x for s, x in zip(signs, perm)))
    return variants


def sphere_vectors(t: int, k: int, height_bound: int) -> list[tuple[int, int, int]]:
    """
    Integer (a, b, c) with a^2 + b^2 + c^2 = t*k^2, gcd(a, b, c, k) = 1 and
    every |coordinate| <= height_bound, sorted.
    """
    target = t * k * k
    found = set()
    for a in range(min(isqrt(target), height_bound), -1, -1):
        rest = target - a * a
        for b in range(min(a, isqrt(rest)), -1, -1):
            c_sq = rest - b * b
            if c_sq > b * b:
                break
            c = isqrt(c_sq)
            if c * c == c_sq and gcd(gcd(a, b), gcd(c, k)) == 1:
                found |= _signed_permutations(a, b, c)
    return sorted(found)


def gen_vectors(t: int, denominators=DEFAULT_DENOMINATORS, height_bound: int = 60) -> VectorPool:
    """
    All vectors (a/k, b/k, c/k) of squared norm t for the admissible k.

    Even k is skipped when t = 2 (mod 4): a point with an even denominator
    cannot be at squared distance t from an integer point then.

    Args:
        t (int): A member of T.
        denominators (set): Denominators k to try.
        height_bound (int): Largest allowed |numerator|.

    Returns:
        VectorPool: Vectors ordered by k, then lexicographically.
    """
    t = to_rational(t)
    if t.denominator != 1 or not in_T(t.numerator):
        raise PreconditionError(f"{t} is not in T")
    t = t.numerator
    denominators = frozenset(denominators)
    if not denominators:
        raise PreconditionError("denominator set is empty")
    if any(k < 1 for k in denominators):
        raise PreconditionError(f"denominators must be positive, got {sorted(denominators)}")
    if height_bound < 1:
        raise PreconditionError(f"height bound must be positive, got {height_bound}")

    vectors = []
    for k in sorted(denominators):
        if t % 4 == 2 and k % 2 == 0:
            logger.debug(f"gen_vectors t={t}: denominator {k} skipped (parity)")
            continue
        for a, b, c in sphere_vectors(t, k, height_bound):
            vectors.append(QVec3(Fraction(a, k), Fraction(b, k), Fraction(c, k)))
    logger.debug(f"gen_vectors t={t}: {len(vectors)} vectors")
    return VectorPool(Fraction(t), denominators, height_bound, tuple(vectors))


def validate_5cycle(points, t) -> list[str]:
    """Everything wrong with `points` as a 5-cycle of G(Q^3, sqrt t)."""
    t = to_rational(t)
    points = list(points)
    if len(points) != 5:
        return [f"expected 5 points, got {len(points)}"]
    problems = []
    if len(set(points)) != 5:
        problems.append("points are not distinct")
    for i in range(5):
        p, q, r = points[i - 1], points[i], points[(i + 1) % 5]
        if dist_sq(q, r) != t:
            problems.append(f"edge {i}-{(i + 1) % 5} has squared length {dist_sq(q, r)}")
        if (q - p).cross(r - q).is_zero():
            problems.append(f"points {(i - 1) % 5}, {i}, {(i + 1) % 5} are collinear")
    return problems


def _integer_matrix(pool: VectorPool) -> tuple[np.ndarray, int]:
    scale = lcm(*(c.denominator for v in pool.vectors for c in v))
    rows = [[int(c * scale) for c in v] for v in pool.vectors]
    return np.array(rows, dtype=np.int64), scale


@dataclass(frozen=True)
class _PairTable:
    """Sorted pair sums v4 + v5 of a pool, shared by every range search."""
    pool: VectorPool
    ints: np.ndarray
    allowed: np.ndarray
    pair_a: np.ndarray
    pair_b: np.ndarray
    order: np.ndarray
    sorted_keys: np.ndarray
    span: int

    def encode(self, arr: np.ndarray) -> np.ndarray:
        base = 2 * self.span + 1
        shifted = arr + self.span
        return (shifted[..., 0] * base + shifted[..., 1]) * base + shifted[..., 2]


def _pair_table(pool: VectorPool) -> _PairTable:
    ints, _ = _integer_matrix(pool)
    n = len(pool)
    index = {tuple(row): i for i, row in enumerate(ints.tolist())}
    opposite = np.array([index.get(tuple(-x for x in row), -1) for row in ints.tolist()], dtype=np.int64)
    all_idx = np.arange(n)
    allowed = (all_idx[None, :] != all_idx[:, None]) & (all_idx[None, :] != opposite[:, None])
    pair_a, pair_b = np.nonzero(allowed)
    table = _PairTable(pool, ints, allowed, pair_a, pair_b, np.empty(0, dtype=np.int64),
                       np.empty(0, dtype=np.int64), 3 * int(np.abs(ints).max()))
    pair_keys = table.encode(ints[pair_a] + ints[pair_b])
    order = np.argsort(pair_keys, kind="stable")
    return replace(table, order=order, sorted_keys=pair_keys[order])


def _search_range(task) -> list[QPoint3] | None:
    """First 5-cycle whose leading vector index lies in [first, stop)."""
    table, first, stop = task
    ints, allowed = table.ints, table.allowed
    n = len(ints)
    all_idx = np.arange(n)
    rows_per_batch = max(1, _BATCH // n)
    for i1 in range(first, stop):
        js = all_idx[allowed[i1]]
        for start in range(0, len(js), rows_per_batch):
            chunk = js[start:start + rows_per_batch]
            triples = ints[i1] + ints[chunk][:, None, :] + ints[None, :, :]
            targets = table.encode(-triples)
            lo = np.searchsorted(table.sorted_keys, targets, side="left")
            hi = np.searchsorted(table.sorted_keys, targets, side="right")
            hits = (hi > lo) & allowed[chunk]
            for row, i3 in zip(*np.nonzero(hits)):
                i2 = chunk[row]
                for pos in range(lo[row, i3], hi[row, i3]):
                    i4, i5 = table.pair_a[table.order[pos]], table.pair_b[table.order[pos]]
                    if not allowed[i3, i4] or not allowed[i5, i1]:
                        continue
                    points = _walk(table.pool, (i1, i2, i3, i4))
                    if not validate_5cycle(points, table.pool.t):
                        logger.debug(f"find_5cycle t={table.pool.t}: vectors {(i1, i2, i3, i4, i5)}")
                        return points
    return None


def find_5cycle(t, pool: VectorPool, workers: int = 1) -> list[QPoint3] | None:
    """
    Five pool vectors summing to zero, walked from the origin.

    Pair sums v4 + v5 are sorted once; triple sums v1 + v2 + v3 are looked up
    against them with binary search. Consecutive vectors must not be equal
    or opposite, so no three consecutive points are collinear. The first
    success in (v1, v2, v3, v4, v5) pool order is returned; ranges of v1
    are searched in parallel when workers > 1.
    """
    t = to_rational(t)
    if pool.t != t:
        raise PreconditionError(f"pool was built for t={pool.t}, not {t}")
    n = len(pool)
    if n == 0:
        return None

    table = _pair_table(pool)
    step = -(-n // (4 * workers))
    found = first_result(_search_range, ((table, lo, min(n, lo + step)) for lo in range(0, n, step)), workers)
    if found is not None:
        return found[1]
    logger.info(f"find_5cycle t={t}: no 5-cycle among {n} vectors")
    return None


def _walk(pool: VectorPool, indices) -> list[QPoint3]:
    points = [ORIGIN]
    for i in indices:
        points.append(points[-1] + pool.vectors[i])
    return points


@dataclass(frozen=True)
class SymCycle:
    """A 5-cycle with x2 and the midpoint of x1, x3 on the bisector plane of x0, x4."""
    x0: QPoint3
    x1: QPoint3
    x2: QPoint3
    x3: QPoint3
    x4: QPoint3
    plane: Plane
    t: Fraction

    @property
    def points(self) -> tuple[QPoint3, ...]:
        return (self.x0, self.x1, self.x2, self.x3, self.x4)

    @property
    def d(self) -> Fraction:
        return dist_sq(self.x0, self.x2)

    def problems(self) -> list[str]:
        found = validate_5cycle(self.points, self.t)
        if self.x0 == self.x4 or not self.plane.same_as(bisector_plane(self.x0, self.x4)):
            found.append("plane is not the bisector of x0 and x4")
            return found
        if not self.plane.contains(self.x2):
            found.append("x2 is off the plane")
        if not self.plane.contains(midpoint(self.x1, self.x3)):
            found.append("midpoint of x1 and x3 is off the plane")
        return found


def _feasible_ds(t: Fraction, d_bound: int):
    for d in range(1, d_bound + 1):
        if eq_pair_feasible(t, d):
            yield Fraction(d)


def scan_d(t, d_bound: int, height: int | None = None) -> Fraction | None:
    """
    The least integer d <= d_bound making both isosceles triangles of a
    symmetric 5-cycle embeddable. With `height`, rationals p/q (2 <= q <= height,
    p/q <= d_bound, ordered by q then p) are tried after the integers.
    """
    t = to_rational(t)
    if d_bound < 1:
        raise PreconditionError(f"d bound must be positive, got {d_bound}")
    for d in _feasible_ds(t, d_bound):
        return d
    if height:
        for q in range(2, height + 1):
            for p in range(1, d_bound * q + 1):
                if gcd(p, q) != 1:
                    continue
                if eq_pair_feasible(t, Fraction(p, q)):
                    return Fraction(p, q)
    logger.info(f"scan_d t={t}: nothing feasible up to {d_bound}")
    return None


def _lattice_offsets(d: Fraction) -> list[QVec3]:
    """Integer vectors of squared norm d, sorted; empty for non-integer d."""
    if d.denominator != 1:
        return []
    n = d.numerator
    found = []
    for m in range(1, isqrt(n) + 1):
        if n % (m * m) == 0:
            found.extend(QVec3(m * a, m * b, m * c) for a, b, c in sphere_vectors(n // (m * m), 1, isqrt(n)))
    return sorted(found)


def _circle_candidates(p: QPoint3, q: QPoint3, r_sq: Fraction, offsets, height: int, max_work,
                       known: QPoint3 | None = None):
    # lattice offsets from p first, then the circle's own rational points
    seen = set()
    for v in offsets:
        candidate = p + v
        if dist_sq(candidate, q) == r_sq and candidate not in seen:
            seen.add(candidate)
            yield candidate
    try:
        circle = equidistant_circle(p, q, r_sq)
        base = known if known is not None else rational_point_on_circle(circle, max_work=max_work)
    except (EmptyIntersectionError, NotEmbeddableError, SearchExhaustedError):
        return
    if base not in seen:
        seen.add(base)
        yield base
    if circle.degenerate:
        return
    param = circle_param(circle, base)
    for s in farey_parameters(height):
        try:
            candidate = param.point(s)
        except DegenerateError:
            continue
        if candidate not in seen:
            seen.add(candidate)
            yield candidate


def symmetric_5cycles(t, pool: VectorPool, d_bound: int = 100, height: int = 12, max_work: int | None = 10**6):
    """
    Symmetric 5-cycles, one for each choice of d, x2 and x1.

    x0 is the origin and x4 the three-squares vector of t. For each feasible
    d, x2 runs over the points at sqrt d from x0 and x4 (integer points
    first), x1 over the points at sqrt t from x0 and x2 (pool vectors first),
    and x3 is the mirror image of x1 in the bisector plane of x0 and x4.
    The rational seed for x1 is the canonical T(sqrt d, sqrt t, sqrt t)
    moved onto the base x0 x2 by a reflection.
    """
    t = to_rational(t)
    if not pool.vectors:
        return
    for d in _feasible_ds(t, d_bound):
        try:
            x0, x4, apex = embed_isosceles(t, d, max_work=max_work)
        except (NotEmbeddableError, SearchExhaustedError) as e:
            logger.debug(f"symmetric_5cycles t={t} d={d}: {e}")
            continue
        try:
            legs = embed_isosceles(d, t, max_work=max_work)
        except (NotEmbeddableError, SearchExhaustedError):
            legs = None
        plane = bisector_plane(x0, x4)
        for x2 in _circle_candidates(x0, x4, d, _lattice_offsets(d), height, max_work, known=apex):
            seed = None
            if legs is not None:
                move = isometry_between(legs[1] - legs[0], x2 - x0)
                seed = x0 + move(legs[2] - legs[0])
            for x1 in _circle_candidates(x0, x2, t, pool.vectors, height, max_work, known=seed):
                if plane.contains(x1):
                    continue
                sym = SymCycle(x0, x1, x2, reflect_point(x1, plane), x4, plane, t)
                if not sym.problems():
                    yield sym


def find_symmetric_5cycle(t, pool: VectorPool, d_bound: int = 100, height: int = 12,
                          max_work: int | None = 10**6) -> SymCycle | None:
    """The first cycle of `symmetric_5cycles`, or None."""
    sym = next(symmetric_5cycles(t, pool, d_bound, height, max_work), None)
    if sym is None:
        logger.info(f"find_symmetric_5cycle t={t}: none within d <= {d_bound}")
    else:
        logger.info(f"find_symmetric_5cycle t={t}: found with d={sym.d}")
    return sym
