"""
Diophantine decision procedures: the set T, Legendre's ternary criterion,
three-squares representations, closure criteria for vectors of a fixed
length (with constructive chains), and the isosceles embedding equations.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm

from sympy import factorint
from sympy.ntheory import is_quad_residue, sqrt_mod

from scavenger.core.qcore import (
    QVec3,
    integer_sqrt_exact,
    norm_sq,
    reduce_distance,
    squarefree_part,
    to_rational,
)
from scavenger.errors import (
    ChainError,
    NotEmbeddableError,
    PreconditionError,
    SearchExhaustedError,
    UnsolvableFormError,
)

logger = logging.getLogger("scavenger")


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer that keeps its reason. Truthy iff ok."""
    ok: bool
    reason: str = ""
    details: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class TernaryForm:
    """The form a*x^2 + b*y^2 + c*z^2."""
    a: int
    b: int
    c: int

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def evaluate(self, x, y, z):
        return self.a * x * x + self.b * y * y + self.c * z * z

    def __str__(self):
        return f"{self.a}x^2 + {self.b}y^2 + {self.c}z^2"


@dataclass(frozen=True)
class NormalizedForm:
    """
    Square-free, pairwise coprime form equivalent to an original form.

    A zero (X, Y, Z) of `form` gives the zero (X*m0, Y*m1, Z*m2) of the
    original, where (m0, m1, m2) are the `multipliers`.
    """
    form: TernaryForm
    multipliers: tuple[Fraction, Fraction, Fraction]
    steps: tuple[str, ...] = field(default=())

    @property
    def mixed_signs(self) -> bool:
        signs = {coef > 0 for coef in self.form.coefficients}
        return len(signs) == 2


def in_T(t: int) -> bool:
    """
    True iff t is square-free, even, and has an odd prime factor p = 2 (mod 3).
    """
    if t < 1:
        return False
    factors = factorint(t)
    if any(exponent > 1 for exponent in factors.values()):
        return False
    if 2 not in factors:
        return False
    return any(p % 3 == 2 for p in factors if p != 2)


def t_values(limit: int) -> list[int]:
    """All members of T below limit, ascending."""
    return [t for t in range(2, limit, 2) if in_T(t)]


def is_quadratic_residue(a: int, m: int) -> bool:
    if m < 1:
        raise PreconditionError(f"modulus must be positive, got {m}")
    return bool(is_quad_residue(a % m, m))


def normalize_form(form: TernaryForm) -> NormalizedForm:
    """
    Reduce a form to square-free, pairwise coprime coefficients.

    Square factors move into the variables, a common divisor of all three
    coefficients is dropped, and a divisor g shared by two coefficients
    moves onto the third (its variable must then be divisible by g).
    """
    coeffs = list(form.coefficients)
    if any(coef == 0 for coef in coeffs):
        raise PreconditionError(f"ternary form has a zero coefficient: {form}")
    multipliers = [Fraction(1)] * 3
    steps = []

    for i, coef in enumerate(coeffs):
        core = squarefree_part(abs(coef))
        root = isqrt(abs(coef) // core)
        if root > 1:
            coeffs[i] = core if coef > 0 else -core
            multipliers[i] /= root
            steps.append(f"square {root}^2 absorbed from coefficient {i}: {coef} -> {coeffs[i]}")

    while True:
        common = gcd(gcd(coeffs[0], coeffs[1]), coeffs[2])
        if common > 1:
            coeffs = [coef // common for coef in coeffs]
            steps.append(f"common factor {common} divided out")
            continue
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            shared = gcd(coeffs[i], coeffs[j])
            if shared > 1:
                coeffs[i] //= shared
                coeffs[j] //= shared
                coeffs[k] *= shared
                multipliers[k] *= shared
                steps.append(f"factor {shared} of coefficients {i},{j} moved to coefficient {k}")
                break
        else:
            break

    return NormalizedForm(TernaryForm(*coeffs), tuple(multipliers), tuple(steps))


def _residue_conditions(a: int, b: int, c: int) -> list[tuple[int, int]]:
    # (value, modulus) pairs of the three residue tests
    return [(-a * b, abs(c)), (-a * c, abs(b)), (-b * c, abs(a))]


def legendre_solvable(form: TernaryForm) -> bool:
    """
    Exact solvability of a*x^2 + b*y^2 + c*z^2 = 0 in non-trivial integers.
    """
    normalized = normalize_form(form)
    if not normalized.mixed_signs:
        return False
    a, b, c = normalized.form.coefficients
    return all(is_quadratic_residue(value, mod) for value, mod in _residue_conditions(a, b, c))


def legendre_witnesses(form: TernaryForm) -> list[tuple[int, int, int | None]]:
    """
    The residue tests of the normalized form with a square root for each.

    Returns:
        list[tuple[int, int, int | None]]: (value, modulus, root) per test;
            root is None when the value is not a residue.
    """
    normalized = normalize_form(form)
    a, b, c = normalized.form.coefficients
    witnesses = []
    for value, mod in _residue_conditions(a, b, c):
        root = 0 if mod == 1 else sqrt_mod(value % mod, mod)
        witnesses.append((value, mod, root))
    return witnesses


def legendre_solution(form: TernaryForm, max_work: int | None = None) -> tuple[int, int, int]:
    """
    A primitive non-trivial zero of the form.

    The search runs over the normalized form inside Holzer's box
    |x| <= sqrt|bc|, |y| <= sqrt|ac|, |z| <= sqrt|ab|, which always
    contains a zero when one exists. The variable with the smallest
    coefficient is solved for, the other two are enumerated.

    Args:
        form (TernaryForm): The form to solve.
        max_work (int | None): Give up after this many candidate pairs.

    Returns:
        tuple[int, int, int]: (x, y, z) with gcd 1 and form(x, y, z) == 0.
    """
    if not legendre_solvable(form):
        raise UnsolvableFormError(f"{form} has no non-trivial integer zero")
    normalized = normalize_form(form)
    coeffs = normalized.form.coefficients
    a, b, c = coeffs
    bounds = (isqrt(abs(b * c)), isqrt(abs(a * c)), isqrt(abs(a * b)))
    solved = min(range(3), key=lambda i: abs(coeffs[i]))
    i, j = [k for k in range(3) if k != solved]

    work = 0
    found = None
    for u in range(bounds[i] + 1):
        for w in range(bounds[j] + 1):
            if u == 0 and w == 0:
                continue
            work += 1
            if max_work is not None and work > max_work:
                raise SearchExhaustedError(f"no zero of {form} found", max_work)
            rest = coeffs[i] * u * u + coeffs[j] * w * w
            if rest % coeffs[solved]:
                continue
            root = integer_sqrt_exact(-rest // coeffs[solved])
            if root is None:
                continue
            found = [0, 0, 0]
            found[solved], found[i], found[j] = root, u, w
            break
        if found:
            break
    if found is None:
        raise ChainError(f"Holzer box exhausted for solvable form {normalized.form}")

    values = [Fraction(found[k]) * normalized.multipliers[k] for k in range(3)]
    scale = lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    common = gcd(*ints)
    solution = tuple(v // common for v in ints)
    if form.evaluate(*solution) != 0:
        raise ChainError(f"lifted solution {solution} does not satisfy {form}")
    return solution


def three_squares(n: int) -> tuple[int, int, int] | None:
    """
    Lexicographically largest primitive (a, b, c), a >= b >= c >= 0,
    with a^2 + b^2 + c^2 == n, or None when no primitive one exists.
    """
    if n < 1:
        raise PreconditionError(f"three_squares needs n >= 1, got {n}")
    if n % 8 in (0, 4, 7):
        return None
    for a in range(isqrt(n), -1, -1):
        rest = n - a * a
        for b in range(min(a, isqrt(rest)), -1, -1):
            c_sq = rest - b * b
            if c_sq > b * b:
                break
            c = integer_sqrt_exact(c_sq)
            if c is not None and gcd(a, b, c) == 1:
                return (a, b, c)
    return None


def rational_three_squares(q) -> tuple[Fraction, Fraction, Fraction] | None:
    """
    A representation of q as a sum of three rational squares, largest first.

    None iff the square-free part of q is 7 mod 8.
    """
    r, scale = reduce_distance(q)
    if r % 8 == 7:
        return None
    a, b, c = three_squares(r)
    return (scale * a, scale * b, scale * c)


def phi_criteria(h) -> bool:
    """
    Sufficient criteria for every vector of length sqrt(t), t in T, to be a
    sum of vectors of length sqrt(h). False means the criteria are silent.
    """
    h = to_rational(h)
    if h <= 0:
        raise PreconditionError(f"phi_criteria needs h > 0, got {h}")
    m, n = h.numerator, h.denominator
    n0 = squarefree_part(n)
    return m % 4 == 2 or n0 % 2 == 0 or (m * n0) % 4 == 1


def antipodal_dist_sq(radius_sq) -> Fraction:
    """
    Squared distance between antipodal points of a circle with radius^2 = m/n,
    n = 2 (mod 4). Equals 2m/p with p = n/2.
    """
    radius_sq = to_rational(radius_sq)
    if radius_sq <= 0 or radius_sq.denominator % 4 != 2:
        raise PreconditionError(f"radius^2 {radius_sq} does not have denominator = 2 (mod 4)")
    m, n = radius_sq.numerator, radius_sq.denominator
    return Fraction(2 * m, n // 2)


@dataclass(frozen=True)
class ChainCertificate:
    """Vectors of squared norm `step_norm_sq` summing to `target`."""
    target: QVec3
    step_norm_sq: Fraction
    steps: tuple[QVec3, ...]

    def problems(self) -> list[str]:
        found = []
        for index, step in enumerate(self.steps):
            if norm_sq(step) != self.step_norm_sq:
                found.append(f"step {index} has norm^2 {norm_sq(step)}")
        total = QVec3(0, 0, 0)
        for step in self.steps:
            total = total + step
        if total != self.target:
            found.append(f"steps sum to {total}, not {self.target}")
        return found


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    # (x, y, g) with a*x + b*y == g == gcd(a, b)
    old_r, r, old_x, x, old_y, y = a, b, 1, 0, 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    return old_x, old_y, old_r


def _chain_basis(h: Fraction) -> tuple[int, int, tuple[int, int, int]]:
    """Write h = N / D^2 per the first applicable criterion; return N, D and a rep of N."""
    m, n = h.numerator, h.denominator
    n0 = squarefree_part(n)
    k = isqrt(n // n0)
    if m % 4 == 2:
        big_n, den = m * n, n
    elif n0 % 2 == 0 or (m * n0) % 4 == 1:
        big_n, den = m * n0, k * n0
    else:
        raise PreconditionError(f"h = {h} meets none of the closure criteria")
    rep = three_squares(big_n)
    if rep is None:
        raise ChainError(f"no primitive three-squares representation of {big_n}")
    return big_n, den, rep


def _arrange(entries, first_position, first_value):
    """Put first_value at first_position and the other two entries after it, in order."""
    rest = list(entries)
    rest.remove(first_value)
    out = [0, 0, 0]
    out[first_position] = first_value
    others = [p for p in range(3) if p != first_position]
    out[others[0]], out[others[1]] = rest
    return out


def _doubling_pair(entries, axis, value, sign):
    # two representation vectors summing to 2*value*sign along axis
    first = _arrange(entries, axis, value)
    second = [-coord for coord in first]
    second[axis] = first[axis]
    return [[sign * coord for coord in first], [sign * coord for coord in second]]


def _axis_steps(entries, axis, half):
    """Integer steps summing to 2*half along one axis."""
    steps = []
    sign = 1 if half > 0 else -1
    remaining = abs(half)
    for value in sorted({e for e in entries if e}, reverse=True):
        copies, remaining = divmod(remaining, value)
        for _ in range(copies):
            steps.extend(_doubling_pair(entries, axis, value, sign))
    if remaining:
        a, b, c = entries
        x, y, g = _bezout(a, b)
        u, v, _ = _bezout(g, c)
        for value, coef in ((a, u * x), (b, u * y), (c, v)):
            total = remaining * coef
            if value == 0 or total == 0:
                continue
            for _ in range(abs(total)):
                steps.extend(_doubling_pair(entries, axis, value, sign if total > 0 else -sign))
    return steps


def construct_chain(v: QVec3, h) -> ChainCertificate:
    """
    Explicit chain of vectors of squared norm h summing to v.

    Follows the closure argument: a primitive representation (a, b, c) of
    N = h*D^2 gives steps (a, b, c)/D under sign changes and permutations;
    pairs of them give (2a/D, 0, 0), and a Bezout combination gives
    (2/D, 0, 0). One or more base steps fix the parity of D*v, then doubling
    steps fill each coordinate.

    Args:
        v (QVec3): Target vector.
        h (Fraction): Squared norm of every step.

    Returns:
        ChainCertificate: A validated chain.
    """
    h = to_rational(h)
    if h <= 0:
        raise PreconditionError(f"step norm^2 must be positive, got {h}")
    if norm_sq(v) == h:
        return ChainCertificate(v, h, (v,))
    if not phi_criteria(h):
        raise PreconditionError(f"h = {h} meets none of the closure criteria")

    big_n, den, entries = _chain_basis(h)
    scaled = [coord * den for coord in v]
    if any(coord.denominator != 1 for coord in scaled):
        raise PreconditionError(f"{v} is not in the lattice generated by vectors of norm^2 {h}")
    target = [int(coord) for coord in scaled]
    odd_positions = [i for i in range(3) if target[i] % 2]
    odd_entries = [e for e in entries if e % 2]

    int_steps = []
    if big_n % 2 == 0:
        if len(odd_positions) % 2:
            raise PreconditionError(f"{v} is not in the lattice generated by vectors of norm^2 {h}")
        if odd_positions:
            even_entry = [e for e in entries if e % 2 == 0][0]
            first = [0, 0, 0]
            first[odd_positions[0]], first[odd_positions[1]] = odd_entries
            first[3 - odd_positions[0] - odd_positions[1]] = even_entry
            int_steps.append(first)
    else:
        for position in odd_positions:
            int_steps.append(_arrange(entries, position, odd_entries[0]))

    residual = list(target)
    for step in int_steps:
        residual = [r - s for r, s in zip(residual, step)]
    for axis in range(3):
        if residual[axis]:
            int_steps.extend(_axis_steps(entries, axis, residual[axis] // 2))

    chain = ChainCertificate(
        v, h, tuple(QVec3(Fraction(s[0], den), Fraction(s[1], den), Fraction(s[2], den)) for s in int_steps)
    )
    problems = chain.problems()
    if problems:
        raise ChainError(f"chain for {v} with h = {h} is invalid: {problems[0]}")
    logger.debug(f"chain of {len(chain.steps)} steps for {v} with h = {h}")
    return chain


def isosceles_form(r, d, representation=None) -> TernaryForm | None:
    """
    Integer form x^2 + r*y^2 - (4d - r)(a^2 + b^2)*z^2, denominators cleared.

    None when 4d - r <= 0.
    """
    r, d = to_rational(r), to_rational(d)
    a, b, c = representation if representation is not None else _representation(r)
    slack = 4 * d - r
    if slack <= 0:
        return None
    coeffs = (Fraction(1), r, -slack * (a * a + b * b))
    scale = lcm(*(coef.denominator for coef in coeffs))
    return TernaryForm(*(int(coef * scale) for coef in coeffs))


def _representation(q: Fraction):
    rep = rational_three_squares(q)
    if rep is None:
        raise NotEmbeddableError(f"sqrt({q}) is not a distance realized in Q^3")
    return rep


def isosceles_embeddable(r, d, representation=None) -> Verdict:
    """
    Whether the triangle with sides sqrt(r), sqrt(d), sqrt(d) has a Q^3 copy.

    Args:
        r (Fraction): Squared base length.
        d (Fraction): Squared leg length.
        representation (tuple | None): Rationals (a, b, c), a^2+b^2+c^2 = r,
            a and b not both zero. Defaults to the canonical one.

    Returns:
        Verdict: ok iff the embedding exists; `details` holds the form.
    """
    r, d = to_rational(r), to_rational(d)
    if r <= 0 or d <= 0:
        raise PreconditionError(f"side lengths must be positive, got r={r}, d={d}")
    _representation(d)
    if representation is None:
        representation = _representation(r)
    else:
        representation = tuple(to_rational(x) for x in representation)
        a, b, c = representation
        if a * a + b * b + c * c != r or (a == 0 and b == 0):
            raise PreconditionError(f"{representation} is not a usable representation of {r}")
    form = isosceles_form(r, d, representation)
    if form is None:
        return Verdict(False, f"degenerate triangle: 4d - r = {4 * d - r} <= 0")
    if legendre_solvable(form):
        return Verdict(True, f"{form} is solvable", (form,))
    return Verdict(False, f"{form} has no non-trivial zero", (form,))


def eq_pair_feasible(t, d) -> Verdict:
    """
    Both isosceles triangles of a symmetric 5-cycle, T(sqrt t, sqrt d, sqrt d)
    and T(sqrt d, sqrt t, sqrt t), embed in Q^3 (each with its own solution).
    """
    t, d = to_rational(t), to_rational(d)
    try:
        base = isosceles_embeddable(t, d)
        legs = isosceles_embeddable(d, t)
    except NotEmbeddableError as e:
        return Verdict(False, str(e))
    if base and legs:
        return Verdict(True, "both equations solvable", base.details + legs.details)
    failed = base if not base else legs
    return Verdict(False, failed.reason, base.details + legs.details)
