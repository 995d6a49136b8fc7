from fractions import Fraction
from itertools import product
from math import gcd, isqrt

import pytest
from hypothesis import given, settings, strategies as st

from scavenger.commands.tools import legendre_report
from scavenger.core.numtheory import (
    TernaryForm,
    antipodal_dist_sq,
    construct_chain,
    eq_pair_feasible,
    in_T,
    is_quadratic_residue,
    isosceles_embeddable,
    legendre_solution,
    legendre_solvable,
    normalize_form,
    phi_criteria,
    rational_three_squares,
    t_values,
    three_squares,
)
from scavenger.core.qcore import QVec3, norm_sq, reduce_distance
from scavenger.errors import NotEmbeddableError, PreconditionError, UnsolvableFormError

F = Fraction


def holzer_search(a, b, c):
    """Any non-trivial zero with |x| <= sqrt|bc| and |y| <= sqrt|ac|."""
    for x in range(isqrt(abs(b * c)) + 1):
        for y in range(isqrt(abs(a * c)) + 1):
            if x == 0 and y == 0:
                continue
            rest = a * x * x + b * y * y
            if rest % c:
                continue
            z_sq = -rest // c
            if z_sq >= 0 and isqrt(z_sq) ** 2 == z_sq:
                return True
    return False


def squarefree_product(a, b, c):
    n = abs(a * b * c)
    return all(n % (p * p) for p in range(2, 31))


def brute_primitive_triples(n):
    found = []
    for a in range(isqrt(n) + 1):
        for b in range(a + 1):
            c_sq = n - a * a - b * b
            if c_sq < 0:
                break
            c = isqrt(c_sq)
            if c * c == c_sq and c <= b and gcd(a, b, c) == 1:
                found.append((a, b, c))
    return found


def test_in_T():
    for t in (10, 22, 30, 34, 66):
        assert in_T(t)
    for t in (2, 6, 14, 33, 44, 0):
        assert not in_T(t)
    assert t_values(40) == [10, 22, 30, 34]


def test_is_quadratic_residue():
    assert is_quadratic_residue(-1, 5)
    assert not is_quadratic_residue(-1, 3)
    assert is_quadratic_residue(0, 7)
    assert is_quadratic_residue(5, 1)
    with pytest.raises(PreconditionError):
        is_quadratic_residue(1, 0)


def test_legendre_examples():
    for coeffs in ((1, 2, -4), (1, 1, -2), (1, 2, -3)):
        form = TernaryForm(*coeffs)
        assert legendre_solvable(form)
        x, y, z = legendre_solution(form)
        assert (x, y, z) != (0, 0, 0)
        assert form.evaluate(x, y, z) == 0
    assert legendre_solution(TernaryForm(1, 1, -2)) == (1, 1, 1)


def test_legendre_unsolvable():
    assert not legendre_solvable(TernaryForm(1, 1, -3))
    assert not legendre_solvable(TernaryForm(1, 1, 1))
    with pytest.raises(UnsolvableFormError):
        legendre_solution(TernaryForm(1, 1, -3))
    with pytest.raises(PreconditionError):
        legendre_solvable(TernaryForm(1, 0, -3))


def test_legendre_report_names_failing_condition():
    assert legendre_report(1, 1, -3) == "unsolvable: -ab = -1 not a QR of 3"
    assert legendre_report(2, 3, 5) == "unsolvable: coefficients all share one sign"
    assert legendre_report(1, 1, -2) == "solvable: (x, y, z) = (1, 1, 1)"


def test_normalize_form_lifts_solutions():
    form = TernaryForm(4, 18, -6)
    normalized = normalize_form(form)
    a, b, c = normalized.form.coefficients
    assert squarefree_product(a, b, c)
    assert gcd(a, b) == gcd(a, c) == gcd(b, c) == 1
    if legendre_solvable(form):
        assert form.evaluate(*legendre_solution(form)) == 0


@pytest.mark.slow
def test_legendre_matches_holzer_search():
    checked = 0
    for a, b, c in product(range(1, 31), range(1, 31), range(-30, 0)):
        if a > b or not squarefree_product(a, b, c):
            continue
        form = TernaryForm(a, b, c)
        expected = holzer_search(a, b, c)
        assert legendre_solvable(form) == expected, form
        if expected:
            assert form.evaluate(*legendre_solution(form)) == 0
        checked += 1
    assert checked > 300


def test_three_squares_examples():
    assert three_squares(22) == (3, 3, 2)
    assert three_squares(30) == (5, 2, 1)
    assert three_squares(198) == (14, 1, 1)
    assert three_squares(16170) == (127, 5, 4)
    assert three_squares(7) is None
    assert three_squares(4) is None
    with pytest.raises(PreconditionError):
        three_squares(0)


def test_three_squares_matches_brute_force():
    for n in range(1, 400):
        triples = brute_primitive_triples(n)
        expected = max(triples) if triples else None
        assert three_squares(n) == expected, n


def has_primitive_triple_led_by(n, a):
    rest = n - a * a
    for b in range(min(a, isqrt(rest)), -1, -1):
        c_sq = rest - b * b
        if c_sq > b * b:
            break
        c = isqrt(c_sq)
        if c * c == c_sq and gcd(a, b, c) == 1:
            return True
    return False


@settings(max_examples=60)
@given(st.integers(min_value=1, max_value=10**5))
def test_three_squares_is_the_largest_primitive_triple(n):
    triple = three_squares(n)
    if n % 8 in (0, 4, 7):
        assert triple is None
        return
    a, b, c = triple
    assert a >= b >= c >= 0
    assert a * a + b * b + c * c == n
    assert gcd(a, b, c) == 1
    assert not any(has_primitive_triple_led_by(n, larger) for larger in range(a + 1, isqrt(n) + 1))


@given(st.fractions(min_value=F(1, 1000), max_value=1000, max_denominator=100))
def test_rational_three_squares(q):
    r, _ = reduce_distance(q)
    rep = rational_three_squares(q)
    assert (rep is None) == (r % 8 == 7)
    if rep is not None:
        assert sum(x * x for x in rep) == q


def test_rational_three_squares_rejects_seven_mod_eight():
    assert rational_three_squares(7) is None
    assert rational_three_squares(F(7, 4)) is None
    assert sum(x * x for x in rational_three_squares(F(539, 30))) == F(539, 30)


def test_phi_criteria():
    for h in (2, 6, 1, 5, F(1, 2), F(5, 2), F(1078, 15), F(2, 9)):
        assert phi_criteria(h), h
    for h in (3, F(2216, 55), 4):
        assert not phi_criteria(h), h
    with pytest.raises(PreconditionError):
        phi_criteria(0)


def test_antipodal_dist_sq():
    assert antipodal_dist_sq(F(539, 30)) == F(1078, 15)
    assert phi_criteria(antipodal_dist_sq(F(539, 30)))
    with pytest.raises(PreconditionError):
        antipodal_dist_sq(F(1, 3))


def test_construct_chain_small_example():
    chain = construct_chain(QVec3(3, 0, 1), 2)
    assert chain.steps == (QVec3(1, 0, 1), QVec3(1, 1, 0), QVec3(1, -1, 0))


CHAIN_STEPS = (2, 6, 10, F(1, 2), F(5, 2), 1, 5, F(1078, 15), F(2, 9))
CHAIN_TARGETS = ((3, 0, 1), (3, 3, 2), (1, 2, 5), (5, 2, 1), (3, 3, 4), (5, 3, 0))


@pytest.mark.parametrize("h", CHAIN_STEPS)
@pytest.mark.parametrize("target", CHAIN_TARGETS)
def test_construct_chain_sums_exactly(target, h):
    v = QVec3(*target)
    chain = construct_chain(v, h)
    assert chain.problems() == []
    assert all(norm_sq(step) == F(h) for step in chain.steps)
    total = QVec3(0, 0, 0)
    for step in chain.steps:
        total = total + step
    assert total == v


def test_construct_chain_rejects_targets_outside_the_lattice():
    with pytest.raises(PreconditionError):
        construct_chain(QVec3(1, 0, 0), 2)
    with pytest.raises(PreconditionError):
        construct_chain(QVec3(3, 0, 1), 3)


def test_isosceles_embeddable():
    assert isosceles_embeddable(2, 1)
    assert not isosceles_embeddable(3, 1)
    assert isosceles_embeddable(30, 26)
    assert isosceles_embeddable(26, 30)
    degenerate = isosceles_embeddable(4, 1)
    assert not degenerate and "degenerate" in degenerate.reason
    with pytest.raises(NotEmbeddableError):
        isosceles_embeddable(7, 5)


def integer_representations(r):
    """(a, b, c) with a^2 + b^2 + c^2 = r and a, b not both zero, one per value of c."""
    found = []
    for c in range(isqrt(r) + 1):
        rest = r - c * c
        for a in range(isqrt(rest), -1, -1):
            b = isqrt(rest - a * a)
            if rest and b * b == rest - a * a:
                found.append((a, b, c))
                break
    return found


@given(st.integers(min_value=1, max_value=200), st.integers(min_value=1, max_value=100))
def test_isosceles_embeddable_does_not_depend_on_the_representation(r, d):
    if rational_three_squares(r) is None or rational_three_squares(d) is None:
        return
    verdicts = {bool(isosceles_embeddable(r, d, rep)) for rep in integer_representations(r)}
    assert verdicts == {bool(isosceles_embeddable(r, d))}


def test_eq_pair_feasible():
    verdict = eq_pair_feasible(30, 26)
    assert verdict
    assert len(verdict.details) == 2
    assert not eq_pair_feasible(7, 5)
