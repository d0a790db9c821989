import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from eulercat import FIXTURES
from eulercat.nerve import hom_count_matrix, nondegenerate_counts
from eulercat.series import (
    NoCertificate,
    PoleAtMinusOne,
    Polynomial,
    RationalFunction,
    bareiss_det,
    eval_at_minus_one,
    fit_rational,
    resolvent_series,
    taylor_prefix,
)

T = Polynomial([0, 1])
ONE = Polynomial([1])


def matrix_power_counts(A, N):
    """sum of entries of A^n, by repeated integer matrix multiplication."""
    n = len(A)
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    out = []
    for _ in range(N + 1):
        out.append(sum(map(sum, P)))
        P = [[sum(P[i][k] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return out


def leibniz_det(M):
    n = len(M)
    total = Polynomial()
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = Polynomial([(-1) ** inversions])
        for i in range(n):
            term = term * M[i][perm[i]]
        total = total + term
    return total


def test_polynomial_arithmetic():
    p = Polynomial([1, 2, 1])
    q, r = divmod(p, Polynomial([1, 1]))
    assert q == Polynomial([1, 1]) and r.is_zero()
    assert p(-1) == 0
    assert str(Polynomial([2, -1])) == "2 - t"
    assert Polynomial([0, 0]).degree == -1


def test_rational_function_normal_form():
    R = RationalFunction(Polynomial([2, 2]), Polynomial([4, 0, -4]))  # 2(1+t) / 4(1-t^2)
    assert R.num == Polynomial([Fraction(1, 2)])
    assert R.den == Polynomial([1, -1])
    assert RationalFunction(R.num, R.den) == R


def test_resolvent_examples():
    assert resolvent_series([[1]]) == RationalFunction(1, Polynomial([1, -1]))
    assert resolvent_series([[0, 1], [0, 0]]) == RationalFunction(Polynomial([2, 1]))
    assert resolvent_series([[0] * 3 for _ in range(3)]) == RationalFunction(3)


def test_resolvent_matches_nerve_counts(fixtures):
    for name in FIXTURES:
        cat = fixtures[name]
        R = resolvent_series(hom_count_matrix(cat))
        assert R.den[0] == 1
        assert taylor_prefix(R, 9) == nondegenerate_counts(cat, 8), name


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_resolvent_matches_matrix_powers(A):
    R = resolvent_series(A)
    assert taylor_prefix(R, 10) == matrix_power_counts(A, 9)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(A):
    M = [[ONE.scale(int(i == j)) - T.scale(a) + Polynomial([a * a]) for j, a in enumerate(row)]
         for i, row in enumerate(A)]
    assert bareiss_det(M) == leibniz_det(M)


def test_fit_examples():
    assert fit_rational([1] * 8) == RationalFunction(1, Polynomial([1, -1]))
    assert fit_rational([2, 1, 0, 0, 0, 0, 0, 0]) == RationalFunction(Polynomial([2, 1]))


def test_factorials_have_no_certificate():
    with pytest.raises(NoCertificate) as exc:
        fit_rational([math.factorial(n) for n in range(10)])
    assert exc.value.first_mismatch is not None


def test_fit_needs_four_coefficients():
    with pytest.raises(ValueError):
        fit_rational([1, 1, 1])


def test_eval_examples():
    assert eval_at_minus_one(RationalFunction(1, Polynomial([1, -1]))) == Fraction(1, 2)
    assert eval_at_minus_one(RationalFunction(Polynomial([2, 1]))) == 1
    with pytest.raises(PoleAtMinusOne):
        eval_at_minus_one(RationalFunction(1, Polynomial([1, 1])))


def test_spurious_factor_of_one_plus_t_is_removed():
    # (1+t) / ((1+t)(1-t)) has no pole at -1 once reduced
    R = RationalFunction(Polynomial([1, 1]), Polynomial([1, 0, -1]))
    assert eval_at_minus_one(R) == Fraction(1, 2)


coeff = st.integers(-5, 5)


@st.composite
def rational_functions(draw, max_degree=4):
    g = Polynomial(draw(st.lists(coeff, min_size=1, max_size=max_degree + 1)))
    h_tail = draw(st.lists(coeff, min_size=0, max_size=max_degree))
    assume(not g.is_zero())
    return RationalFunction(g, Polynomial([1] + h_tail))


@settings(max_examples=60, deadline=None)
@given(rational_functions(), st.lists(coeff, min_size=1, max_size=3))
def test_eval_invariant_under_common_factor(R, extra):
    c = Polynomial(extra)
    assume(not c.is_zero() and c(-1) != 0)
    try:
        expected = eval_at_minus_one(R)
    except PoleAtMinusOne:
        with pytest.raises(PoleAtMinusOne):
            eval_at_minus_one(RationalFunction(R.num * c, R.den * c))
        return
    raw_num, raw_den = R.num * c, R.den * c
    assert raw_num(-1) / raw_den(-1) == expected
    assert eval_at_minus_one(RationalFunction(raw_num, raw_den)) == expected


@settings(max_examples=60, deadline=None)
@given(rational_functions())
def test_normalization_idempotent(R):
    assert RationalFunction(R.num, R.den) == R
    assert RationalFunction(R.num.scale(3), R.den.scale(3)) == R


@settings(max_examples=100, deadline=None)
@given(rational_functions())
def test_fit_round_trip(R):
    a, b = R.num.degree, R.den.degree
    length = 2 * (a + b) + 4 + 1  # coefficients c_0 ... c_{2(a+b)+4}
    # the default order cap M // 4 admits denominators up to degree a + 2 at this length
    assume(b <= (length - 1) // 4)
    assert fit_rational(taylor_prefix(R, length)) == R


@settings(max_examples=60, deadline=None)
@given(rational_functions())
def test_fit_never_returns_a_wrong_function(R):
    prefix = taylor_prefix(R, 12)
    try:
        S = fit_rational(prefix)
    except NoCertificate:
        return
    assert taylor_prefix(S, 12) == prefix


def test_integer_coefficient_export():
    R = RationalFunction(Polynomial([Fraction(1, 2)]), Polynomial([1, Fraction(-1, 3)]))
    assert R.integer_coefficients() == ([3], [6, -2])
