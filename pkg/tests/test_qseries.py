"""Tests for truncated q^(1/2) series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomod._core.errors import ContextMismatchError, PreconditionError, TruncationError
from anomod._core.gradedring import exp_nilpotent, standard_ring, substitute
from anomod._core.qseries import (
    RATIONALS,
    QSeries,
    exp_series,
    invert_series,
    lift,
    monomial,
)

RING = standard_ring(12)
ORDER = 8

_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def _rational_series(unit=False):
    coeffs = st.dictionaries(st.integers(1, ORDER - 1), _rationals, max_size=5)
    if unit:
        return coeffs.map(lambda c: QSeries(RATIONALS, {**c, 0: 1}, ORDER))
    return coeffs.map(lambda c: QSeries(RATIONALS, c, ORDER))


def _nilpotent_values():
    names = ("c", "p1T", "p1F1")
    return st.lists(st.tuples(st.sampled_from(names), _rationals), max_size=3).map(
        lambda pairs: sum((RING.generator(n) * v for n, v in pairs), RING.zero())
    )


def _graded_series():
    return st.dictionaries(st.integers(0, ORDER - 1), _nilpotent_values(), max_size=4).map(
        lambda c: QSeries(RING, c, ORDER)
    )


def test_difference_of_squares():
    s = QSeries(RATIONALS, {0: 1, 1: 1}, ORDER)
    t = QSeries(RATIONALS, {0: 1, 1: -1}, ORDER)

    assert (s * t).to_pairs() == [(0, 1), (2, -1)]


def test_invert_geometric_series():
    inverse = invert_series(QSeries(RATIONALS, {0: 1, 2: -1}, ORDER))

    assert inverse.to_pairs() == [(0, 1), (2, 1), (4, 1), (6, 1)]


def test_invert_rejects_zero_constant_term():
    with pytest.raises(PreconditionError):
        invert_series(QSeries(RATIONALS, {1: 1}, ORDER))


def test_exp_of_zero_is_one():
    assert exp_series(QSeries.zero(RING, ORDER)) == QSeries.one(RING, ORDER)


def test_exp_picks_up_linear_q_term():
    x = RING.generator("p1T") - RING.generator("p1F1") + RING.generator("p1F2")
    series = exp_series(QSeries(RING, {0: x / 24, 2: -x}, ORDER))

    assert series.coefficient(0) == exp_nilpotent(x / 24)
    assert series.coefficient(1) == 0
    assert series.coefficient(2) == -x * exp_nilpotent(x / 24)


def test_exp_accepts_rank_terms_behind_positive_powers():
    series = exp_series(QSeries(RING, {2: RING.one() * 3}, ORDER))

    assert series.coefficient(0) == RING.one()
    assert series.coefficient(2) == RING.one() * 3
    assert series.coefficient(4) == RING.one() * Fraction(9, 2)
    assert series.coefficient(6) == RING.one() * Fraction(9, 2)


def test_exp_rejects_non_nilpotent_constant_term():
    with pytest.raises(PreconditionError):
        exp_series(QSeries(RING, {0: RING.one()}, ORDER))
    with pytest.raises(PreconditionError):
        exp_series(QSeries(RATIONALS, {0: 1}, ORDER))


def test_coefficient_beyond_order_is_unknown():
    series = QSeries(RATIONALS, {0: 1}, 4)

    assert series.coefficient(3) == 0
    with pytest.raises(TruncationError):
        series.coefficient(4)


def test_order_is_the_minimum_of_operands():
    a = QSeries(RATIONALS, {0: 1, 5: 2}, 8)
    b = QSeries(RATIONALS, {0: 1}, 5)

    assert (a * b).order == 5
    assert (a + b).order == 5
    assert (a + b).to_pairs() == [(0, 2)]


def test_shift_and_truncate():
    series = QSeries(RATIONALS, {0: 1, 1: 3}, 4).shift(2)

    assert series.order == 6
    assert series.to_pairs() == [(2, 1), (3, 3)]
    assert series.truncate(3).to_pairs() == [(2, 1)]
    with pytest.raises(TruncationError):
        series.truncate(7)
    with pytest.raises(PreconditionError):
        series.shift(-1)


def test_lift_and_ring_mismatch():
    c = RING.generator("c")
    lifted = lift(monomial(RATIONALS, 2, Fraction(1, 2), ORDER), c)

    assert lifted.coefficient(2) == c / 2
    with pytest.raises(ContextMismatchError):
        lifted + QSeries.one(RATIONALS, ORDER)
    with pytest.raises(ContextMismatchError):
        lift(lifted, c)


@settings(max_examples=100, deadline=None)
@given(_rational_series(unit=True))
def test_invert_series_is_inverse(a):
    assert a * invert_series(a) == QSeries.one(RATIONALS, ORDER)
    assert invert_series(invert_series(a)) == a


@settings(max_examples=100, deadline=None)
@given(_rational_series(), _rational_series(), _rational_series())
def test_series_multiplication_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(_graded_series(), _graded_series())
def test_exp_series_is_a_homomorphism(a, b):
    assert exp_series(a + b) == exp_series(a) * exp_series(b)


@settings(max_examples=100, deadline=None)
@given(_graded_series(), _graded_series())
def test_substitution_commutes_with_series_operations(a, b):
    assignment = {"p1T": RING.generator("p1F1") + RING.generator("c") ** 2}

    def sub(value):
        return substitute(value, assignment)

    assert (a * b).map_coefficients(sub) == a.map_coefficients(sub) * b.map_coefficients(sub)
    assert exp_series(a).map_coefficients(sub) == exp_series(a.map_coefficients(sub))
