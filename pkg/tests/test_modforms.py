"""Tests for exact level-2 modular form expansions and decompositions."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomod._core import numeric
from anomod._core.errors import PreconditionError
from anomod._core.modforms import (
    LOWER_BASIS,
    UPPER_BASIS,
    decompose_weight6,
    delta_epsilon,
    eisenstein_e2,
    evaluate_series,
    theta_null,
    verify_theta_four_identities,
    weight6_basis,
)
from anomod._core.qseries import RATIONALS, QSeries, monomial


def _leading(series, count):
    return [series.coefficient(h) for h in range(count)]


def test_divisor_sum_leading_coefficients():
    assert delta_epsilon("delta1", 6).coefficient(0) == Fraction(1, 4)
    assert delta_epsilon("delta1", 6).coefficient(2) == 6
    assert _leading(delta_epsilon("epsilon1", 6), 5) == [Fraction(1, 16), 0, -1, 0, 7]
    assert _leading(delta_epsilon("delta2", 6), 2) == [Fraction(-1, 8), -3]
    assert _leading(delta_epsilon("epsilon2", 6), 3) == [0, 1, 8]


def test_eisenstein_e2_coefficients():
    assert _leading(eisenstein_e2(6), 5) == [1, 0, -24, 0, -72]


def test_unknown_form_is_rejected():
    with pytest.raises(PreconditionError):
        delta_epsilon("delta3", 6)
    with pytest.raises(PreconditionError):
        theta_null("theta4", 6)


def test_theta_constants():
    assert theta_null("theta3", 5).series.to_pairs() == [(0, 1), (1, 2), (4, 2)]
    assert theta_null("theta2", 5).series.to_pairs() == [(0, 1), (1, -2), (4, 2)]
    assert theta_null("theta1", 5).series.to_pairs() == [(0, 2), (2, 2)]
    assert theta_null("derivative", 5).series.to_pairs() == [(0, 1), (2, -3)]
    assert theta_null("theta", 5).series.is_zero()


def test_theta_constant_offsets():
    fourth = theta_null("theta1", 6) ** 4

    assert fourth.offset == 4
    assert fourth.to_series().coefficient(1) == 16
    with pytest.raises(PreconditionError):
        theta_null("theta1", 6).to_series()


def test_theta_fourth_power_identities_hold():
    checks = verify_theta_four_identities(12)

    assert [c.name for c in checks] == ["delta1", "epsilon1", "delta2", "epsilon2"]
    assert all(c.passed for c in checks)


def test_theta_fourth_power_perturbation_is_caught():
    checks = verify_theta_four_identities(12, {"delta1": monomial(RATIONALS, 2, 1, 12)})
    by_name = {c.name: c for c in checks}

    assert not by_name["delta1"].passed
    assert by_name["delta1"].residual_terms == 1
    assert by_name["epsilon2"].passed


def test_weight6_bases():
    cube, mixed = weight6_basis(UPPER_BASIS, 4)
    assert _leading(cube, 3) == [-1, -72, -1800]
    assert _leading(mixed, 3) == [0, -1, -32]

    cube, mixed = weight6_basis(LOWER_BASIS, 4)
    assert [cube.coefficient(0), cube.coefficient(2)] == [Fraction(1, 64), Fraction(9, 8)]
    assert [mixed.coefficient(0), mixed.coefficient(2)] == [Fraction(1, 64), Fraction(1, 8)]


def test_decompose_basis_element_is_exact():
    cube, _ = weight6_basis(UPPER_BASIS, 12)
    decomposition = decompose_weight6(cube, UPPER_BASIS)

    assert decomposition.h0 == 1
    assert decomposition.h1 == 0
    assert decomposition.exact


def test_decompose_reports_residual_outside_span():
    cube, _ = weight6_basis(UPPER_BASIS, 12)
    decomposition = decompose_weight6(cube + monomial(RATIONALS, 1, 5, 12), UPPER_BASIS)

    assert decomposition.h0 == 1
    assert decomposition.h1 == -5
    assert not decomposition.exact
    assert min(decomposition.residual.support()) >= 2


def test_decompose_lower_basis_combination():
    cube, mixed = weight6_basis(LOWER_BASIS, 12)
    decomposition = decompose_weight6(cube * 3 - mixed * 2, LOWER_BASIS)

    assert (decomposition.h0, decomposition.h1) == (3, -2)
    assert decomposition.exact


_rationals = st.fractions(min_value=-9, max_value=9, max_denominator=7)
_series = st.dictionaries(st.integers(0, 11), _rationals, max_size=6).map(
    lambda coeffs: QSeries(RATIONALS, coeffs, 12)
)


@settings(max_examples=100, deadline=None)
@given(_series, _series, _rationals, _rationals, st.sampled_from([UPPER_BASIS, LOWER_BASIS]))
def test_decomposition_is_linear(first, second, a, b, basis):
    left = decompose_weight6(first, basis)
    right = decompose_weight6(second, basis)
    combined = decompose_weight6(first * a + second * b, basis)

    assert combined.h0 == left.h0 * a + right.h0 * b
    assert combined.h1 == left.h1 * a + right.h1 * b
    assert combined.residual == left.residual * a + right.residual * b


def test_decompose_needs_order_four():
    with pytest.raises(PreconditionError):
        decompose_weight6(QSeries.one(RATIONALS, 3), UPPER_BASIS)
    with pytest.raises(PreconditionError):
        weight6_basis("Gamma(2)", 6)


def test_exact_series_agree_with_numeric_products():
    tau = 0.1 + 1.2j
    order = 40

    pairs = [
        (delta_epsilon("delta1", order), numeric.delta1(tau)),
        (delta_epsilon("epsilon1", order), numeric.epsilon1(tau)),
        (delta_epsilon("delta2", order), numeric.delta2(tau)),
        (delta_epsilon("epsilon2", order), numeric.epsilon2(tau)),
    ]
    for series, value in pairs:
        assert abs(evaluate_series(series, tau) - value) < 1e-9
    assert abs(evaluate_series(eisenstein_e2(order), 1j) - 3 / math.pi) < 1e-6
