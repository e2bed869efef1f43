"""Tests for the numeric transformation-law spot checks."""

import mpmath
import pytest

from anomod._core import numeric
from anomod._core.errors import PreconditionError

SAMPLES = [(0.3 + 0.1j, 1j), (0.3 + 0.1j, 0.1 + 1.2j), (0.15 - 0.05j, -0.2 + 0.9j)]


def _jtheta(n, v, tau):
    nome = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau.real, tau.imag))
    return complex(mpmath.jtheta(n, mpmath.pi * mpmath.mpc(v.real, v.imag), nome))


def test_all_laws_pass_at_default_samples():
    checks = numeric.numeric_transform_checks()

    assert len(checks) == len(numeric.DEFAULT_TAUS) * len(numeric.LAWS)
    failing = [(c.law, c.tau, c.residual) for c in checks if not c.passed]
    assert failing == []


def test_checks_are_ordered_by_sample_then_law():
    checks = numeric.numeric_transform_checks(taus=[1j, 0.1 + 1.2j])
    names = [law.name for law in numeric.LAWS]

    assert [c.law for c in checks] == names + names
    assert [c.tau for c in checks[: len(names)]] == [1j] * len(names)


@pytest.mark.parametrize("v,tau", SAMPLES)
def test_products_match_mpmath_jacobi_theta(v, tau):
    assert abs(numeric.theta(v, tau) - _jtheta(1, v, tau)) < 1e-9
    assert abs(numeric.theta1(v, tau) - _jtheta(2, v, tau)) < 1e-9
    assert abs(numeric.theta2(v, tau) - _jtheta(4, v, tau)) < 1e-9
    assert abs(numeric.theta3(v, tau) - _jtheta(3, v, tau)) < 1e-9


def test_tight_tolerance_fails_e2_laws():
    checks = numeric.numeric_transform_checks(terms=2, e2_tol=1e-30)

    assert any(not c.passed for c in checks if c.law.startswith("e2"))


def test_tau_must_lie_in_upper_half_plane():
    with pytest.raises(PreconditionError):
        numeric.numeric_transform_checks(taus=[-1j])
    with pytest.raises(PreconditionError):
        numeric.numeric_transform_checks(taus=[0.5])


def test_to_dict_records_status():
    check = numeric.numeric_transform_checks(taus=[1j])[0]
    data = check.to_dict()

    assert data["law"] == "theta-S"
    assert data["tau"] == [0.0, 1.0]
    assert data["status"] == "pass"
