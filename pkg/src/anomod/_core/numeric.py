"""Numeric spot checks of the theta and Eisenstein transformation laws.

Theta functions are evaluated from their truncated product formulas with
numpy; each law is a pair of callables ``(lhs, rhs)`` of ``(tau, v)``.
Sample points are independent and run on a thread pool.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .types import NumericCheck
from .validation import validate_tau

logger = logging.getLogger(__name__)

DEFAULT_TERMS = 64
THETA_TOLERANCE = 1e-9
E2_TOLERANCE = 1e-6
DEFAULT_TAUS = (1j, 0.1 + 1.2j)
DEFAULT_V = 0.3 + 0.1j


def _nome_powers(tau: complex, exponents: np.ndarray) -> np.ndarray:
    return np.exp(2j * np.pi * tau * exponents)


def theta(v: complex, tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    """``2 q^(1/8) sin(πv) prod (1-q^j)(1-e^(2πiv) q^j)(1-e^(-2πiv) q^j)``."""
    j = np.arange(1, terms + 1, dtype=float)
    qj = _nome_powers(tau, j)
    z = cmath.exp(2j * math.pi * v)
    product = np.prod((1 - qj) * (1 - z * qj) * (1 - qj / z))
    return complex(2 * cmath.exp(1j * math.pi * tau / 4) * cmath.sin(math.pi * v) * product)


def theta1(v: complex, tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    """``2 q^(1/8) cos(πv) prod (1-q^j)(1+e^(2πiv) q^j)(1+e^(-2πiv) q^j)``."""
    j = np.arange(1, terms + 1, dtype=float)
    qj = _nome_powers(tau, j)
    z = cmath.exp(2j * math.pi * v)
    product = np.prod((1 - qj) * (1 + z * qj) * (1 + qj / z))
    return complex(2 * cmath.exp(1j * math.pi * tau / 4) * cmath.cos(math.pi * v) * product)


def _half_product(v: complex, tau: complex, terms: int, sign: int) -> complex:
    j = np.arange(1, terms + 1, dtype=float)
    qj = _nome_powers(tau, j)
    half = _nome_powers(tau, j - 0.5)
    z = cmath.exp(2j * math.pi * v)
    return complex(np.prod((1 - qj) * (1 + sign * z * half) * (1 + sign * half / z)))


def theta2(v: complex, tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    """``prod (1-q^j)(1-e^(2πiv) q^(j-1/2))(1-e^(-2πiv) q^(j-1/2))``."""
    return _half_product(v, tau, terms, -1)


def theta3(v: complex, tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    """``prod (1-q^j)(1+e^(2πiv) q^(j-1/2))(1+e^(-2πiv) q^(j-1/2))``."""
    return _half_product(v, tau, terms, 1)


def eisenstein_e2(tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    """``1 - 24 sum(sigma_1(n) q^n)`` for ``n <= terms``."""
    n = np.arange(1, terms + 1)
    divides = (n[:, None] % n[None, :]) == 0
    sigma = (divides * n[None, :]).sum(axis=1)
    return complex(1 - 24 * np.sum(sigma * _nome_powers(tau, n.astype(float))))


def delta1(tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    return (theta2(0, tau, terms) ** 4 + theta3(0, tau, terms) ** 4) / 8


def epsilon1(tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    return theta2(0, tau, terms) ** 4 * theta3(0, tau, terms) ** 4 / 16


def delta2(tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    return -(theta1(0, tau, terms) ** 4 + theta3(0, tau, terms) ** 4) / 8


def epsilon2(tau: complex, terms: int = DEFAULT_TERMS) -> complex:
    return theta1(0, tau, terms) ** 4 * theta3(0, tau, terms) ** 4 / 16


Side = Callable[[complex, complex, int], complex]


@dataclass(frozen=True)
class TransformLaw:
    """A law ``lhs(tau, v) == rhs(tau, v)`` checked to ``tolerance``."""

    name: str
    lhs: Side
    rhs: Side
    kind: str = "theta"


def _s_factor(tau: complex, v: complex) -> complex:
    return cmath.sqrt(tau / 1j) * cmath.exp(1j * math.pi * tau * v * v)


_EIGHTH = cmath.exp(1j * math.pi / 4)

LAWS: tuple[TransformLaw, ...] = (
    TransformLaw(
        "theta-S",
        lambda t, v, n: theta(v, -1 / t, n),
        lambda t, v, n: _s_factor(t, v) / 1j * theta(t * v, t, n),
    ),
    TransformLaw(
        "theta1-S",
        lambda t, v, n: theta1(v, -1 / t, n),
        lambda t, v, n: _s_factor(t, v) * theta2(t * v, t, n),
    ),
    TransformLaw(
        "theta2-S",
        lambda t, v, n: theta2(v, -1 / t, n),
        lambda t, v, n: _s_factor(t, v) * theta1(t * v, t, n),
    ),
    TransformLaw(
        "theta3-S",
        lambda t, v, n: theta3(v, -1 / t, n),
        lambda t, v, n: _s_factor(t, v) * theta3(t * v, t, n),
    ),
    TransformLaw(
        "theta-T",
        lambda t, v, n: theta(v, t + 1, n),
        lambda t, v, n: _EIGHTH * theta(v, t, n),
    ),
    TransformLaw(
        "theta1-T",
        lambda t, v, n: theta1(v, t + 1, n),
        lambda t, v, n: _EIGHTH * theta1(v, t, n),
    ),
    TransformLaw(
        "theta2-T",
        lambda t, v, n: theta2(v, t + 1, n),
        lambda t, v, n: theta3(v, t, n),
    ),
    TransformLaw(
        "theta3-T",
        lambda t, v, n: theta3(v, t + 1, n),
        lambda t, v, n: theta2(v, t, n),
    ),
    TransformLaw(
        "delta2-S",
        lambda t, v, n: delta2(-1 / t, n),
        lambda t, v, n: t**2 * delta1(t, n),
    ),
    TransformLaw(
        "epsilon2-S",
        lambda t, v, n: epsilon2(-1 / t, n),
        lambda t, v, n: t**4 * epsilon1(t, n),
    ),
    TransformLaw(
        "delta1-S",
        lambda t, v, n: delta1(-1 / t, n),
        lambda t, v, n: t**2 * delta2(t, n),
    ),
    TransformLaw(
        "epsilon1-S",
        lambda t, v, n: epsilon1(-1 / t, n),
        lambda t, v, n: t**4 * epsilon2(t, n),
    ),
    TransformLaw(
        "e2-T",
        lambda t, v, n: eisenstein_e2(t + 1, n),
        lambda t, v, n: eisenstein_e2(t, n),
        kind="e2",
    ),
    TransformLaw(
        "e2-S",
        lambda t, v, n: eisenstein_e2(-1 / t, n),
        lambda t, v, n: t**2 * eisenstein_e2(t, n) - 6j * t / math.pi,
        kind="e2",
    ),
    TransformLaw(
        "e2-fixed-point",
        lambda t, v, n: eisenstein_e2(1j, n),
        lambda t, v, n: 3 / math.pi,
        kind="e2",
    ),
)


def _check_sample(
    tau: complex, v: complex, terms: int, theta_tol: float, e2_tol: float
) -> list[NumericCheck]:
    checks: list[NumericCheck] = []
    for law in LAWS:
        residual = abs(law.lhs(tau, v, terms) - law.rhs(tau, v, terms))
        tolerance = e2_tol if law.kind == "e2" else theta_tol
        checks.append(NumericCheck(law.name, tau, v, float(residual), tolerance, terms))
    return checks


def numeric_transform_checks(
    taus: Sequence[complex] = DEFAULT_TAUS,
    v: complex = DEFAULT_V,
    terms: int = DEFAULT_TERMS,
    theta_tol: float = THETA_TOLERANCE,
    e2_tol: float = E2_TOLERANCE,
) -> list[NumericCheck]:
    """Evaluate every transformation law at each sample point.

    Args:
        taus: Sample points in the upper half plane.
        v: Elliptic variable for the theta laws.
        terms: Number of product factors / Fourier terms.
        theta_tol: Tolerance for theta and delta/epsilon laws.
        e2_tol: Tolerance for the E2 laws.

    Returns:
        Checks ordered by sample, then by law.

    Raises:
        PreconditionError: If some ``tau`` has ``Im tau <= 0``.
    """
    samples = [complex(t) for t in taus]
    for tau in samples:
        validate_tau(tau)
    with ThreadPoolExecutor() as pool:
        per_sample = list(
            pool.map(lambda t: _check_sample(t, complex(v), terms, theta_tol, e2_tol), samples)
        )
    checks = [check for sample in per_sample for check in sample]
    worst = max((c.residual for c in checks), default=0.0)
    logger.debug("Evaluated %d numeric checks; max residual %.3e", len(checks), worst)
    return checks
