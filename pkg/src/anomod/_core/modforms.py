"""Exact q-expansions of level-2 modular forms and basis decomposition.

This module provides:
- theta constants as exact product expansions (with an eighth-power offset)
- the Eisenstein series E2 and the forms delta/epsilon via divisor sums
- the fourth-power theta identities as a residual check
- decomposition of weight-6 form-valued series in the two level-2 bases

Public entry points:
- :func:`theta_null`, :func:`eisenstein_e2`, :func:`delta_epsilon`
- :func:`verify_theta_four_identities`, :func:`decompose_weight6`
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np
import sympy

from .errors import PreconditionError
from .gradedring import GradedElement
from .qseries import RATIONALS, QSeries, lift
from .types import IdentityCheck, ModularDecomposition

logger = logging.getLogger(__name__)

UPPER_BASIS = "Gamma^0(2)"
LOWER_BASIS = "Gamma_0(2)"
BASES = (UPPER_BASIS, LOWER_BASIS)

THETA_KINDS = ("theta", "theta1", "theta2", "theta3", "derivative")
DELTA_EPSILON = ("delta1", "epsilon1", "delta2", "epsilon2")

# Half-unit pivots of the triangular solve, per basis.
_PIVOTS = {UPPER_BASIS: (0, 1), LOWER_BASIS: (0, 2)}


@dataclass(frozen=True)
class ThetaConstant:
    """An exact series times ``q^(offset/8)``.

    Attributes:
        series: Rational series in half-units of ``q``.
        offset: Extra exponent, measured in eighths of ``q``.

    Example:
        >>> (theta_null("theta1", 6) ** 4).offset
        4
    """

    series: QSeries
    offset: int = 0

    def __mul__(self, other: ThetaConstant) -> ThetaConstant:
        return ThetaConstant(self.series * other.series, self.offset + other.offset)

    def __pow__(self, k: int) -> ThetaConstant:
        result = ThetaConstant(QSeries.one(RATIONALS, self.series.order))
        for _ in range(k):
            result = result * self
        return result

    def to_series(self) -> QSeries:
        """Plain series; the offset must be a whole number of half-units.

        Raises:
            PreconditionError: If ``offset`` is not a multiple of 4.
        """
        if self.offset % 4:
            raise PreconditionError(
                f"q^({self.offset}/8) is not a half-integer power; multiply to a whole offset first"
            )
        return self.series.shift(self.offset // 4)


def _product(order: int, factors: list[tuple[int, int, int]]) -> QSeries:
    """``prod((1 + sign * q^(h/2))^power)`` over ``(h, sign, power)``."""
    result = QSeries.one(RATIONALS, order)
    for h, sign, power in factors:
        if h >= order:
            continue
        factor = QSeries(RATIONALS, {0: 1, h: sign}, order)
        for _ in range(power):
            result = result * factor
    return result


@lru_cache(maxsize=64)
def theta_null(kind: str, order: int) -> ThetaConstant:
    """Theta constants as exact truncated products.

    ``theta1``: ``2 q^(1/8) prod (1-q^j)(1+q^j)^2``;
    ``theta2``: ``prod (1-q^j)(1-q^(j-1/2))^2``;
    ``theta3``: ``prod (1-q^j)(1+q^(j-1/2))^2``;
    ``derivative``: ``θ'(0)/(2π) = q^(1/8) prod (1-q^j)^3``;
    ``theta``: the odd theta function vanishes at 0.

    Raises:
        PreconditionError: For ``order < 1`` or an unknown kind.
    """
    if order < 1:
        raise PreconditionError(f"Theta constants need order >= 1, got {order}")
    whole = range(1, order // 2 + 1)
    half = range(1, (order + 1) // 2 + 1)
    if kind == "theta":
        return ThetaConstant(QSeries.zero(RATIONALS, order), 1)
    if kind == "theta1":
        factors = [(2 * j, -1, 1) for j in whole] + [(2 * j, 1, 2) for j in whole]
        return ThetaConstant(_product(order, factors).scale(2), 1)
    if kind == "theta2":
        factors = [(2 * j, -1, 1) for j in whole] + [(2 * j - 1, -1, 2) for j in half]
        return ThetaConstant(_product(order, factors))
    if kind == "theta3":
        factors = [(2 * j, -1, 1) for j in whole] + [(2 * j - 1, 1, 2) for j in half]
        return ThetaConstant(_product(order, factors))
    if kind == "derivative":
        return ThetaConstant(_product(order, [(2 * j, -1, 3) for j in whole]), 1)
    raise PreconditionError(f"Unknown theta constant {kind!r}; expected one of {THETA_KINDS}")


def _divisors(n: int) -> list[int]:
    return [int(d) for d in sympy.divisors(n)]


@lru_cache(maxsize=64)
def eisenstein_e2(order: int) -> QSeries:
    """``E2 = 1 - 24 sum(sigma_1(n) q^n)`` to ``order`` half-units.

    Example:
        >>> eisenstein_e2(5).coefficient(2)
        Fraction(-24, 1)
    """
    if order < 1:
        raise PreconditionError(f"E2 needs order >= 1, got {order}")
    coeffs = {2 * n: -24 * int(sympy.divisor_sigma(n, 1)) for n in range(1, (order + 1) // 2)}
    coeffs[0] = 1
    return QSeries(RATIONALS, coeffs, order)


@lru_cache(maxsize=64)
def delta_epsilon(which: str, order: int) -> QSeries:
    """The level-2 forms by divisor sums.

    ``delta1 = 1/4 + 6 sum(sum_{d|n, d odd} d) q^n``,
    ``epsilon1 = 1/16 + sum(sum_{d|n} (-1)^d d^3) q^n``,
    ``delta2 = -1/8 - 3 sum(sum_{d|n, d odd} d) q^(n/2)``,
    ``epsilon2 = sum(sum_{d|n, n/d odd} d^3) q^(n/2)``.

    Raises:
        PreconditionError: For an unknown name or ``order < 1``.
    """
    if order < 1:
        raise PreconditionError(f"Series need order >= 1, got {order}")
    if which == "delta1":
        coeffs: dict[int, Any] = {0: Fraction(1, 4)}
        for n in range(1, (order + 1) // 2):
            coeffs[2 * n] = 6 * sum(d for d in _divisors(n) if d % 2)
    elif which == "epsilon1":
        coeffs = {0: Fraction(1, 16)}
        for n in range(1, (order + 1) // 2):
            coeffs[2 * n] = sum((-1) ** d * d**3 for d in _divisors(n))
    elif which == "delta2":
        coeffs = {0: Fraction(-1, 8)}
        for n in range(1, order):
            coeffs[n] = -3 * sum(d for d in _divisors(n) if d % 2)
    elif which == "epsilon2":
        coeffs = {}
        for n in range(1, order):
            coeffs[n] = sum(d**3 for d in _divisors(n) if (n // d) % 2)
    else:
        raise PreconditionError(f"Unknown form {which!r}; expected one of {DELTA_EPSILON}")
    return QSeries(RATIONALS, coeffs, order)


def theta_fourth_sides(order: int) -> dict[str, tuple[QSeries, QSeries]]:
    """Both sides of the four fourth-power identities, keyed by form name."""
    t1 = (theta_null("theta1", order) ** 4).to_series().truncate(order)
    t2 = (theta_null("theta2", order) ** 4).to_series()
    t3 = (theta_null("theta3", order) ** 4).to_series()
    return {
        "delta1": (delta_epsilon("delta1", order), (t2 + t3) * Fraction(1, 8)),
        "epsilon1": (delta_epsilon("epsilon1", order), t2 * t3 * Fraction(1, 16)),
        "delta2": (delta_epsilon("delta2", order), (t1 + t3) * Fraction(-1, 8)),
        "epsilon2": (delta_epsilon("epsilon2", order), t1 * t3 * Fraction(1, 16)),
    }


def verify_theta_four_identities(
    order: int, perturbations: Mapping[str, QSeries] | None = None
) -> list[IdentityCheck]:
    """Compare the divisor-sum forms with theta fourth powers, coefficient-wise.

    Args:
        order: Truncation order in half-units.
        perturbations: Optional series added to the divisor-sum side, keyed by
            form name (used by fault injection).

    Returns:
        One :class:`IdentityCheck` per form, in the order
        ``delta1, epsilon1, delta2, epsilon2``.
    """
    checks: list[IdentityCheck] = []
    for name, (lhs, rhs) in theta_fourth_sides(order).items():
        if perturbations and name in perturbations:
            lhs = lhs + perturbations[name]
        residual = lhs - rhs
        checks.append(IdentityCheck(name, len(residual.support()), residual))
    return checks


@lru_cache(maxsize=16)
def weight6_basis(basis: str, order: int) -> tuple[QSeries, QSeries]:
    """The two basis series of weight-6 forms for ``basis``.

    ``Gamma^0(2)``: ``(8 delta2)^3`` and ``(8 delta2) epsilon2``;
    ``Gamma_0(2)``: ``delta1^3`` and ``delta1 epsilon1``.
    """
    if basis == UPPER_BASIS:
        d = delta_epsilon("delta2", order) * 8
        return d * d * d, d * delta_epsilon("epsilon2", order)
    if basis == LOWER_BASIS:
        d = delta_epsilon("delta1", order)
        return d * d * d, d * delta_epsilon("epsilon1", order)
    raise PreconditionError(f"Unknown basis {basis!r}; expected one of {BASES}")


def _times(basis_series: QSeries, coefficient: Any, target: Any) -> QSeries:
    if target == RATIONALS:
        return basis_series.scale(coefficient)
    return lift(basis_series, coefficient)


def decompose_weight6(series: QSeries, basis: str) -> ModularDecomposition:
    """Solve for the basis coefficients from two pivots and form the residual.

    The pivots are ``q^0`` and ``q^(1/2)`` for ``Gamma^0(2)`` and ``q^0`` and
    ``q^1`` for ``Gamma_0(2)``. The residual covers every coefficient below the
    series' order.

    Raises:
        PreconditionError: If the order is below 4 half-units, or the pivot
            matrix is singular.
    """
    if series.order < 4:
        raise PreconditionError(f"Decomposition needs order >= 4 half-units, got {series.order}")
    b1, b2 = weight6_basis(basis, series.order)
    p0, p1 = _PIVOTS[basis]
    a, b = b1.coefficient(p0), b2.coefficient(p0)
    c, d = b1.coefficient(p1), b2.coefficient(p1)
    det = a * d - b * c
    if not det:
        raise PreconditionError(f"Pivot matrix of basis {basis} is singular")
    s0, s1 = series.coefficient(p0), series.coefficient(p1)
    h0 = (s0 * d - s1 * b) * (1 / det)
    h1 = (s1 * a - s0 * c) * (1 / det)
    residual = series - _times(b1, h0, series.ring) - _times(b2, h1, series.ring)
    if isinstance(h0, GradedElement):
        logger.debug(
            "Decomposed in %s: h0 has %d terms, h1 has %d terms, residual support %s",
            basis,
            len(h0),
            len(h1),
            residual.support(),
        )
    return ModularDecomposition(h0, h1, residual, basis)


def evaluate_series(series: QSeries, tau: complex) -> complex:
    """Numeric value of a rational series at ``tau`` (``q^(h/2) = e^(πiτh)``)."""
    pairs = series.to_pairs()
    if not pairs:
        return 0j
    exponents = np.array([h for h, _ in pairs], dtype=float)
    values = np.array([float(v) for _, v in pairs], dtype=complex)
    return complex(np.sum(values * np.exp(1j * np.pi * tau * exponents)))
