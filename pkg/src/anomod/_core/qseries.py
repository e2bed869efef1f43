"""Truncated formal power series in ``q^(1/2)``.

Exponents are stored in half-units (``h`` stands for ``q^(h/2)``). A series
knows its truncation order ``N``: coefficients with ``h >= N`` are unknown,
and asking for one is an error rather than a silent zero.

Coefficients live in a coefficient ring descriptor: a
:class:`~anomod._core.gradedring.GradedRing`, :data:`RATIONALS` or
:data:`COMPLEX`. Descriptors expose ``zero``, ``one``, ``coerce``,
``exp_nilpotent`` and ``invert_unit``.
"""

from __future__ import annotations

import cmath
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from numbers import Complex, Rational
from typing import Any

from .errors import ContextMismatchError, PreconditionError, TruncationError
from .gradedring import GradedElement, GradedRing

DEFAULT_ORDER = 12


@dataclass(frozen=True)
class RationalField:
    """Exact rational coefficients."""

    name: str = "QQ"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, Rational):
            return Fraction(value)
        raise ContextMismatchError(f"Expected a rational coefficient, got {value!r}")

    def exp_nilpotent(self, value: Fraction) -> Fraction:
        if value:
            raise PreconditionError(f"exp of the rational {value} is not rational")
        return Fraction(1)

    def invert_unit(self, value: Fraction) -> Fraction:
        if not value:
            raise PreconditionError("Series with zero constant term is not invertible")
        return 1 / value


@dataclass(frozen=True)
class ComplexField:
    """Floating-point complex coefficients (numeric evaluation only)."""

    name: str = "CC"

    def zero(self) -> complex:
        return 0j

    def one(self) -> complex:
        return 1 + 0j

    def coerce(self, value: Any) -> complex:
        if isinstance(value, Complex):
            return complex(value)
        raise ContextMismatchError(f"Expected a complex coefficient, got {value!r}")

    def exp_nilpotent(self, value: complex) -> complex:
        return cmath.exp(value)

    def invert_unit(self, value: complex) -> complex:
        if value == 0:
            raise PreconditionError("Series with zero constant term is not invertible")
        return 1 / value


RATIONALS = RationalField()
COMPLEX = ComplexField()

CoefficientRing = GradedRing | RationalField | ComplexField


class QSeries:
    """Immutable truncated series ``sum(c_h * q^(h/2) for h < order)``."""

    __slots__ = ("ring", "order", "_coeffs")

    def __init__(
        self,
        ring: CoefficientRing,
        coeffs: Mapping[int, Any] | None = None,
        order: int = DEFAULT_ORDER,
    ) -> None:
        if order < 0:
            raise PreconditionError(f"Truncation order must be non-negative, got {order}")
        clean: dict[int, Any] = {}
        for h, value in (coeffs or {}).items():
            if h < 0:
                raise PreconditionError(f"Negative exponent {h} is not supported")
            if h >= order:
                continue
            value = ring.coerce(value)
            if value:
                clean[h] = value
        self.ring = ring
        self.order = order
        self._coeffs = clean

    @classmethod
    def _raw(cls, ring: CoefficientRing, coeffs: dict[int, Any], order: int) -> QSeries:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.order = order
        obj._coeffs = {h: v for h, v in coeffs.items() if v and h < order}
        return obj

    @classmethod
    def one(cls, ring: CoefficientRing, order: int = DEFAULT_ORDER) -> QSeries:
        return cls(ring, {0: ring.one()}, order)

    @classmethod
    def zero(cls, ring: CoefficientRing, order: int = DEFAULT_ORDER) -> QSeries:
        return cls(ring, {}, order)

    def coefficient(self, h: int) -> Any:
        """Coefficient of ``q^(h/2)``.

        Raises:
            TruncationError: If ``h`` is at or beyond the truncation order.
        """
        if h < 0:
            raise PreconditionError(f"Negative exponent {h} is not supported")
        if h >= self.order:
            raise TruncationError(
                f"Coefficient of q^({h}/2) is unknown: series is truncated at order {self.order}"
            )
        return self._coeffs.get(h, self.ring.zero())

    def items(self) -> Iterator[tuple[int, Any]]:
        return iter(sorted(self._coeffs.items()))

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: QSeries) -> None:
        if self.ring != other.ring:
            raise ContextMismatchError(f"Series coefficient rings differ: {self.ring} vs {other.ring}")

    def __add__(self, other: QSeries) -> QSeries:
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        order = min(self.order, other.order)
        out = dict(self._coeffs)
        for h, v in other._coeffs.items():
            out[h] = out[h] + v if h in out else v
        return QSeries._raw(self.ring, out, order)

    def __neg__(self) -> QSeries:
        return QSeries._raw(self.ring, {h: -v for h, v in self._coeffs.items()}, self.order)

    def __sub__(self, other: QSeries) -> QSeries:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Any) -> QSeries:
        if isinstance(other, QSeries):
            return mul_series(self, other)
        return self.scale(other)

    def __rmul__(self, other: Any) -> QSeries:
        return self.scale(other)

    def scale(self, factor: Any) -> QSeries:
        """Multiply every coefficient by a ring value or rational scalar."""
        if not isinstance(factor, Rational):
            factor = self.ring.coerce(factor)
        return QSeries._raw(self.ring, {h: v * factor for h, v in self._coeffs.items()}, self.order)

    def shift(self, k: int) -> QSeries:
        """Multiply by ``q^(k/2)``; the known range moves up with it."""
        if k < 0:
            raise PreconditionError("Negative shifts would need Laurent tails")
        return QSeries._raw(self.ring, {h + k: v for h, v in self._coeffs.items()}, self.order + k)

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise TruncationError(f"Cannot extend a series known to order {self.order} to {order}")
        return QSeries._raw(self.ring, dict(self._coeffs), order)

    def map_coefficients(
        self, fn: Callable[[Any], Any], ring: CoefficientRing | None = None
    ) -> QSeries:
        """Apply ``fn`` to every stored coefficient (``fn(0)`` must be 0)."""
        target = ring or self.ring
        return QSeries(target, {h: fn(v) for h, v in self._coeffs.items()}, self.order)

    def to_pairs(self) -> list[tuple[int, Any]]:
        return list(self.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.ring == other.ring and self.order == other.order and self._coeffs == other._coeffs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{h}: {v}" for h, v in self.items())
        return f"QSeries({{{body}}}, order={self.order})"


def mul_series(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product, truncated at the smaller order."""
    a._check(b)
    order = min(a.order, b.order)
    left = sorted(a._coeffs.items())
    right = sorted(b._coeffs.items())
    out: dict[int, Any] = {}
    for i, ai in left:
        if i >= order:
            break
        for j, bj in right:
            h = i + j
            if h >= order:
                break
            term = ai * bj
            out[h] = out[h] + term if h in out else term
    return QSeries._raw(a.ring, out, order)


def invert_series(a: QSeries) -> QSeries:
    """Multiplicative inverse; the constant term must be a unit.

    Raises:
        PreconditionError: If the constant term is not invertible.
    """
    ring = a.ring
    if a.order == 0:
        return QSeries.zero(ring, 0)
    b0 = ring.invert_unit(a.coefficient(0))
    coeffs = a._coeffs
    b: dict[int, Any] = {0: b0}
    for h in range(1, a.order):
        acc = None
        for j in range(1, h + 1):
            aj = coeffs.get(j)
            bk = b.get(h - j)
            if aj is None or bk is None:
                continue
            term = aj * bk
            acc = term if acc is None else acc + term
        if acc is not None:
            value = -(b0 * acc)
            if value:
                b[h] = value
    return QSeries._raw(ring, b, a.order)


def exp_series(a: QSeries) -> QSeries:
    """Exponential of a series whose constant term is nilpotent.

    The positive part is exponentiated by the recurrence
    ``f_h = (1/h) * sum(j * a_j * f_(h-j))``; the constant term contributes
    the factor ``exp(a_0)`` computed in the coefficient ring.

    Only ``a_0`` must be nilpotent (zero over the rationals). Coefficients at
    ``h > 0`` may be arbitrary, rank terms included: they sit behind a
    positive power of ``q``, so every output coefficient below the order is
    a finite sum.

    Raises:
        PreconditionError: If ``a_0`` is not nilpotent.
    """
    ring = a.ring
    if a.order == 0:
        return QSeries.zero(ring, 0)
    base = ring.exp_nilpotent(a.coefficient(0))
    coeffs = a._coeffs
    f: dict[int, Any] = {0: ring.one()}
    for h in range(1, a.order):
        acc = None
        for j in range(1, h + 1):
            aj = coeffs.get(j)
            fk = f.get(h - j)
            if aj is None or fk is None:
                continue
            term = aj * fk * j
            acc = term if acc is None else acc + term
        if acc is not None:
            value = acc * Fraction(1, h)
            if value:
                f[h] = value
    out = QSeries._raw(ring, f, a.order)
    return out if base == ring.one() else out.scale(base)


def lift(series: QSeries, element: GradedElement) -> QSeries:
    """Rational series times a fixed graded element."""
    if series.ring != RATIONALS:
        raise ContextMismatchError("Only rational series can be lifted into a graded ring")
    return QSeries._raw(
        element.ring, {h: element * v for h, v in series._coeffs.items()}, series.order
    )


def monomial(ring: CoefficientRing, h: int, value: Any, order: int = DEFAULT_ORDER) -> QSeries:
    """The series ``value * q^(h/2)``."""
    return QSeries(ring, {h: value}, order)
