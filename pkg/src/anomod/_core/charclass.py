"""Characteristic classes of virtual bundles and their q-expansions.

This module turns :mod:`~anomod._core.bundles` expressions into forms:
- Chern characters (additive, multiplicative, λ-operations via Adams ψ²)
- multiplicative genera from an even series ``g(x)`` (Â, L, cosh(x/2))
- Euler-class factors ``e^(c/2)`` and ``cosh(c/2)``
- Chern characters of infinite products of ``S_t`` / ``Λ_t`` as q-series
- the two theta-product expansions and their closed forms

Public entry points:
- :func:`chern_character`, :func:`genus_form`, :func:`euler_factor`
- :func:`lambda_product_ch`, :func:`theta2_expansion`, :func:`theta1_expansion`
- :func:`theta_quotient_expansion`
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str.__format__(str(self.value), format_spec)
from fractions import Fraction
from functools import lru_cache
from math import factorial

import sympy

from .bundles import (
    Adams,
    Atom,
    BundleExpr,
    BundleSet,
    Difference,
    Exterior2,
    Scale,
    Sum,
    Symmetric2,
    Tensor,
    Tilde,
    Trivial,
    exterior2,
    rank_of,
    symmetric2,
    tilde,
)
from .errors import ConfigurationError, PreconditionError, UnsupportedConfigurationError
from .gradedring import (
    GradedElement,
    GradedRing,
    adams,
    apply_univariate_series,
    exp_nilpotent,
    extract_degree,
)
from .qseries import RATIONALS, QSeries, exp_series, invert_series, lift

_X = sympy.Symbol("x")

EXP_HALF = "exp-half"
COSH_HALF_MODE = "cosh-half"
EULER_KINDS = (COSH_HALF_MODE, EXP_HALF)


def _to_fraction(value: sympy.Expr) -> Fraction:
    value = sympy.sympify(value)
    if not value.is_Rational:
        raise PreconditionError(f"Series coefficient {value} is not rational")
    return Fraction(int(value.p), int(value.q))


@lru_cache(maxsize=64)
def scalar_series_coefficients(expression: str, count: int) -> tuple[Fraction, ...]:
    """Taylor coefficients ``[x^0 .. x^(count-1)]`` of a sympy expression in ``x``.

    Example:
        >>> scalar_series_coefficients("cosh(x/2)", 3)
        (Fraction(1, 1), Fraction(0, 1), Fraction(1, 8))
    """
    expr = sympy.sympify(expression, locals={"x": _X})
    expansion = sympy.series(expr, _X, 0, count).removeO()
    return tuple(_to_fraction(sympy.expand(expansion).coeff(_X, k)) for k in range(count))


@lru_cache(maxsize=64)
def _log_coefficients(expression: str, count: int) -> tuple[Fraction, ...]:
    expr = sympy.sympify(expression, locals={"x": _X})
    expansion = sympy.series(sympy.log(expr), _X, 0, 2 * count + 1).removeO()
    expanded = sympy.expand(expansion)
    if expanded.coeff(_X, 0) != 0:
        raise PreconditionError(f"Genus series {expression} must start with 1")
    return tuple(_to_fraction(expanded.coeff(_X, 2 * k)) for k in range(1, count + 1))


@dataclass(frozen=True)
class GenusSpec:
    """Multiplicative sequence defined by an even series ``g(x)``, ``g(0) = 1``.

    Attributes:
        name: Short identifier (``ahat``, ``lgenus``, ``cosh-half``).
        series: sympy expression text in ``x``.

    Example:
        >>> A_HAT.log_coefficients(2)
        (Fraction(-1, 24), Fraction(1, 2880))
    """

    name: str
    series: str

    def log_coefficients(self, count: int) -> tuple[Fraction, ...]:
        """Coefficients ``a_2, a_4, ..`` of ``log g(x)``."""
        return _log_coefficients(self.series, count)

    def coefficients(self, count: int) -> tuple[Fraction, ...]:
        return scalar_series_coefficients(self.series, count)


A_HAT = GenusSpec("ahat", "(x/2)/sinh(x/2)")
L_GENUS = GenusSpec("lgenus", "x/tanh(x)")
COSH_HALF = GenusSpec("cosh-half", "cosh(x/2)")

GENERA = {spec.name: spec for spec in (A_HAT, L_GENUS, COSH_HALF)}


# ---------------------------------------------------------------------------
# Chern character
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def chern_character(expr: BundleExpr, ring: GradedRing) -> GradedElement:
    """Chern character of a virtual bundle, truncated at the ring's degree.

    Example:
        >>> from anomod._core.bundles import standard_bundles
        >>> from anomod._core.gradedring import standard_ring
        >>> xi = standard_bundles().plane
        >>> str(chern_character(tilde(xi), standard_ring(6)))
        'c^2 + 1/12*c^4 + 1/360*c^6'
    """
    match expr:
        case Atom():
            return _atom_character(expr, ring)
        case Trivial():
            return rank_of(expr, ring)
        case Sum(left, right):
            return chern_character(left, ring) + chern_character(right, ring)
        case Difference(left, right):
            return chern_character(left, ring) - chern_character(right, ring)
        case Scale(factor, inner):
            return chern_character(inner, ring) * factor
        case Tensor(left, right):
            return chern_character(left, ring) * chern_character(right, ring)
        case Exterior2(inner):
            ch = chern_character(inner, ring)
            return (ch * ch - adams(ch, 2)) / 2
        case Symmetric2(inner):
            ch = chern_character(inner, ring)
            return (ch * ch + adams(ch, 2)) / 2
        case Adams(k, inner):
            return adams(chern_character(inner, ring), k)
        case Tilde(inner):
            return chern_character(inner, ring) - rank_of(inner, ring)
    raise TypeError(f"Not a bundle expression: {expr!r}")


def _atom_character(atom: Atom, ring: GradedRing) -> GradedElement:
    total = atom.rank_element(ring)
    for j in range(1, ring.max_degree // 2 + 1):
        total = total + atom.power_sum(ring, j) * Fraction(1, factorial(j))
    return total


def power_sums(atom: Atom, ring: GradedRing) -> tuple[GradedElement, ...]:
    """``(s_2, s_4, ..)``: even power sums of the complexified roots up to degree D."""
    return tuple(atom.power_sum(ring, 2 * k) for k in range(1, ring.max_degree // 4 + 1))


def genus_form(expr: BundleExpr, spec: GenusSpec, ring: GradedRing) -> GradedElement:
    """``exp(sum(a_2k * pi_k))`` for any real virtual bundle expression.

    ``pi_k`` is half the ``2k``-th power sum, read off the Chern character as
    ``(2k)! * ch^(4k) / 2``. The genus is therefore multiplicative over sums.
    """
    count = ring.max_degree // 4
    if count == 0:
        return ring.one()
    ch = chern_character(expr, ring)
    exponent = ring.zero()
    for k, a in enumerate(spec.log_coefficients(count), start=1):
        pi_k = extract_degree(ch, 4 * k) * Fraction(factorial(2 * k), 2)
        exponent = exponent + pi_k * a
    return exp_nilpotent(exponent)


def euler_factor(kind: str, ring: GradedRing, generator: str = "c") -> GradedElement:
    """``e^(c/2)`` (``exp-half``) or ``cosh(c/2)`` (``cosh-half``) in ``ring``.

    Raises:
        ConfigurationError: For an unknown kind.
    """
    half = ring.generator(generator) / 2
    if kind == EXP_HALF:
        return exp_nilpotent(half)
    if kind == COSH_HALF_MODE:
        return (exp_nilpotent(half) + exp_nilpotent(-half)) / 2
    raise ConfigurationError(f"Unknown euler factor {kind!r}; expected one of {EULER_KINDS}")


# ---------------------------------------------------------------------------
# Infinite products of S_t / Λ_t
# ---------------------------------------------------------------------------


class ProductFamily(StrEnum):
    """Index families of the infinite products, with the sign of ``t``.

    ``*_HALF`` families run over ``t = ±q^(v - 1/2)``, ``*_WHOLE`` over
    ``t = ±q^u``, both for ``u, v >= 1``.
    """

    SYMMETRIC_WHOLE = "S-whole"
    SYMMETRIC_HALF = "S-half"
    EXTERIOR_MINUS_HALF = "L-minus-half"
    EXTERIOR_PLUS_HALF = "L-plus-half"
    EXTERIOR_WHOLE = "L-whole"
    EXTERIOR_MINUS_WHOLE = "L-minus-whole"

    @property
    def half(self) -> bool:
        return self.value.endswith("half")

    def weight(self, k: int) -> int:
        """Sign of ``t^k / k`` in ``log`` of the factor."""
        if self in (ProductFamily.SYMMETRIC_WHOLE, ProductFamily.SYMMETRIC_HALF):
            return 1
        if self in (ProductFamily.EXTERIOR_MINUS_HALF, ProductFamily.EXTERIOR_MINUS_WHOLE):
            return -1
        return 1 if k % 2 else -1

    def exponent(self, index: int, k: int) -> int:
        """Half-unit exponent of ``t^k`` for the product index ``index >= 1``."""
        return k * (2 * index - 1) if self.half else 2 * k * index


def lambda_product_log(
    expr: BundleExpr, family: ProductFamily, ring: GradedRing, order: int
) -> QSeries:
    """``log ch`` of the product over ``family``: ``sum(±t^k/k * ch(psi^k E))``."""
    base = chern_character(expr, ring)
    coeffs: dict[int, GradedElement] = {}
    for k in range(1, order):
        if family.exponent(1, k) >= order:
            break
        term = adams(base, k) * Fraction(family.weight(k), k)
        index = 1
        while (h := family.exponent(index, k)) < order:
            coeffs[h] = coeffs[h] + term if h in coeffs else term
            index += 1
    return QSeries(ring, coeffs, order)


def lambda_product_ch(
    expr: BundleExpr, family: ProductFamily, ring: GradedRing, order: int
) -> QSeries:
    """Chern character of the infinite product as a q-series to ``order``.

    Example:
        >>> from anomod._core.bundles import standard_bundles
        >>> from anomod._core.gradedring import standard_ring
        >>> ring = standard_ring(4)
        >>> T = standard_bundles().tangent
        >>> str(lambda_product_ch(tilde(T), ProductFamily.SYMMETRIC_WHOLE, ring, 3).coefficient(2))
        'p1T'
    """
    return exp_series(lambda_product_log(expr, family, ring, order))


def theta2_log(bundles: BundleSet, ring: GradedRing, order: int) -> QSeries:
    """Logarithm of :func:`theta2_expansion` (sum of the factor logarithms)."""
    xi = tilde(bundles.plane)
    return (
        lambda_product_log(tilde(bundles.tangent), ProductFamily.SYMMETRIC_WHOLE, ring, order)
        + lambda_product_log(
            tilde(bundles.first) - tilde(bundles.second) - 2 * xi,
            ProductFamily.EXTERIOR_MINUS_HALF,
            ring,
            order,
        )
        + lambda_product_log(xi, ProductFamily.EXTERIOR_PLUS_HALF, ring, order)
        + lambda_product_log(xi, ProductFamily.EXTERIOR_WHOLE, ring, order)
    )


def theta2_expansion(bundles: BundleSet, ring: GradedRing, order: int) -> QSeries:
    """Chern character of the product whose coefficients are the ``B_j`` forms.

    Factors: ``S_{q^u}(T~)``, ``Λ_{-q^(v-1/2)}(F1~ - F2~ - 2 xi~)``,
    ``Λ_{q^(r-1/2)}(xi~)`` and ``Λ_{q^s}(xi~)``.
    """
    return exp_series(theta2_log(bundles, ring, order))


def theta1_log(
    bundles: BundleSet,
    ring: GradedRing,
    order: int,
    ranks: tuple[int, int] | None,
) -> QSeries:
    """Logarithm of :func:`theta1_expansion`.

    Raises:
        UnsupportedConfigurationError: If the ranks of ``F1``/``F2`` are symbolic.
    """
    if ranks is None:
        raise UnsupportedConfigurationError(
            "The whole-power expansion needs concrete ranks for F1 and F2"
        )
    xi = tilde(bundles.plane)
    return (
        lambda_product_log(tilde(bundles.tangent), ProductFamily.SYMMETRIC_WHOLE, ring, order)
        + lambda_product_log(
            tilde(bundles.first) - tilde(bundles.second) - 2 * xi,
            ProductFamily.EXTERIOR_WHOLE,
            ring,
            order,
        )
        + lambda_product_log(xi, ProductFamily.EXTERIOR_PLUS_HALF, ring, order)
        + lambda_product_log(xi, ProductFamily.EXTERIOR_MINUS_HALF, ring, order)
    )


def theta1_expansion(
    bundles: BundleSet,
    ring: GradedRing,
    order: int,
    ranks: tuple[int, int] | None,
) -> QSeries:
    """Chern character of the companion product over whole powers of ``q``.

    Factors: ``S_{q^u}(T~)``, ``Λ_{q^v}(V~ - 2 xi~)``, ``Λ_{q^(r-1/2)}(xi~)``
    and ``Λ_{-q^(s-1/2)}(xi~)`` with ``V = F1 - F2``.

    Raises:
        UnsupportedConfigurationError: If the ranks of ``F1``/``F2`` are symbolic.
    """
    return exp_series(theta1_log(bundles, ring, order, ranks))


def theta2_closed_forms(bundles: BundleSet) -> tuple[BundleExpr, BundleExpr, BundleExpr]:
    """Closed forms of the ``q^0``, ``q^(1/2)``, ``q^1`` coefficients.

    Rank constants are written with trivial bundles, so
    ``((m-n)^2 + (m-n))/2`` appears as ``S2(m - n)``.
    """
    m, n = bundles.rank_terms()
    T, F1, F2 = bundles.tangent, bundles.first, bundles.second
    xi = tilde(bundles.plane)
    b0 = Trivial(1)
    b1 = m - F1 + F2 - n + 3 * xi
    b2 = (
        exterior2(F1)
        + symmetric2(F2)
        - F1 * F2
        + T
        + symmetric2(m - n)
        - 10
        - (m - n) * (F1 - F2)
        + 5 * (xi * xi)
        + 3 * ((m - F1 + F2 - n + 1) * xi)
    )
    return b0, b1, b2


# ---------------------------------------------------------------------------
# Theta quotients over explicit roots
# ---------------------------------------------------------------------------

_RATIO_KINDS = {
    "theta": (-1, False),
    "theta1": (1, False),
    "theta2": (-1, True),
    "theta3": (1, True),
}


@dataclass(frozen=True)
class ThetaRoots:
    """Root generator names of an explicit-root configuration.

    Attributes:
        tangent: Roots ``x_j`` of the tangent bundle (``±x_j`` pairs).
        first: Roots of ``F1``.
        second: Roots of ``F2``.
        plane: Euler class generator of ``xi``.
    """

    tangent: tuple[str, ...]
    first: tuple[str, ...]
    second: tuple[str, ...]
    plane: str = "c"

    @property
    def ranks(self) -> tuple[int, int]:
        return 2 * len(self.first), 2 * len(self.second)


def theta_ratio(root: GradedElement, kind: str, order: int) -> QSeries:
    """Normalized product part of a theta function at a root ``w``.

    For the whole families ``t = q^j``, for the half families
    ``t = q^(j - 1/2)``; each factor is
    ``(1 + s(e^w + e^-w) t + t^2) / (1 + s t)^2``.
    """
    try:
        sign, half = _RATIO_KINDS[kind]
    except KeyError as exc:
        raise PreconditionError(f"Unknown theta kind {kind!r}") from exc
    ring = root.ring
    two_cosh = exp_nilpotent(root) + exp_nilpotent(-root)
    numerator = QSeries.one(ring, order)
    denominator = QSeries.one(RATIONALS, order)
    j = 1
    while (h := 2 * j - 1 if half else 2 * j) < order:
        numerator = numerator * QSeries(ring, {0: 1, h: two_cosh * sign, 2 * h: 1}, order)
        denominator = denominator * QSeries(RATIONALS, {0: 1, h: 2 * sign, 2 * h: 1}, order)
        j += 1
    return numerator * lift(invert_series(denominator), ring.one())


def _univariate(spec: GenusSpec, x: GradedElement) -> GradedElement:
    return apply_univariate_series(spec.coefficients(x.ring.max_degree // 2 + 2), x)


def theta_quotient_expansion(ring: GradedRing, roots: ThetaRoots, order: int) -> QSeries:
    """Product of theta-function quotients over explicit roots.

    Tangent roots contribute ``x θ'(0)/θ(x)``, the roots of ``F1`` the
    normalized ``θ2(y)/θ2(0)``, those of ``F2`` its inverse, and the plane
    root ``θ1(c)/θ1(0)`` (which carries ``cosh(c/2)``) times the normalized
    ``θ3(c) / θ2(c)^2``.
    The result equals ``Â * cosh(c/2) * ch`` of the half-power product.

    Raises:
        UnsupportedConfigurationError: If ``roots`` is empty for a bundle
            that needs them (ranks must be concrete and even).
    """
    if not roots.tangent:
        raise UnsupportedConfigurationError("Tangent roots are required for the quotient")
    result = QSeries.one(ring, order)
    for name in roots.tangent:
        x = ring.generator(name)
        local = invert_series(theta_ratio(x, "theta", order)).scale(_univariate(A_HAT, x))
        result = result * local
    for name in roots.first:
        result = result * theta_ratio(ring.generator(name), "theta2", order)
    for name in roots.second:
        result = result * invert_series(theta_ratio(ring.generator(name), "theta2", order))
    c = ring.generator(roots.plane)
    inverse = invert_series(theta_ratio(c, "theta2", order))
    plane = theta_ratio(c, "theta1", order) * theta_ratio(c, "theta3", order) * inverse * inverse
    return result * plane.scale(_univariate(COSH_HALF, c))


def elementary_images(
    roots: Sequence[str], ring: GradedRing, count: int
) -> tuple[GradedElement, ...]:
    """Elementary symmetric polynomials ``e_1 .. e_count`` of the squared roots."""
    coeffs = [ring.one()] + [ring.zero()] * count
    for name in roots:
        square = ring.generator(name) ** 2
        for i in range(count, 0, -1):
            coeffs[i] = coeffs[i] + coeffs[i - 1] * square
    return tuple(coeffs[1:])
