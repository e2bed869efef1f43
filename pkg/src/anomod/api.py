"""Public API composition layer for anomod."""

from __future__ import annotations

from collections.abc import Sequence

from ._core.anomaly import (
    TARGETS,
    build_p1,
    build_p2,
    decompose,
    resolve_target,
    specialize,
    specialize_series,
    verify_identity as _verify_identity,
    verify_target,
)
from ._core.bundles import BundleExpr, parse_bundle, standard_bundles
from ._core.charclass import (
    A_HAT,
    GENERA,
    chern_character,
    genus_form,
    theta1_expansion,
    theta2_closed_forms,
    theta2_expansion,
)
from ._core.errors import ConfigurationError
from ._core.execution import (
    DEFAULT_SUITE,
    default_suite,
    run_suite as _run_suite,
    self_test as _self_test,
)
from ._core.gradedring import GradedElement, standard_ring
from ._core.modforms import LOWER_BASIS, UPPER_BASIS, verify_theta_four_identities
from ._core.numeric import (
    DEFAULT_TAUS,
    DEFAULT_TERMS,
    DEFAULT_V,
    E2_TOLERANCE,
    THETA_TOLERANCE,
    numeric_transform_checks,
)
from ._core.qseries import QSeries
from ._core.result import SuiteResult
from ._core.types import (
    IdentityCheck,
    ModularDecomposition,
    NumericCheck,
    VerificationConfig,
    VerificationReport,
)

EXPANSIONS = ("theta2", "theta1", "p2", "p1", "ahat", "lgenus")
DECOMPOSITIONS = ("p2", "p1")


def verify(target: str, config: VerificationConfig | None = None) -> SuiteResult:
    """Verify one target, or ``all`` of them.

    Args:
        target: Target id, published tag (``theorem1``, ``cor1``, ``cor2``,
            ``cor3``, ``gs``, ``sw``, ``agw``, ``remark``) or ``all``.
        config: Verification configuration. A single target defaults to
            ``VerificationConfig()``; ``all`` without a configuration runs the
            built-in suite, which covers every target.

    Returns:
        ``SuiteResult`` with the target's reports.

    Raises:
        ConfigurationError: If a single target does not apply to ``config``.

    Example:
        >>> verify("agw").passed
        True
    """
    if target == "all":
        return SuiteResult(_run_suite(default_suite() if config is None else [config]))
    config = config or VerificationConfig()
    return SuiteResult(verify_target(resolve_target(target), config))


def verify_identity(
    target: str, config: VerificationConfig | None = None, euler_mode: str | None = None
) -> VerificationReport:
    """Single report for one target and one Euler reading."""
    return _verify_identity(target, config or VerificationConfig(), euler_mode)


def run_suite(
    configs: Sequence[VerificationConfig] | None = None,
    targets: Sequence[str] | None = None,
) -> SuiteResult:
    """Run the verification matrix.

    Args:
        configs: Configurations to run; defaults to the built-in suite
            (symbolic generic, symbolic trivial, ``m=4,n=2``).
        targets: Target ids; defaults to every target.

    Returns:
        ``SuiteResult`` in canonical order.
    """
    return SuiteResult(_run_suite(DEFAULT_SUITE if configs is None else configs, targets))


def self_test() -> SuiteResult:
    """Run the fault-injection self-test; passes iff every fault is caught."""
    return SuiteResult(_self_test())


def expand(kind: str, config: VerificationConfig | None = None) -> QSeries | GradedElement:
    """Expansion named by ``kind``, specialized per ``config``.

    ``theta2``/``theta1`` give the Chern-character q-series of the two
    infinite products, ``p2``/``p1`` the degree-12 form-valued series, and
    ``ahat``/``lgenus`` the genus forms of the tangent bundle.

    Raises:
        ConfigurationError: For an unknown kind.
        UnsupportedConfigurationError: For ``theta1``/``p1`` with symbolic ranks.
    """
    config = config or VerificationConfig()
    ring = standard_ring(config.max_degree)
    bundles = standard_bundles()
    if kind == "theta2":
        return specialize_series(theta2_expansion(bundles, ring, config.q_order), config)
    if kind == "theta1":
        series = theta1_expansion(bundles, ring, config.q_order, config.ranks)
        return specialize_series(series, config)
    if kind == "p2":
        return build_p2(config)
    if kind == "p1":
        return build_p1(config)
    if kind in ("ahat", "lgenus"):
        return genus_form(bundles.tangent, GENERA[kind], ring)
    raise ConfigurationError(f"Unknown expansion {kind!r}; expected one of {', '.join(EXPANSIONS)}")


def closed_forms() -> list[str]:
    """Printed closed forms of the first three ``theta2`` coefficients."""
    return [str(form) for form in theta2_closed_forms(standard_bundles())]


def decompose_series(kind: str, config: VerificationConfig | None = None) -> ModularDecomposition:
    """Decompose ``p2`` in the ``Gamma^0(2)`` basis or ``p1`` in ``Gamma_0(2)``.

    Example:
        >>> decompose_series("p2", VerificationConfig(q_order=6)).exact
        True
    """
    config = config or VerificationConfig()
    if kind == "p2":
        return decompose(build_p2(config), UPPER_BASIS)
    if kind == "p1":
        return decompose(build_p1(config), LOWER_BASIS)
    raise ConfigurationError(
        f"Unknown series {kind!r}; expected one of {', '.join(DECOMPOSITIONS)}"
    )


def numeric_transforms(
    taus: Sequence[complex] = DEFAULT_TAUS,
    v: complex = DEFAULT_V,
    terms: int = DEFAULT_TERMS,
    tolerance: float = THETA_TOLERANCE,
    e2_tolerance: float = E2_TOLERANCE,
) -> list[NumericCheck]:
    """Numeric residuals of the theta, delta/epsilon and E2 transformation laws."""
    return numeric_transform_checks(taus, v, terms, tolerance, e2_tolerance)


def theta_fourth_identities(order: int = 12) -> list[IdentityCheck]:
    """Exact residuals of the four theta fourth-power identities."""
    return verify_theta_four_identities(order)


def character(text: str, config: VerificationConfig | None = None) -> GradedElement:
    """Chern character of a bundle expression, specialized per ``config``.

    Example:
        >>> str(character("xi", VerificationConfig()))
        '2 + c^2 + 1/12*c^4 + 1/360*c^6'
    """
    config = config or VerificationConfig()
    ring = standard_ring(config.max_degree)
    return specialize(chern_character(parse_bundle(text), ring), config)


def ahat_form(bundle: BundleExpr | str = "TZ", max_degree: int = 12) -> GradedElement:
    """Â-genus form of a bundle expression."""
    expr = parse_bundle(bundle) if isinstance(bundle, str) else bundle
    return genus_form(expr, A_HAT, standard_ring(max_degree))

