"""Public entry points for the anomod package.

The package is functional-first: most users only need the functions below
(or ``anomod.api``) plus the configuration and report dataclasses.

Design principle:
- Keep the public surface small and easy to discover.
- Hide the exact algebra behind ``anomod.api``.
"""

from __future__ import annotations

from collections.abc import Sequence

from . import api
from ._core.errors import (
    AnomodError,
    ConfigurationError,
    ContextMismatchError,
    ParseError,
    PreconditionError,
    TruncationError,
    UnsupportedConfigurationError,
)
from ._core.gradedring import GradedElement, GradedRing, parse_element, serialize, standard_ring
from ._core.qseries import QSeries
from ._core.result import SuiteResult
from ._core.types import ModularDecomposition, VerificationConfig, VerificationReport

__all__ = [
    "AnomodError",
    "ConfigurationError",
    "ContextMismatchError",
    "ParseError",
    "PreconditionError",
    "TruncationError",
    "UnsupportedConfigurationError",
    "GradedElement",
    "GradedRing",
    "QSeries",
    "SuiteResult",
    "ModularDecomposition",
    "VerificationConfig",
    "VerificationReport",
    "parse_element",
    "serialize",
    "standard_ring",
    # Public functional API
    "verify",
    "run_suite",
    "self_test",
    "expand",
]


def verify(
    target: str,
    ranks: tuple[int, int] | None = None,
    xi: str = "generic",
    euler_mode: str = "both",
    max_degree: int = 12,
    q_order: int = 12,
) -> SuiteResult:
    """Verify one target (or ``all``) with keyword configuration.

    This is a convenience wrapper around :func:`anomod.api.verify`.

    Args:
        target: Target id, alias or ``all``.
        ranks: ``None`` for symbolic ranks, else ``(m, n)``.
        xi: ``generic`` or ``trivial``.
        euler_mode: ``cosh-half``, ``exp-half`` or ``both``.
        max_degree: Truncation degree of the graded ring.
        q_order: Truncation order of q-series, in half-units.

    Returns:
        ``SuiteResult``.
    """
    config = VerificationConfig(
        ranks=ranks,
        xi_mode=xi,  # type: ignore[arg-type]
        euler_mode=euler_mode,  # type: ignore[arg-type]
        max_degree=max_degree,
        q_order=q_order,
    )
    return api.verify(target, config)


def run_suite(
    configs: Sequence[VerificationConfig] | None = None,
    targets: Sequence[str] | None = None,
) -> SuiteResult:
    """Run every target under each configuration (default: the built-in suite)."""
    return api.run_suite(configs, targets)


def self_test() -> SuiteResult:
    """Run the fault-injection self-test."""
    return api.self_test()


def expand(kind: str, config: VerificationConfig | None = None) -> QSeries | GradedElement:
    """Alias for :func:`anomod.api.expand`."""
    return api.expand(kind, config)
