"""Suite execution.

This module is the orchestration layer:
- configure logging verbosity
- run every target under every configuration and merge the reports
- skip target/configuration pairs that do not apply (rank hypotheses,
  symbolic ranks where concrete ones are needed)
- run the fault-injection self-test

Public entry points:
- :func:`run_suite`
- :func:`self_test`
"""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence

from .anomaly import (
    TARGETS,
    flipped_tensor_statement,
    perturbed_p2,
    printed_sign_residual,
    resolve_target,
    verify_p2_modularity,
    verify_statement,
    verify_target,
    verify_theta_fourth_powers,
)
from .charclass import COSH_HALF_MODE
from .errors import ConfigurationError, UnsupportedConfigurationError
from .qseries import RATIONALS, monomial
from .result import report_sort_key
from .types import VerificationConfig, VerificationReport

logger = logging.getLogger(__name__)

DEFAULT_SUITE: tuple[VerificationConfig, ...] = (
    VerificationConfig(),
    VerificationConfig(xi_mode="trivial"),
    VerificationConfig(ranks=(4, 2)),
)
SELF_TEST_CONFIG = VerificationConfig(xi_mode="trivial", q_order=6)


def default_suite(base: VerificationConfig | None = None) -> tuple[VerificationConfig, ...]:
    """The built-in matrix, with truncation and Euler reading taken from ``base``."""
    if base is None:
        return DEFAULT_SUITE
    shared = {
        "max_degree": base.max_degree,
        "q_order": base.q_order,
        "euler_mode": base.euler_mode,
    }
    return tuple(config.with_changes(**shared) for config in DEFAULT_SUITE)


def configure_logging(verbose: bool) -> None:
    """Configure Python logging verbosity."""
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", force=True)


def run_suite(
    configs: Sequence[VerificationConfig] = DEFAULT_SUITE,
    targets: Sequence[str] | None = None,
) -> list[VerificationReport]:
    """Run ``targets`` (default: all) under each configuration.

    Pairs whose configuration contradicts the target's hypotheses, or that
    need concrete ranks under a symbolic configuration, are skipped with a
    debug record. Reports come back in canonical order.

    Example:
        >>> run_suite([])
        []
    """
    names = [resolve_target(t) for t in targets] if targets is not None else list(TARGETS)
    reports: list[VerificationReport] = []
    for config in configs:
        for target in names:
            start = time.perf_counter()
            try:
                produced = verify_target(target, config)
            except (ConfigurationError, UnsupportedConfigurationError) as exc:
                logger.debug("Skipping %s for %s: %s", target, config.ranks_label, exc)
                continue
            logger.debug(
                "Finished %s [%s, xi=%s] in %.1f ms",
                target,
                config.ranks_label,
                config.xi_mode,
                (time.perf_counter() - start) * 1000,
            )
            reports.extend(produced)
    return sorted(reports, key=report_sort_key)


def _detection(name: str, injected: VerificationReport) -> VerificationReport:
    detected = injected.status == "fail" or (
        injected.status == "info" and injected.residual_terms > 0
    )
    return VerificationReport(
        check_id=f"self-test[{name}]",
        identity=injected.identity,
        status="pass" if detected else "fail",
        residual_terms=injected.residual_terms,
        residual_sample=injected.residual_sample,
        euler_mode=injected.euler_mode,
        ranks=injected.ranks,
        xi_mode=injected.xi_mode,
        q_order=injected.q_order,
        max_degree=injected.max_degree,
        elapsed_ms=injected.elapsed_ms,
        detail="injected fault detected" if detected else "injected fault NOT detected",
    )


def _baseline(name: str, clean: VerificationReport) -> VerificationReport:
    return VerificationReport(
        check_id=f"self-test[{name}]",
        identity=clean.identity,
        status=clean.status,
        residual_terms=clean.residual_terms,
        residual_sample=clean.residual_sample,
        ranks=clean.ranks,
        xi_mode=clean.xi_mode,
        q_order=clean.q_order,
        max_degree=clean.max_degree,
        elapsed_ms=clean.elapsed_ms,
        detail="unmodified run",
    )


def self_test(config: VerificationConfig = SELF_TEST_CONFIG) -> list[VerificationReport]:
    """Inject faults that a correct harness must catch.

    Injections:
    - ``+q`` added to the divisor-sum side of the ``delta1`` identity
    - the tensor term of the correction bundle with its sign flipped
    - ``P2`` perturbed by ``p1T^3 q^(5/2)``
    - the printed ``q^1`` sign in the coefficient chain

    Each injection yields a ``pass`` record when the fault is detected.
    The unmodified theta identities and ``P2`` run alongside as baselines.
    """
    order = max(config.q_order, 6)
    config = config.with_changes(q_order=order)
    reports = [
        _baseline("baseline-theta4", verify_theta_fourth_powers(config)),
        _baseline("baseline-p2", verify_p2_modularity(config)),
        _detection(
            "perturbed-delta1",
            verify_theta_fourth_powers(config, {"delta1": monomial(RATIONALS, 2, 1, order)}),
        ),
        _detection(
            "flipped-tensor-sign",
            verify_statement(flipped_tensor_statement(config), config, COSH_HALF_MODE),
        ),
        _detection("perturbed-p2", verify_p2_modularity(config, perturbed_p2(config))),
    ]
    start = time.perf_counter()
    printed = printed_sign_residual(config)
    reports.append(
        _detection(
            "printed-sign",
            VerificationReport(
                check_id="coeff-eqs-printed-sign",
                identity="q^1 relation with first factor -(p1T + p1F1 - p1F2)",
                status="info",
                residual_terms=len(printed),
                ranks=config.ranks_label,
                xi_mode=config.xi_mode,
                q_order=4,
                max_degree=config.max_degree,
                elapsed_ms=(time.perf_counter() - start) * 1000,
            ),
        )
    )
    logger.debug("Self-test ran %d checks", len(reports))
    return reports
