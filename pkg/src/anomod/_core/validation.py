"""Validation helpers for verification configurations and targets.

These functions are pure: they inspect values and raise
:class:`~anomod._core.errors.ConfigurationError` with a framed, multi-line
message, so problems are reported before any algebra runs.
"""

from __future__ import annotations

from collections.abc import Sequence

from .errors import ConfigurationError, PreconditionError
from .types import EULER_MODES, XI_MODES, VerificationConfig

MIN_MAX_DEGREE = 12
MIN_Q_ORDER = 4


def validate_config(config: VerificationConfig) -> None:
    """Validate one verification configuration.

    Args:
        config: Configuration to check.

    Raises:
        ConfigurationError: On an odd or too small degree, a too small q-order,
            negative ranks, or an unknown mode.

    Example:
        >>> validate_config(VerificationConfig())
    """
    problems: list[str] = []
    if config.max_degree % 2 or config.max_degree < MIN_MAX_DEGREE:
        problems.append(
            f"max_degree must be even and at least {MIN_MAX_DEGREE}, got {config.max_degree}"
        )
    if config.q_order < MIN_Q_ORDER:
        problems.append(f"q_order must be at least {MIN_Q_ORDER} half-units, got {config.q_order}")
    if config.ranks is not None:
        if len(config.ranks) != 2 or any(not isinstance(r, int) or r < 0 for r in config.ranks):
            problems.append(f"ranks must be two non-negative integers, got {config.ranks!r}")
    if config.xi_mode not in XI_MODES:
        problems.append(f"xi must be one of {', '.join(XI_MODES)}, got {config.xi_mode!r}")
    if config.euler_mode not in EULER_MODES:
        problems.append(
            f"euler_mode must be one of {', '.join(EULER_MODES)}, got {config.euler_mode!r}"
        )
    if problems:
        raise ConfigurationError(_format_config_error(config, problems))


def validate_target(target: str, known: Sequence[str]) -> None:
    """Reject unknown verification target ids.

    Raises:
        ConfigurationError: If ``target`` is not in ``known``.

    Example:
        >>> validate_target("agw", ["agw"])
    """
    if target in known:
        return
    lines = [
        "",
        "=" * 70,
        f"ERROR: Unknown verification target {target!r}",
        "=" * 70,
        "",
        "Known targets:",
        *[f"  - {name}" for name in known],
        "",
        "=" * 70,
        "",
    ]
    raise ConfigurationError("\n".join(lines))


def validate_hypothesis(target: str, hypothesis: str | None, config: VerificationConfig) -> None:
    """Check concrete ranks against a target's rank hypothesis.

    Symbolic ranks always pass: the hypothesis is applied as a substitution.

    Raises:
        ConfigurationError: If concrete ranks contradict the hypothesis.
    """
    if hypothesis is None or config.ranks is None:
        return
    m, n = config.ranks
    expected = {
        "shifted": ("m = n + 32", m == n + 32),
        "single": ("n = 0", n == 0),
        "so32": ("m = 32 and n = 0", m == 32 and n == 0),
    }
    try:
        wording, holds = expected[hypothesis]
    except KeyError as exc:
        raise ConfigurationError(f"Unknown rank hypothesis {hypothesis!r}") from exc
    if holds:
        return
    lines = [
        "",
        "=" * 70,
        f"ERROR: Ranks do not satisfy the hypothesis of {target!r}",
        "=" * 70,
        "",
        f"The target requires {wording}, but the configuration has {config.ranks_label}.",
        "",
        "Use --ranks symbolic to apply the hypothesis as a substitution.",
        "",
        "=" * 70,
        "",
    ]
    raise ConfigurationError("\n".join(lines))


def validate_xi_requirement(target: str, requires_trivial: bool, config: VerificationConfig) -> None:
    """Targets stated for a trivial plane bundle need ``xi_mode == 'trivial'``.

    Raises:
        ConfigurationError: If the target needs ``c = 0`` and the config is generic.
    """
    if not requires_trivial or config.xi_mode == "trivial":
        return
    lines = [
        "",
        "=" * 70,
        f"ERROR: Target {target!r} is stated for a trivial plane bundle",
        "=" * 70,
        "",
        "Run it with --xi trivial.",
        "",
        "=" * 70,
        "",
    ]
    raise ConfigurationError("\n".join(lines))


def validate_tau(tau: complex) -> None:
    """Sample points must lie in the upper half plane.

    Raises:
        PreconditionError: If ``Im tau <= 0``.
    """
    if tau.imag <= 0:
        raise PreconditionError(f"tau must satisfy Im(tau) > 0, got {tau}")


def _format_config_error(config: VerificationConfig, problems: Sequence[str]) -> str:
    """Format a framed error listing every configuration problem.

    Example:
        >>> _format_config_error(VerificationConfig(max_degree=7), ["max_degree ..."])
    """
    lines = [
        "",
        "=" * 70,
        "ERROR: Invalid verification configuration",
        "=" * 70,
        "",
        *[f"  - {problem}" for problem in problems],
        "",
        "Configuration provided:",
        *[f"  {key}: {value}" for key, value in config.describe().items()],
        "",
        "=" * 70,
        "",
    ]
    return "\n".join(lines)
