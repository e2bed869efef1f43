"""Configuration parsing: flag values, YAML suite files and ``.env`` defaults."""

from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path
from typing import Any

import yaml
from dotenv import find_dotenv, load_dotenv

from .errors import ConfigurationError
from .types import VerificationConfig
from .validation import validate_config

EULER_FLAGS = {"cosh": "cosh-half", "exp": "exp-half", "both": "both"}
CONFIG_KEYS = ("ranks", "xi", "euler_mode", "max_degree", "q_order")


def load_environment() -> bool:
    """Load ``ANOMOD_*`` defaults from the nearest ``.env`` file, if any.

    Variables already present in the environment win.
    """
    path = find_dotenv(usecwd=True)
    if not path:
        return False
    return load_dotenv(path, override=False)


def parse_ranks(raw: str | None) -> tuple[int, int] | None:
    """Parse ``symbolic`` or ``m=INT,n=INT``.

    Raises:
        ConfigurationError: On any other form.

    Example:
        >>> parse_ranks("m=32,n=0")
        (32, 0)
        >>> parse_ranks("symbolic") is None
        True
    """
    if raw is None:
        return None
    text = raw.strip().replace(" ", "")
    if text in ("", "symbolic"):
        return None
    values: dict[str, int] = {}
    for pair in text.split(","):
        key, sep, value = pair.partition("=")
        if not sep or key not in ("m", "n") or key in values:
            raise ConfigurationError(f"Ranks must be 'symbolic' or 'm=INT,n=INT', got {raw!r}")
        try:
            values[key] = int(value)
        except ValueError as exc:
            raise ConfigurationError(f"Rank {key} must be an integer, got {value!r}") from exc
    if set(values) != {"m", "n"}:
        raise ConfigurationError(f"Ranks need both m and n, got {raw!r}")
    return values["m"], values["n"]


def euler_mode_from_flag(flag: str) -> str:
    """Map ``cosh``/``exp``/``both`` (or a full mode name) to a mode name."""
    if flag in EULER_FLAGS:
        return EULER_FLAGS[flag]
    if flag in EULER_FLAGS.values():
        return flag
    raise ConfigurationError(
        f"Euler mode must be one of {', '.join(EULER_FLAGS)}, got {flag!r}"
    )


def parse_tau(raw: str) -> complex:
    """Parse ``RE,IM`` into a complex sample point.

    Example:
        >>> parse_tau("0.1,1.2")
        (0.1+1.2j)
    """
    re_part, sep, im_part = raw.partition(",")
    try:
        if not sep:
            raise ValueError(raw)
        return complex(float(re_part), float(im_part))
    except ValueError as exc:
        raise ConfigurationError(f"tau must be given as RE,IM, got {raw!r}") from exc


def config_from_mapping(
    data: Mapping[str, Any], base: VerificationConfig | None = None
) -> VerificationConfig:
    """Build a validated config from a YAML-style mapping.

    Keys: ``ranks`` (``symbolic``, ``m=INT,n=INT`` or a two-item list), ``xi``,
    ``euler_mode`` (``cosh``/``exp``/``both``), ``max_degree``, ``q_order``.
    Missing keys fall back to ``base``.

    Raises:
        ConfigurationError: On unknown keys or invalid values.
    """
    unknown = set(data) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigurationError(
            f"Unknown config keys {sorted(unknown)}; expected {', '.join(CONFIG_KEYS)}"
        )
    config = base or VerificationConfig()
    changes: dict[str, Any] = {}
    if "ranks" in data:
        ranks = data["ranks"]
        if isinstance(ranks, (list, tuple)):
            if len(ranks) != 2:
                raise ConfigurationError(f"ranks must have two entries, got {ranks!r}")
            changes["ranks"] = (int(ranks[0]), int(ranks[1]))
        else:
            changes["ranks"] = parse_ranks(str(ranks))
    if "xi" in data:
        changes["xi_mode"] = str(data["xi"])
    if "euler_mode" in data:
        changes["euler_mode"] = euler_mode_from_flag(str(data["euler_mode"]))
    for key in ("max_degree", "q_order"):
        if key in data:
            changes[key] = int(data[key])
    config = config.with_changes(**changes)
    validate_config(config)
    return config


def load_suite_file(path: str | Path, base: VerificationConfig | None = None) -> list[VerificationConfig]:
    """Read a YAML suite file: a mapping whose ``configs`` key lists configs.

    Raises:
        ConfigurationError: If the file does not have that shape.
    """
    document = yaml.safe_load(Path(path).read_text())
    if not isinstance(document, dict) or not isinstance(document.get("configs"), list):
        raise ConfigurationError(f"{path}: expected a mapping with a 'configs' list")
    configs = []
    for index, entry in enumerate(document["configs"]):
        if not isinstance(entry, dict):
            raise ConfigurationError(f"{path}: configs[{index}] must be a mapping")
        configs.append(config_from_mapping(entry, base))
    return configs
