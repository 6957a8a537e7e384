"""Configuration loader for the Thompson toolkit.

Search and enumeration limits come from config/toolkit.yaml; environment
variables (optionally from a .env file) override them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv


@dataclass(frozen=True)
class EnumerationConfig:
    """Limits for exhaustive word and element enumeration."""

    budget: int = 2_000_000
    workers: int = 1


@dataclass(frozen=True)
class LawVerificationConfig:
    exhaustive_leaves: int = 8
    random_count: int = 1000
    random_size: int = 12
    seed: int = 1


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for the searches that are sound but not complete."""

    root_leaf_bound: int = 6
    conj_shift_window: int = 10
    conj_shift_max_raise: int = 64
    witness_max_tries: int = 32


@dataclass(frozen=True)
class ToolkitConfig:
    """Root configuration."""

    enumeration: EnumerationConfig = field(default_factory=EnumerationConfig)
    law: LawVerificationConfig = field(default_factory=LawVerificationConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    log_level: str = "WARNING"


class ConfigValidationError(Exception):
    """Raised when configuration is missing or invalid."""


def _get_env(key: str, default: str = "") -> str:
    return os.environ.get(key, default)


def _positive_int(key: str, raw: Any, allow_zero: bool = False) -> int:
    try:
        value = int(raw)
    except (TypeError, ValueError) as e:
        raise ConfigValidationError(f"'{key}' must be an integer, got {raw!r}.") from e
    if value < 0 or (value == 0 and not allow_zero):
        raise ConfigValidationError(f"'{key}' must be positive, got {value}.")
    return value


def _section(data: dict[str, Any], name: str, cls: type[Any], zero_ok: frozenset[str] = frozenset()) -> Any:
    values = data.get(name) or {}
    if not isinstance(values, dict):
        raise ConfigValidationError(f"Section '{name}' must be a mapping.")
    defaults = cls()
    unknown = set(values) - set(defaults.__dataclass_fields__)
    if unknown:
        raise ConfigValidationError(f"Unknown keys in section '{name}': {sorted(unknown)}")
    return replace(
        defaults,
        **{key: _positive_int(f"{name}.{key}", raw, key in zero_ok) for key, raw in values.items()},
    )


def load_limits(config_path: str | Path | None = None) -> ToolkitConfig:
    """Load limits from YAML; a missing file yields the defaults.

    Args:
        config_path: Path to toolkit.yaml. Defaults to config/toolkit.yaml in the project root.
    """
    if config_path is None:
        project_root = Path(__file__).parent.parent
        config_path = project_root / "config" / "toolkit.yaml"

    config_path = Path(config_path)
    if not config_path.exists():
        return ToolkitConfig()

    with open(config_path) as f:
        data: dict[str, Any] = yaml.safe_load(f) or {}

    return ToolkitConfig(
        enumeration=_section(data, "enumeration", EnumerationConfig),
        law=_section(data, "law_verification", LawVerificationConfig, frozenset({"seed", "random_count"})),
        search=_section(data, "search", SearchConfig),
    )


def load_config(env_file: str | Path | None = None) -> ToolkitConfig:
    """Load limits and apply THOMPSON_* environment overrides.

    Raises:
        ConfigValidationError: If a file value or an override is not a valid count.
    """
    if env_file is None:
        project_root = Path(__file__).parent.parent
        env_file = project_root / ".env"

    load_dotenv(dotenv_path=str(env_file), override=False)

    config = load_limits(_get_env("THOMPSON_CONFIG") or None)

    enumeration = config.enumeration
    if workers := _get_env("THOMPSON_WORKERS"):
        enumeration = replace(enumeration, workers=_positive_int("THOMPSON_WORKERS", workers))
    if budget := _get_env("THOMPSON_BUDGET"):
        enumeration = replace(enumeration, budget=_positive_int("THOMPSON_BUDGET", budget))

    law = config.law
    if seed := _get_env("THOMPSON_SEED"):
        law = replace(law, seed=_positive_int("THOMPSON_SEED", seed, allow_zero=True))

    log_level = _get_env("THOMPSON_LOG_LEVEL", config.log_level).upper()
    if log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise ConfigValidationError(f"THOMPSON_LOG_LEVEL must be a logging level name, got {log_level!r}.")

    return replace(config, enumeration=enumeration, law=law, log_level=log_level)
