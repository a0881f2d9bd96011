"""
Process-wide settings.

Defaults are overridden by the QPI_MAX_CONDUCTOR environment variable and then
by explicit `configure()` calls (the CLI flags).
"""

import os
from dataclasses import dataclass, replace
from typing import Optional

from .errors import ParseError

DEFAULT_MAX_CONDUCTOR = 10000
MAX_CONDUCTOR_ENV = "QPI_MAX_CONDUCTOR"


@dataclass(frozen=True)
class Settings:
    """
    Tunable limits and switches.

    Attributes:
        max_conductor: largest cyclotomic conductor a Scalar may reach
        verify_generators: re-check every reported generator by symbolic commutation
        workers: process count for selfcheck sweeps
    """
    max_conductor: int = DEFAULT_MAX_CONDUCTOR
    verify_generators: bool = True
    workers: int = 1


def _parse_positive_int(raw: str, name: str) -> int:
    try:
        value = int(raw.strip())
    except ValueError as e:
        raise ParseError(f"{name} must be a positive integer, got {raw!r}") from e
    if value <= 0:
        raise ParseError(f"{name} must be a positive integer, got {raw!r}")
    return value


def load_settings(environ: Optional[dict] = None) -> Settings:
    """
    Build settings from defaults and the environment.

    Args:
        environ: mapping to read instead of os.environ

    Returns:
        Settings instance

    Raises:
        ParseError: if QPI_MAX_CONDUCTOR is not a positive integer
    """
    environ = os.environ if environ is None else environ
    settings = Settings()
    raw = environ.get(MAX_CONDUCTOR_ENV)
    if raw is not None and raw.strip():
        settings = replace(settings, max_conductor=_parse_positive_int(raw, MAX_CONDUCTOR_ENV))
    return settings


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Return the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def configure(**overrides) -> Settings:
    """Replace selected settings fields and return the new settings."""
    global _settings
    updated = replace(get_settings(), **overrides)
    if updated.max_conductor <= 0:
        raise ParseError("max_conductor must be a positive integer")
    if updated.workers <= 0:
        raise ParseError("workers must be a positive integer")
    _settings = updated
    return _settings


def reset_settings() -> None:
    """Forget overrides; the next get_settings() reloads from the environment."""
    global _settings
    _settings = None
