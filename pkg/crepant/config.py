"""
Crepant configuration
Settings read from the environment (and an optional .env file)
"""
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigError

DEFAULT_GUARD = 10 ** 6
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _int_env(key: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{key} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """Runtime settings"""
    guard: int = DEFAULT_GUARD
    log_level: str = "WARNING"
    workers: int = 1

    @classmethod
    def from_env(cls, dotenv_path: Optional[str] = None) -> "Settings":
        """Build settings from CREPANT_* environment variables"""
        load_dotenv(dotenv_path)

        level = os.getenv("CREPANT_LOG_LEVEL", "WARNING").strip().upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"CREPANT_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")

        return cls(
            guard=_int_env("CREPANT_GUARD", DEFAULT_GUARD),
            log_level=level,
            workers=_int_env("CREPANT_WORKERS", 1),
        )


def get_settings() -> Settings:
    """Current settings, read from the environment"""
    return Settings.from_env()


def resolve_guard(guard: Optional[int], settings: Optional[Settings] = None) -> int:
    """Explicit guard argument wins over `settings`, which wins over the environment"""
    if guard is not None:
        if guard < 1:
            raise ConfigError(f"guard must be positive, got {guard}")
        return guard
    return (settings or get_settings()).guard
