"""Runtime settings read from the environment.

The CLI loads `~/.cyclic_tutte/.env` with python-dotenv before any command
runs, so values stored with `cyclic-tutte config set` end up here. Library
callers can set the same variables or pass explicit limits to each function.
"""

import os
from dataclasses import dataclass
from pathlib import Path

from cyclic_tutte.errors import SettingsError

CONFIG_DIR = Path.home() / ".cyclic_tutte"
ENV_FILE = CONFIG_DIR / ".env"

ENV_PREFIX = "CYCLIC_TUTTE_"

DEFAULTS = {
    "FLAT_LIMIT": 20,
    "ORACLE_LIMIT": 28,
    "BASIS_CHECK_LIMIT": 16,
    "JOBS": 1,
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Snapshot of the enumeration bounds and worker count.

    Attributes:
        flat_limit: Largest ground set for which flats are enumerated.
        oracle_limit: Largest ground set for which all subsets are enumerated.
        basis_check_limit: Largest ground set for which basis exchange is checked exhaustively.
        jobs: Default number of oracle worker processes.
        log_level: Name of the CLI log level.
    """
    flat_limit: int = DEFAULTS["FLAT_LIMIT"]
    oracle_limit: int = DEFAULTS["ORACLE_LIMIT"]
    basis_check_limit: int = DEFAULTS["BASIS_CHECK_LIMIT"]
    jobs: int = DEFAULTS["JOBS"]
    log_level: str = "WARNING"


def _int_setting(name: str) -> int:
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or not raw.strip():
        return DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise SettingsError(f"{ENV_PREFIX}{name} must be an integer, got '{raw}'.")
    if value < 0 or (name == "JOBS" and value < 1):
        raise SettingsError(f"{ENV_PREFIX}{name} is out of range: {value}.")
    return value


def get_settings() -> Settings:
    """Read the current settings from the environment.

    Returns:
        A `Settings` instance; unset variables take their defaults.

    Raises:
        SettingsError: If a variable is set to an invalid value.
    """
    level = os.environ.get(ENV_PREFIX + "LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
    if level not in LOG_LEVELS:
        raise SettingsError(f"{ENV_PREFIX}LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got '{level}'.")
    return Settings(
        flat_limit=_int_setting("FLAT_LIMIT"),
        oracle_limit=_int_setting("ORACLE_LIMIT"),
        basis_check_limit=_int_setting("BASIS_CHECK_LIMIT"),
        jobs=_int_setting("JOBS"),
        log_level=level,
    )
