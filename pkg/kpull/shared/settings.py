"""
Settings for kpull commands.

Defaults < config file (kpull.yaml, .kpull.yaml, $KPULL_CONFIG or --config)
< explicit command-line flags.
"""

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from kpull.shared.errors import ConfigError

CONFIG_FILENAMES = ("kpull.yaml", ".kpull.yaml")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class Settings:
    """Resolved settings shared by all commands."""

    trials: int = 200
    seed: int = 7
    max_size: int = 6
    workers: int = 1
    log_level: str = "WARNING"
    trace_indent: int = 2

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.max_size < 1:
            raise ConfigError("max_size must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {', '.join(LOG_LEVELS)}")

    def override(self, **values: Any) -> "Settings":
        """Return a copy with every non-None value applied."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})


def find_config(explicit: Optional[Path] = None, cwd: Optional[Path] = None) -> Optional[Path]:
    """Locate the config file to use, if any."""
    if explicit is not None:
        if not explicit.exists():
            raise ConfigError(f"config file not found: {explicit}")
        return explicit

    env_path = os.environ.get("KPULL_CONFIG")
    if env_path:
        return find_config(Path(env_path))

    base = cwd or Path.cwd()
    for name in CONFIG_FILENAMES:
        candidate = base / name
        if candidate.exists():
            return candidate
    return None


def load_settings(path: Optional[Path] = None, cwd: Optional[Path] = None) -> Settings:
    """Build Settings from defaults and an optional YAML file."""
    config_path = find_config(path, cwd)
    if config_path is None:
        return Settings()

    try:
        raw = yaml.safe_load(config_path.read_text()) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"{config_path}: {e}") from e

    if not isinstance(raw, dict):
        raise ConfigError(f"{config_path}: top level must be a mapping")

    known = {f.name for f in fields(Settings)}
    values: Dict[str, Any] = {}
    for key, value in raw.items():
        name = str(key).replace("-", "_")
        if name not in known:
            raise ConfigError(f"{config_path}: unknown key '{key}'")
        values[name] = value

    try:
        return Settings(**values)
    except TypeError as e:
        raise ConfigError(f"{config_path}: {e}") from e
