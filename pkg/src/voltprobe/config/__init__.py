"""Configuration file support for voltprobe."""

from voltprobe.config.loader import (
    CONFIG_FILE_NAMES,
    PRECISION_ENV_VAR,
    CLIOverrides,
    ConfigLoader,
    FileConfig,
    load_config,
)

__all__ = [
    "CONFIG_FILE_NAMES",
    "PRECISION_ENV_VAR",
    "CLIOverrides",
    "ConfigLoader",
    "FileConfig",
    "load_config",
]
