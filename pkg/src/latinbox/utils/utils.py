"""
Utility functions that don't fit the other modules.
"""
from __future__ import annotations
import os

import numpy as np

ENV_PREFIX = "LATINBOX_"

class LatinBoxError(Exception):
    """Base class for every error raised by latinbox."""
    def __init__(self, *args):
        super().__init__(*args)

class ParameterError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

class ConfigError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

def config_else_env(option: str, section: dict | None, error=True, default=None):
    """Tries to find option in a loaded json config section. If it fails,
    it instead looks at the environment variable LATINBOX_<OPTION>. If this also
    fails, returns the default or raises when error is set."""
    if section:
        value = section.get(option)
        if value is not None:
            return value

    value = os.environ.get(ENV_PREFIX + option.upper())
    if value:
        return value

    if default is not None:
        return default

    if error:
        raise ConfigError(f"Configuration error. Set {option} in the configuration or specify {ENV_PREFIX}{option.upper()} as an environment variable.")

    return None

def check_probability(p: float, name: str = "p") -> float:
    """Raises ParameterError unless 0 <= p <= 1."""
    try:
        p = float(p)
    except (TypeError, ValueError) as e:
        raise ParameterError(f"{name} must be a number, got {p!r}") from e

    if not 0.0 <= p <= 1.0 or np.isnan(p):
        raise ParameterError(f"{name} must lie in [0, 1], got {p}")

    return p
