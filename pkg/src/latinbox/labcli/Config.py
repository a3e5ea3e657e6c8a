from __future__ import annotations
from dataclasses import dataclass, field, fields, asdict
import json
import math
import os

from latinbox.enumeration import SHAPES
from latinbox.utils import ConfigError, config_else_env

KINDS = ("sweep", "hitting", "qval", "pack")
FINDERS = ("exact", "block", "plane", "staged")

def _default_grid() -> list[float]:
    return [round(0.1 * i, 1) for i in range(11)]

def _to_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")

def _to_list(item):
    def parse(value) -> list:
        if isinstance(value, str):
            value = [part for part in value.split(",") if part.strip()]
        return [item(part) for part in value]
    return parse

def _optional(item):
    def parse(value):
        if value in ("", "none", "None"):
            return None
        return item(value)
    return parse

@dataclass
class ExperimentConfig:
    """Parameters of one experiment. Keys of the JSON config file and the
    LATINBOX_<KEY> environment variables use the field names."""
    kind: str = "sweep"
    shape: str = "cube"
    n: int = 4
    eps: float = 0.5
    p_grid: list[float] = field(default_factory=_default_grid)
    trials: int = 100
    seed: int = 0
    threads: int = 1
    out: str = "results"

    finder: str = "exact"
    node_cap: int | None = None
    retries: int = 5
    delta: float | None = None
    abort_check: bool = False
    uniform: str = "exact"
    # constant of the plane finder's sampler bound, only quoted in reports
    sampler_constant: float = 1.0

    # hitting time
    size_guard: int = 30
    # q validation
    n0: int = 2
    # packing campaign
    n_list: list[int] = field(default_factory=lambda: [10])
    seeds: int = 1
    horizon: int | None = None
    record_every: int | None = None
    band: float = 0.05

    record_timings: bool = False

    def validate(self):
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {self.kind}")
        if self.shape not in SHAPES:
            raise ConfigError(f"shape must be one of {SHAPES}, got {self.shape}")
        if self.finder not in FINDERS:
            raise ConfigError(f"finder must be one of {FINDERS}, got {self.finder}")
        if self.uniform not in ("exact", "fast"):
            raise ConfigError(f"uniform must be exact or fast, got {self.uniform}")
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if self.threads < 1:
            raise ConfigError(f"threads must be at least 1, got {self.threads}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        if self.n < 1:
            raise ConfigError(f"n must be positive, got {self.n}")
        if not self.eps > 0:
            raise ConfigError(f"eps must be positive, got {self.eps}")
        if self.shape == "rectangle" and self.eps >= 1:
            raise ConfigError(f"the rectangle shape needs eps < 1, got {self.eps}")
        if any(not 0 <= p <= 1 for p in self.p_grid):
            raise ConfigError(f"every p of the grid must lie in [0, 1], got {self.p_grid}")
        if not self.sampler_constant > 0:
            raise ConfigError(f"sampler_constant must be positive, got {self.sampler_constant}")
        if self.node_cap is not None and self.node_cap < 1:
            raise ConfigError(f"node_cap must be positive, got {self.node_cap}")
        if self.seeds < 1 or not self.n_list or min(self.n_list) < 1:
            raise ConfigError("the packing campaign needs seeds >= 1 and positive sizes")
        return self

    def shapeDims(self) -> tuple[int, int, int]:
        """(m, n, k) of the sampled arrays."""
        n = self.n
        if self.shape == "rectangle":
            return max(1, math.floor((1 - self.eps) * n + 1e-9)), n, n
        if self.shape == "box":
            return n, n, math.ceil((1 + self.eps) * n - 1e-9)
        return n, n, n

    def toJson(self) -> dict:
        return asdict(self)

_PARSERS = {
    "kind": str,
    "shape": str,
    "n": int,
    "eps": float,
    "p_grid": _to_list(float),
    "trials": int,
    "seed": int,
    "threads": int,
    "out": str,
    "finder": str,
    "node_cap": _optional(int),
    "retries": int,
    "delta": _optional(float),
    "abort_check": _to_bool,
    "uniform": str,
    "sampler_constant": float,
    "size_guard": int,
    "n0": int,
    "n_list": _to_list(int),
    "seeds": int,
    "horizon": _optional(int),
    "record_every": _optional(int),
    "band": float,
    "record_timings": _to_bool,
}

FIELD_NAMES = tuple(f.name for f in fields(ExperimentConfig))

def read_config_file(path: str) -> dict:
    if not os.path.exists(path):
        raise ConfigError(f"Config file {path} does not exist")

    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {path} is not valid json: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a json object")

    unknown = set(data) - set(FIELD_NAMES)
    if unknown:
        raise ConfigError(f"Unknown config keys: {sorted(unknown)}")
    return data

def load_config(path: str | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Resolves every field as command line override, then config file, then
    LATINBOX_<KEY> environment variable, then the default."""
    section = read_config_file(path) if path else None
    overrides = overrides or {}

    values = {}
    for name in FIELD_NAMES:
        value = overrides.get(name)
        if value is None:
            value = config_else_env(name, section, error=False)
        if value is None:
            continue

        try:
            values[name] = _PARSERS[name](value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Bad value for {name}: {value!r}") from e

    return ExperimentConfig(**values).validate()
