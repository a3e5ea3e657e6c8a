from __future__ import annotations
from configparser import ConfigParser, Error as ParserError
from dataclasses import dataclass, field
import os

from latinbox.utils import ConfigError

MANIFEST = os.path.join(os.path.dirname(__file__), "acceptance.ini")

@dataclass(frozen=True)
class AcceptanceEntry:
    name: str
    pilot_seed: int
    calibrated: bool
    values: dict = field(default_factory=dict)

    def __getitem__(self, key: str) -> float:
        return self.values[key]

def load_acceptance(path: str | None = None) -> dict[str, AcceptanceEntry]:
    path = path or MANIFEST
    if not os.path.exists(path):
        raise ConfigError(f"Acceptance manifest {path} does not exist")

    parser = ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
        entries = {}
        for name in parser.sections():
            section = parser[name]
            values = {key: section.getfloat(key) for key in section if key not in ("pilot_seed", "calibrated")}
            entries[name] = AcceptanceEntry(name, section.getint("pilot_seed"), section.getboolean("calibrated"), values)
    except (ParserError, ValueError, TypeError) as e:
        raise ConfigError(f"Bad acceptance manifest {path}: {e}") from e

    return entries
