from __future__ import annotations
from dataclasses import dataclass, field
import json

@dataclass
class TrialRecord:
    """One Monte Carlo trial. The derived seed alone replays it."""
    index: int
    seed: int
    params: dict = field(default_factory=dict)
    outcome: dict = field(default_factory=dict)
    wall_time: float | None = None

    def toJson(self, record_timings: bool = False) -> dict:
        data = {"index": self.index, "seed": self.seed, "params": self.params, "outcome": self.outcome}
        if record_timings and self.wall_time is not None:
            data["wall_time"] = self.wall_time
        return data

    def toLine(self, record_timings: bool = False) -> str:
        return json.dumps(self.toJson(record_timings), sort_keys=True)

    @classmethod
    def fromJson(cls, data: dict) -> TrialRecord:
        return cls(data["index"], data["seed"], data.get("params", {}), data.get("outcome", {}), data.get("wall_time"))
