from __future__ import annotations
from dataclasses import dataclass, astuple, fields
import csv
import math

from latinbox.arrays import FormatError

COLUMNS = ("step", "deg_min", "deg_mean", "deg_max", "codeg_mean", "y_pred", "z_pred")

@dataclass(frozen=True)
class TrajectorySample:
    step: int
    deg_min: int
    deg_mean: float
    deg_max: int
    # mean available-triangle count over uncovered edges, nan once every edge is covered
    codeg_mean: float
    y_pred: float
    z_pred: float

class Trajectory:
    """Samples of a packing process at strictly increasing steps."""
    def __init__(self, n: int, samples: list[TrajectorySample] | None = None):
        self.n = n
        self.samples: list[TrajectorySample] = []
        for sample in samples or []:
            self.append(sample)

    def append(self, sample: TrajectorySample):
        if self.samples and sample.step <= self.samples[-1].step:
            raise ValueError(f"trajectory steps must increase, got {sample.step} after {self.samples[-1].step}")
        self.samples.append(sample)

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def toCsv(self, path: str):
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(COLUMNS)
            for sample in self.samples:
                writer.writerow([_format(value) for value in astuple(sample)])

    @classmethod
    def fromCsv(cls, path: str, n: int) -> Trajectory:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if tuple(reader.fieldnames or ()) != COLUMNS:
                raise FormatError(f"{path} does not have the trajectory columns {COLUMNS}")

            trajectory = cls(n)
            for row in reader:
                values = []
                for field in fields(TrajectorySample):
                    raw = row[field.name]
                    values.append(int(raw) if field.type == "int" else float(raw))
                trajectory.append(TrajectorySample(*values))
        return trajectory

def _format(value) -> str:
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    return str(value)
