from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum

from latinbox.arrays import PartialLatinBox

class FinderStatus(Enum):
    SUCCESS = "success"
    # complete search found nothing, a proof of non-existence
    EXHAUSTED = "exhausted"
    ABORTED = "aborted"
    # the node cap stopped the search
    INDETERMINATE = "indeterminate"

@dataclass
class FinderOutcome:
    status: FinderStatus
    result: PartialLatinBox | None = None
    stage: str | None = None
    reason: str | None = None
    stats: dict = field(default_factory=dict)
    count: int | None = None

    @property
    def success(self) -> bool:
        return self.status is FinderStatus.SUCCESS

    @classmethod
    def succeeded(cls, box: PartialLatinBox, **stats) -> FinderOutcome:
        return cls(FinderStatus.SUCCESS, box, stats=stats)

    @classmethod
    def aborted(cls, stage: str, reason: str, **stats) -> FinderOutcome:
        return cls(FinderStatus.ABORTED, stage=stage, reason=reason, stats=stats)

    def toJson(self) -> dict:
        data = {"status": self.status.value, "stats": self.stats}
        if self.stage is not None:
            data["stage"] = self.stage
            data["reason"] = self.reason
        if self.count is not None:
            # counts can exceed the json integer range of other readers
            data["count"] = str(self.count)
        if self.result is not None:
            data["dims"] = list(self.result.dims)
            data["grid"] = self.result.grid()
        return data
