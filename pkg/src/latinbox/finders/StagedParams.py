from __future__ import annotations
from dataclasses import dataclass
import math

from latinbox.utils import ParameterError

DEFAULT_RETRIES = 5

@dataclass(frozen=True)
class StagedParams:
    """Budgets of the staged finder. The defaults replace log log n and
    (eps/(1+eps)) log n by their ceilings, floored at 1 (natural log)."""
    eps: float
    symbol_budget_low: int
    symbol_budget_high: int
    degree_threshold: float
    retries: int = DEFAULT_RETRIES
    t_cap: float = math.inf

    def __post_init__(self):
        if not self.eps > 0:
            raise ParameterError(f"eps must be positive, got {self.eps}")
        if self.symbol_budget_low < 1 or self.symbol_budget_high < 1:
            raise ParameterError("symbol budgets must be at least 1")
        if self.retries < 0:
            raise ParameterError(f"retries must be non-negative, got {self.retries}")

    @classmethod
    def fromShape(cls, n: int, eps: float, retries: int = DEFAULT_RETRIES) -> StagedParams:
        if not eps > 0:
            raise ParameterError(f"eps must be positive, got {eps}")
        log_n = math.log(n) if n > 1 else 0.0
        loglog_n = math.log(log_n) if log_n > 1 else 0.0
        share = eps / (1 + eps)

        return cls(
            eps=eps,
            symbol_budget_low=max(1, math.ceil(loglog_n)),
            symbol_budget_high=max(1, math.ceil(share * log_n)),
            degree_threshold=share * log_n,
            retries=retries,
            t_cap=n ** (3 * eps)
        )

    def toJson(self) -> dict:
        return {
            "eps": self.eps,
            "symbol_budget_low": self.symbol_budget_low,
            "symbol_budget_high": self.symbol_budget_high,
            "degree_threshold": self.degree_threshold,
            "retries": self.retries,
            "t_cap": None if math.isinf(self.t_cap) else self.t_cap
        }
