"""Asymptotic counts and permanent bounds, all on the natural-log scale."""
from __future__ import annotations
import math
from typing import NamedTuple

from latinbox.utils import ParameterError

SHAPES = ("rectangle", "box", "cube")

class PermanentBounds(NamedTuple):
    lower: float
    upper: float
    ef_lower: float

def _check_eps(eps: float):
    if not 0 < eps < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")

def rectangle_count_asymptotic(n: int, eps: float, p: float | None = None) -> float:
    """ln of the expected number of (1-eps)n x n x n Latin boxes supported by a
    binomial array of density p (the number of rectangles when p is omitted)."""
    _check_eps(eps)
    value = math.log(n) - 2 + (eps / (1 - eps)) * math.log(1 / eps)
    if p is not None:
        if not 0 < p <= 1:
            raise ParameterError(f"p must lie in (0, 1], got {p}")
        value += math.log(p)
    return (1 - eps) * n * n * value

def permanent_bounds(n: int, k: int) -> PermanentBounds:
    """Bounds on ln Per(A) for a k-regular n x n 0-1 matrix A: (k/e)^n below,
    Bregman's (k!)^(n/k) above, and the sharper k^n n!/n^n below."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got n={n} k={k}")
    return PermanentBounds(
        n * (math.log(k) - 1),
        (n / k) * math.lgamma(k + 1),
        n * math.log(k) + math.lgamma(n + 1) - n * math.log(n)
    )

def rectangle_rows(n: int, eps: float) -> int:
    return max(1, math.floor((1 - eps) * n))

def rectangle_count_bounds(n: int, eps: float) -> tuple[float, float]:
    """Product bounds on ln of the number of (1-eps)n x n Latin rectangles:
    row i leaves a (n-i+1)-regular availability graph, so the choices for it lie
    between the permanent bounds for k = n-i+1."""
    _check_eps(eps)
    m = rectangle_rows(n, eps)
    lower = sum(n * (math.log(k) - 1) for k in range(n - m + 1, n + 1))
    upper = sum((n / k) * math.lgamma(k + 1) for k in range(n - m + 1, n + 1))
    return lower, upper

def no_empty_shaft_probability(n: int, m: int, p: float) -> float:
    """ln of (1 - (1-p)^m)^(n^2), the probability that a binomial n x n x m
    array has no empty shaft."""
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if p == 0:
        return -math.inf
    return n * n * math.log1p(-((1 - p) ** m))

def threshold_scale(n: int, eps: float, shape: str) -> float:
    """Order of the containment threshold for the given shape."""
    if n < 2:
        raise ParameterError("threshold_scale needs n >= 2")
    if shape == "box":
        return 2 * math.log(n) / ((1 + eps) * n)
    if shape in ("rectangle", "cube"):
        return math.log(n) / n
    raise ParameterError(f"unknown shape {shape}, expected one of {SHAPES}")
