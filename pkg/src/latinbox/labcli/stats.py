"""Interval estimates, the monotone logistic fit and Chernoff bands."""
from __future__ import annotations
from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize, stats

from latinbox.utils import ParameterError

CONFIDENCE = 0.95
MONOTONE_SIGMAS = 3.0

def wilson_interval(successes: int, trials: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ParameterError(f"need at least one trial, got {trials}")
    if not 0 <= successes <= trials:
        raise ParameterError(f"successes must lie in [0, {trials}], got {successes}")

    z = stats.norm.ppf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)

def binomial_sigma(q: float, trials: int) -> float:
    return math.sqrt(q * (1 - q) / trials)

def z_score(phat: float, q: float, trials: int) -> float:
    sigma = binomial_sigma(q, trials)
    if sigma == 0:
        return 0.0 if phat == q else math.inf
    return (phat - q) / sigma

@dataclass
class LogisticFit:
    """phat(p) = 1/(1 + exp(-slope (p - p50))) with slope >= 0. degenerate fits
    (no successes or no failures at all) have p50 = nan."""
    p50: float
    slope: float
    converged: bool
    degenerate: bool = False

    def toJson(self) -> dict:
        return {
            "p50": None if math.isnan(self.p50) else self.p50,
            "slope": None if math.isnan(self.slope) else self.slope,
            "converged": self.converged,
            "degenerate": self.degenerate
        }

def _neg_log_likelihood(theta, ps, successes, failures) -> float:
    p50, slope = theta
    x = slope * (ps - p50)
    # -log sigmoid(x) = log(1 + exp(-x))
    return float(np.sum(successes * np.logaddexp(0, -x) + failures * np.logaddexp(0, x)))

def logistic_fit(ps, successes, trials) -> LogisticFit:
    """Maximum likelihood fit constrained to a non-decreasing curve."""
    ps = np.asarray(ps, dtype=float)
    successes = np.asarray(successes, dtype=float)
    trials = np.asarray(trials, dtype=float)
    if len(ps) == 0:
        raise ParameterError("logistic fit needs a nonempty grid")

    failures = trials - successes
    if successes.sum() == 0 or failures.sum() == 0:
        return LogisticFit(math.nan, math.nan, False, degenerate=True)

    phat = successes / np.maximum(trials, 1)
    above = np.flatnonzero(phat >= 0.5)
    p50_guess = float(ps[above[0]]) if len(above) else float(ps.max())
    spread = float(ps.max() - ps.min()) or 1.0

    result = optimize.minimize(
        _neg_log_likelihood,
        x0=np.array([p50_guess, 10.0 / spread]),
        args=(ps, successes, failures),
        method="L-BFGS-B",
        bounds=[(0.0, 1.0), (0.0, 1e4)]
    )
    p50, slope = result.x
    return LogisticFit(float(p50), float(slope), bool(result.success))

def monotone_violations(rows: list[dict], sigmas: float = MONOTONE_SIGMAS) -> list[tuple[float, float]]:
    """Adjacent grid points (p1, p2), p1 < p2, with phat(p1) > phat(p2) plus
    sigmas pooled standard deviations."""
    ordered = sorted(rows, key=lambda row: row["p"])
    violations = []
    for a, b in zip(ordered, ordered[1:]):
        if a["trials"] == 0 or b["trials"] == 0:
            continue
        pooled = (a["successes"] + b["successes"]) / (a["trials"] + b["trials"])
        sigma = math.sqrt(pooled * (1 - pooled) * (1 / a["trials"] + 1 / b["trials"]))
        if a["phat"] > b["phat"] + sigmas * sigma:
            violations.append((a["p"], b["p"]))
    return violations

def chernoff_tail(N: int, p: float, alpha: float, side: str = "lower") -> float:
    """Bound on P(X <= (1-alpha)Np) (lower) or P(X >= (1+alpha)Np) (upper) for a
    sum X of N independent Bernoulli(p)."""
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    if side == "lower":
        return math.exp(-alpha * alpha * N * p / 2)
    if side == "upper":
        return math.exp(-alpha * alpha * N * p / 3)
    raise ParameterError(f"side must be lower or upper, got {side}")

def chernoff_alpha(N: int, p: float, level: float, side: str = "lower") -> float:
    """The relative deviation alpha at which chernoff_tail drops to level."""
    if not 0 < level < 1:
        raise ParameterError(f"level must lie in (0, 1), got {level}")
    factor = {"lower": 2, "upper": 3}.get(side)
    if factor is None:
        raise ParameterError(f"side must be lower or upper, got {side}")
    if N * p <= 0:
        return math.inf
    return math.sqrt(factor * math.log(1 / level) / (N * p))
