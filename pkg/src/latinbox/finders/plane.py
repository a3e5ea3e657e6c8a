from __future__ import annotations
from logging import Logger, LoggerAdapter, getLogger
import math

from latinbox.arrays import Array3D, DimensionError, PartialLatinBox
from latinbox.finders.FinderOutcome import FinderOutcome
from latinbox.matching import (BipartiteGraph, DEFAULT_PERMANENT_CAP, NoPerfectMatching, default_delta, permanent,
                               pm_count_lower_bound, sample_fast_pm, sample_uniform_pm)
from latinbox.matching.permanent import check_cap
from latinbox.utils import ParameterError, Seed, make_rng

UNIFORM_MODES = ("exact", "fast")

class PlaneLogger(LoggerAdapter):
    def __init__(self, logger, extra=None):
        super().__init__(logger, extra)

    def process(self, msg, kwargs):
        return f"[PlaneFinder] {msg}", kwargs

def _below_count_bound(H: BipartiteGraph, k_i: int, density: float, delta: float | None, cap: int) -> bool:
    """True when H has fewer perfect matchings than a ((1-delta) k_i density)-regular
    graph must have."""
    if density == 0:
        return True

    if delta is None:
        delta = default_delta(density, H.n)
    if not 0 < delta < 1:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")

    count = permanent(H, cap)
    if count == 0:
        return True
    return math.log(count) < pm_count_lower_bound(H.n, (1 - delta) * k_i * density)

def find_plane_matching(M: Array3D, delta: float | None = None, abort_check: bool = False, uniform: str = "exact",
                        p: float | None = None, seed: Seed = None, cap: int = DEFAULT_PERMANENT_CAP,
                        logger: Logger | None = None) -> FinderOutcome:
    """Builds an m x n Latin rectangle row by row. G_i is the graph of column/symbol
    pairs still free after rows 1..i-1 (a (n-i+1)-regular graph); row i is a
    perfect matching of G_i intersected with plane i of M.

    abort_check stops before sampling when plane i has fewer perfect matchings
    than the regular count bound allows, with p (default: the density of the
    plane) as the edge probability. The check never draws from the random
    stream, so with equal seeds it only turns successes into aborts."""
    m, n, k = M.dims
    if n != k or m > n:
        raise DimensionError(f"plane finder needs an m x n x n array with m <= n, got {M.dims}")
    if uniform not in UNIFORM_MODES:
        raise ParameterError(f"unknown uniform mode {uniform}, expected one of {UNIFORM_MODES}")
    if uniform == "exact":
        check_cap(n, cap)

    logger = PlaneLogger(logger or getLogger("latinbox"))
    rng = make_rng(seed)

    free = BipartiteGraph.complete(n)
    box = PartialLatinBox(m, n, n)

    for i in range(1, m + 1):
        plane = BipartiteGraph(M.plane(i))
        H = free.intersect(plane)

        if abort_check:
            density = p if p is not None else plane.edgeCount / (n * n)
            if _below_count_bound(H, n - i + 1, density, delta, cap):
                logger.debug(f"plane {i} below the matching count bound")
                return FinderOutcome.aborted(f"plane-{i}", "below-count-bound", plane=i, rows_built=i - 1)

        try:
            if uniform == "exact":
                matching = sample_uniform_pm(H, rng, cap)
            else:
                matching = sample_fast_pm(H, rng)
        except NoPerfectMatching:
            logger.debug(f"plane {i} has no perfect matching left")
            return FinderOutcome.aborted(f"plane-{i}", "no-matching", plane=i, rows_built=i - 1)

        for c, v in matching.pairs():
            box.assign(i, c, v)
        free = free.without(BipartiteGraph(matching.toMatrix()))

    logger.debug(f"built a {m} x {n} Latin rectangle")
    return FinderOutcome.succeeded(box, rows_built=m, uniform=uniform)
