"""The staged finder for n x n x m arrays with m > n.

Symbols 1..n are low, n+1..m are high. The stages are:

    B2  cover S, the shafts with few green high symbols: first the shafts of T
        (few symbols overall) with one uniform symbol each, then the rest of S
        from short menus of low symbols
    B3  a random greedy triangle packing of the green low cube
    B4  B2 plus the entries of B3 that do not collide with B2
    B   every cell still empty takes a high symbol from a short menu
"""
from __future__ import annotations
from dataclasses import dataclass
from logging import Logger, LoggerAdapter, getLogger

import numpy as np

from latinbox.arrays import Array3D, ColoredArray, DimensionError, PartialLatinBox, validate_latin_box
from latinbox.finders.FinderOutcome import FinderOutcome
from latinbox.finders.StagedParams import StagedParams
from latinbox.packing import from_array, greedy_pack
from latinbox.utils import LatinBoxError, ParameterError, Seed, make_rng

class StagedFailure(LatinBoxError):
    def __init__(self, stage: str, cell: tuple[int, int], *args):
        super().__init__(f"stage {stage} ran out of symbols at cell {cell}", *args)
        self.stage = stage
        self.cell = cell

class StagedLogger(LoggerAdapter):
    def __init__(self, logger, extra=None):
        super().__init__(logger, extra)

    def process(self, msg, kwargs):
        return f"[StagedFinder] {msg}", kwargs

@dataclass
class StagedSets:
    """0-based (n, n) masks of the shafts the B2 stage must cover."""
    S: np.ndarray
    T: np.ndarray

def _as_colored(M: Array3D | ColoredArray) -> ColoredArray:
    if isinstance(M, ColoredArray):
        return M
    if not M.nonEmptyShafts().all():
        raise ParameterError("a plain array with empty shafts has no Latin box, color it first")
    return ColoredArray.fromGreen(M)

def staged_sets(M: ColoredArray, params: StagedParams) -> StagedSets:
    """S holds the shafts with fewer than degree_threshold green high symbols, T
    the shafts of S with at most symbol_budget_low low symbols."""
    n = M.n
    S = M.green.shaftCounts(n) < params.degree_threshold

    combined = M.combined()
    low_degree = combined.shaftCounts() - combined.shaftCounts(n)
    T = S & (low_degree <= params.symbol_budget_low)
    return StagedSets(S, T)

def _menu(rng: np.random.Generator, symbols: np.ndarray, size: int) -> list[int]:
    return rng.permutation(symbols)[:size].tolist()

def _first_fit(box: PartialLatinBox, r: int, c: int, menu: list[int]) -> bool:
    for v in menu:
        if box.canAssign(r, c, v):
            box.assign(r, c, v)
            return True
    return False

def _b2_attempt(cells: np.ndarray, sets: StagedSets, params: StagedParams, rng: np.random.Generator):
    """One pass of B2. Returns (box, None) or (None, failing 1-based cell)."""
    n, _, m = cells.shape
    box = PartialLatinBox(n, n, m)

    for r, c in np.argwhere(sets.T).tolist():
        low = np.flatnonzero(cells[r, c, :n]) + 1
        pool = low if len(low) else np.flatnonzero(cells[r, c, n:]) + n + 1
        v = int(rng.choice(pool))
        if not box.canAssign(r + 1, c + 1, v):
            return None, (r + 1, c + 1)
        box.assign(r + 1, c + 1, v)

    for r, c in np.argwhere(sets.S & ~sets.T).tolist():
        low = np.flatnonzero(cells[r, c, :n]) + 1
        if not _first_fit(box, r + 1, c + 1, _menu(rng, low, params.symbol_budget_low)):
            return None, (r + 1, c + 1)

    return box, None

def _build_b2(M: ColoredArray, params: StagedParams, rng: np.random.Generator, logger: LoggerAdapter,
              sets: StagedSets | None = None) -> tuple[PartialLatinBox, int]:
    sets = sets or staged_sets(M, params)
    cells = M.combined().cells()

    for attempt in range(params.retries + 1):
        box, cell = _b2_attempt(cells, sets, params, rng)
        if box is not None:
            return box, attempt
        logger.warning(f"B2 collision at cell {cell} on attempt {attempt + 1}")

    raise StagedFailure("B2", cell)

def build_B2(M: Array3D | ColoredArray, params: StagedParams, seed: Seed = None, logger: Logger | None = None) -> PartialLatinBox:
    """Partial Latin box covering exactly the cells of S. Collisions restart the
    whole stage, at most params.retries times; StagedFailure after that."""
    M = _as_colored(M)
    logger = StagedLogger(logger or getLogger("latinbox"))
    box, _ = _build_b2(M, params, make_rng(seed), logger)
    return box

def merge_packing(b2: PartialLatinBox, b3: PartialLatinBox) -> tuple[PartialLatinBox, int]:
    """B4: b2 plus every entry of b3 on a free cell that collides with nothing in
    b2. Returns the box and the number of erased b3 entries."""
    b4 = b2.copy()
    erased = 0
    for (r, c), v in sorted(b3.entries.items()):
        if (r, c) in b2:
            continue
        if b4.canAssign(r, c, v):
            b4.assign(r, c, v)
        else:
            erased += 1
    return b4, erased

def _final_attempt(b4: PartialLatinBox, cells: np.ndarray, params: StagedParams, rng: np.random.Generator):
    n, _, _ = cells.shape
    box = b4.copy()
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            if (r, c) in box:
                continue
            high = np.flatnonzero(cells[r - 1, c - 1, n:]) + n + 1
            if not _first_fit(box, r, c, _menu(rng, high, params.symbol_budget_high)):
                return None, (r, c)
    return box, None

def find_staged(M: Array3D | ColoredArray, params: StagedParams | None = None, seed: Seed = None,
                logger: Logger | None = None) -> FinderOutcome:
    """Randomized staged construction. A success is always a proper Latin box
    supported by M; an abort proves nothing."""
    M = _as_colored(M)
    n, m = M.n, M.m
    if m <= n:
        raise DimensionError(f"staged finder needs m > n, got {M.dims}")
    params = params or StagedParams.fromShape(n, m / n - 1)

    logger = StagedLogger(logger or getLogger("latinbox"))
    rng = make_rng(seed)
    sets = staged_sets(M, params)
    stats = {"S": int(sets.S.sum()), "T": int(sets.T.sum())}
    if stats["T"] > params.t_cap:
        logger.warning(f"|T| = {stats['T']} exceeds the cap {params.t_cap:.1f}")

    try:
        b2, stats["b2_retries"] = _build_b2(M, params, rng, logger, sets)
    except StagedFailure as e:
        logger.info(f"aborted in B2 at cell {e.cell}")
        return FinderOutcome.aborted("B2", f"menus exhausted at cell {e.cell}", **stats)
    stats["b2_size"] = len(b2)

    green_low = Array3D.fromCells(M.green.cells()[:, :, :n])
    b3 = greedy_pack(from_array(green_low), rng).toPartialLatinBox()
    stats["b3_size"] = len(b3)

    # B3 lives on the low symbols only, so it embeds into the n x n x m box
    b3 = PartialLatinBox(n, n, m, b3.entries)
    b4, stats["erased"] = merge_packing(b2, b3)
    stats["b4_size"] = len(b4)

    cells = M.combined().cells()
    for attempt in range(params.retries + 1):
        box, cell = _final_attempt(b4, cells, params, rng)
        if box is not None:
            stats["final_retries"] = attempt
            if not validate_latin_box(box, M, proper=True):
                raise RuntimeError("staged finder produced an invalid Latin box")
            return FinderOutcome.succeeded(box, **stats)
        logger.debug(f"final stage stuck at cell {cell} on attempt {attempt + 1}")

    stats["final_retries"] = params.retries
    return FinderOutcome.aborted("final", f"menus exhausted at cell {cell}", **stats)
