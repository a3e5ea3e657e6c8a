"""Containment polynomials of small Latin squares and their fixed points.

q_{n0}(p) is the probability that a binomial n0 x n0 x n0 array with density p
contains a Latin square. Iterating q describes the block recursion: an
n0^j cube succeeds when the blocks prescribed by one order-n0 pattern all do."""
from __future__ import annotations
from dataclasses import dataclass, field

import numpy as np

from latinbox.enumeration.Polynomial import Polynomial
from latinbox.enumeration.counting import all_latin_squares
from latinbox.utils import LatinBoxError, ParameterError, check_probability

MAX_ORDER = 3
GRID = 10_001
TOLERANCE = 1e-9

class NoFixedPointError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

def square_masks(n0: int) -> list[int]:
    """Support of every order-n0 Latin square as a bitmask over the n0^3 cells,
    bit (r n0 + c) n0 + v for 0-based (r,c,v)."""
    masks = []
    for square in all_latin_squares(n0):
        mask = 0
        for r, row in enumerate(square):
            for c, v in enumerate(row):
                mask |= 1 << ((r * n0 + c) * n0 + v - 1)
        masks.append(mask)
    return masks

def q_small(n0: int) -> Polynomial:
    """Inclusion-exclusion over all nonempty sets of order-n0 squares: the union
    of a set of squares with s members and support size d contributes
    (-1)^(s+1) p^d."""
    if not 1 <= n0 <= MAX_ORDER:
        raise ParameterError(f"q_small supports 1 <= n0 <= {MAX_ORDER}, got {n0}")

    squares = square_masks(n0)
    subsets = 1 << len(squares)
    union = [0] * subsets
    odd = [False] * subsets
    coefficients = [0] * (n0 ** 3 + 1)

    for subset in range(1, subsets):
        low = subset & -subset
        rest = subset ^ low
        union[subset] = union[rest] | squares[low.bit_length() - 1]
        odd[subset] = not odd[rest]
        coefficients[union[subset].bit_count()] += 1 if odd[subset] else -1

    return Polynomial(coefficients)

def two_square_lower_bound(n0: int) -> Polynomial:
    """2p^(n0^2) - p^(2 n0^2): the probability of containing one of two
    disjoint order-n0 squares."""
    return Polynomial.monomial(n0 * n0, 2) - Polynomial.monomial(2 * n0 * n0)

def sign_changes(q: Polynomial, grid: int = GRID) -> list[tuple[float, float]]:
    """Brackets (lo, hi) inside (0,1) where q(x) - x changes sign or vanishes."""
    xs = np.linspace(0.0, 1.0, grid)[1:-1]
    gaps = q(xs) - xs
    signs = np.sign(gaps)

    brackets = [(float(x), float(x)) for x in xs[signs == 0]]
    flips = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    brackets += [(float(xs[i]), float(xs[i + 1])) for i in flips]
    return sorted(brackets)

def _bisect(q: Polynomial, lo: float, hi: float, tol: float) -> float:
    if lo == hi:
        return lo

    g_lo = q(lo) - lo
    while hi - lo > tol:
        mid = (lo + hi) / 2
        g_mid = q(mid) - mid
        if g_mid == 0:
            return mid
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return (lo + hi) / 2

def fixed_point_report(q: Polynomial, tol: float = TOLERANCE) -> list[float]:
    """Every interior root of q(x) = x found on the grid, increasing."""
    return [_bisect(q, lo, hi, tol) for lo, hi in sign_changes(q)]

def fixed_point(q: Polynomial, tol: float = TOLERANCE) -> float:
    """Largest root of q(x) = x in (0,1)."""
    brackets = sign_changes(q)
    if not brackets:
        raise NoFixedPointError(f"q(x) - x does not change sign on (0,1) for {q!r}")
    lo, hi = brackets[-1]
    return _bisect(q, lo, hi, tol)

@dataclass
class IterationReport:
    start: float
    values: list[float] = field(default_factory=list)
    increasing: bool = False
    decreasing: bool = False
    limit_one: bool = False
    above_fixed_point: bool | None = None

    def toJson(self) -> dict:
        return {
            "start": self.start,
            "values": self.values,
            "increasing": self.increasing,
            "decreasing": self.decreasing,
            "limit_one": self.limit_one,
            "above_fixed_point": self.above_fixed_point
        }

def iterate_block_probability(q: Polynomial, p: float, levels: int, p_star: float | None = None) -> IterationReport:
    """p_1 = q(p), p_k = q(p_{k-1}). increasing is strict while the iterates are
    below 1 (a float iterate that reaches 1 stays there)."""
    p = check_probability(p)
    if levels < 1:
        raise ParameterError(f"levels must be positive, got {levels}")

    values = []
    current = p
    for _ in range(levels):
        current = min(max(q(current), 0.0), 1.0)
        values.append(current)

    chain = [p] + values
    pairs = list(zip(chain, chain[1:]))
    increasing = all(b > a or b == a == 1.0 for a, b in pairs)
    decreasing = all(b < a or b == a == 0.0 for a, b in pairs)

    report = IterationReport(p, values, increasing, decreasing, values[-1] > 1 - 1e-3)
    if p_star is not None:
        report.above_fixed_point = p > p_star
    return report
