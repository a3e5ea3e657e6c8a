"""Predicted trajectory of the greedy packing process.

With x = m/n^2, the fraction of uncovered edges at a vertex follows
y(x) = 1/sqrt(1+2x) and the scaled number of available triangles on an
uncovered edge follows z(x) = 1/(1+2x); they solve y' = -yz, z' = -2z^2."""
from __future__ import annotations
from dataclasses import dataclass
import math

import typing
if typing.TYPE_CHECKING:
    from latinbox.packing.Trajectory import Trajectory

def predicted(x: float) -> tuple[float, float]:
    if x < 0:
        raise ValueError(f"scaled time must be non-negative, got {x}")
    return 1 / math.sqrt(1 + 2 * x), 1 / (1 + 2 * x)

def ode_residual(x: float, h: float = 1e-4) -> tuple[float, float]:
    """Central-difference residuals of y' + yz and z' + 2z^2 at x."""
    if x - h < 0:
        raise ValueError(f"need x >= h for central differences, got x={x} h={h}")
    y_minus, z_minus = predicted(x - h)
    y_plus, z_plus = predicted(x + h)
    y, z = predicted(x)

    dy = (y_plus - y_minus) / (2 * h)
    dz = (z_plus - z_minus) / (2 * h)
    return dy + y * z, dz + 2 * z * z

@dataclass
class DeviationReport:
    sup_deg_dev: float
    sup_codeg_dev: float
    samples: int

    def within(self, band: float) -> bool:
        return self.sup_deg_dev <= band and self.sup_codeg_dev <= band

    def toJson(self) -> dict:
        return {"sup_deg_dev": self.sup_deg_dev, "sup_codeg_dev": self.sup_codeg_dev, "samples": self.samples}

def deviation_report(traj: Trajectory, n: int) -> DeviationReport:
    """Largest distance of the measured mean degree and codegree from the
    prediction over all samples. Samples without uncovered edges have no
    codegree and are skipped for it."""
    if len(traj) == 0:
        raise ValueError("deviation_report needs a nonempty trajectory")

    deg_dev = 0.0
    codeg_dev = 0.0
    for sample in traj:
        y, z = predicted(sample.step / (n * n))
        deg_dev = max(deg_dev, abs(sample.deg_mean / n - (1 - y)))
        if not math.isnan(sample.codeg_mean):
            codeg_dev = max(codeg_dev, abs(sample.codeg_mean / n - z))

    return DeviationReport(deg_dev, codeg_dev, len(traj))
