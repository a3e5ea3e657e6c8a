"""SVG line charts of sweep curves and packing trajectories."""
from __future__ import annotations
import csv
import math
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from latinbox.utils import LatinBoxError

PLOT_KINDS = {
    "curve": ("p", "phat", "lo", "hi"),
    "trajectory": ("step", "deg_mean", "codeg_mean", "y_pred", "z_pred"),
}
FIGSIZE = (6.4, 4.8)
# svg ids are derived from this salt instead of a random one
HASH_SALT = "latinbox"

class SchemaError(LatinBoxError):
    def __init__(self, *args):
        super().__init__(*args)

def _read_rows(path: str, kind: str) -> list[dict]:
    if kind not in PLOT_KINDS:
        raise SchemaError(f"unknown plot kind {kind}, expected one of {tuple(PLOT_KINDS)}")

    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        missing = set(PLOT_KINDS[kind]) - set(reader.fieldnames or ())
        if missing:
            raise SchemaError(f"{path} lacks the {kind} columns {sorted(missing)}")

        rows = []
        for row in reader:
            try:
                rows.append({column: float(row[column]) if row[column] else math.nan for column in PLOT_KINDS[kind]})
            except ValueError as e:
                raise SchemaError(f"{path} has a non numeric {kind} value: {e}") from e
    return rows

def infer_side(rows: list[dict]) -> int | None:
    """n of a trajectory, recovered from y_pred = 1/sqrt(1 + 2 step/n^2)."""
    for row in rows:
        step, y = row["step"], row["y_pred"]
        if step > 0 and 0 < y < 1:
            x = (1 / (y * y) - 1) / 2
            return round(math.sqrt(step / x))
    return None

def _plot_curve(ax, rows: list[dict]):
    ax.set_xlabel("p")
    ax.set_ylabel("containment rate")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    if not rows:
        return

    rows = sorted(rows, key=lambda row: row["p"])
    ps = [row["p"] for row in rows]
    ax.fill_between(ps, [row["lo"] for row in rows], [row["hi"] for row in rows], alpha=0.3, label="95% interval")
    ax.plot(ps, [row["phat"] for row in rows], marker="o", label="phat")

def _plot_trajectory(ax, rows: list[dict], n: int | None):
    ax.set_xlabel("m / n^2")
    ax.set_ylabel("fraction of n")
    n = n or infer_side(rows)
    if not rows or not n:
        return

    xs = [row["step"] / (n * n) for row in rows]
    ax.plot(xs, [row["deg_mean"] / n for row in rows], label="mean degree")
    ax.plot(xs, [1 - row["y_pred"] for row in rows], linestyle="--", label="1 - y")
    ax.plot(xs, [row["codeg_mean"] / n for row in rows], label="mean codegree")
    ax.plot(xs, [row["z_pred"] for row in rows], linestyle="--", label="z")

def emit_plot(csv_path: str, kind: str, out_path: str | None = None, n: int | None = None) -> str:
    """Writes an SVG next to the csv (or to out_path). The output only depends
    on the csv contents."""
    rows = _read_rows(csv_path, kind)
    out_path = out_path or os.path.splitext(csv_path)[0] + ".svg"

    with plt.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=FIGSIZE)
        if kind == "curve":
            _plot_curve(ax, rows)
        else:
            _plot_trajectory(ax, rows, n)

        if ax.get_legend_handles_labels()[0]:
            ax.legend(loc="best")
        fig.savefig(out_path, format="svg", metadata={"Date": None})
        plt.close(fig)

    return out_path
