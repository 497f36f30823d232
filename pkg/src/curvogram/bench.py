"""Timing harness for the line engine, with CSV and figure output."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass
from typing import IO, Sequence

from .model import UNSETTLED, LineProblem
from .engine import settle_basic_fast, settle_topdown

CSV_HEADER = "l,m,seconds"


@dataclass(frozen=True)
class BenchPoint:
    l: int
    m: int
    seconds: float


def fully_open_basic_line(l: int) -> LineProblem:
    """A fully unsettled line of distinct letters with a Theta(l) clue list."""
    clues = (1,) * ((l + 1) // 2)
    return LineProblem(UNSETTLED * l, tuple(range(l)), clues)


def bench_basic_line(
    sizes: Sequence[int], *, repeats: int = 3, method: str = "dp"
) -> list[BenchPoint]:
    """Time one settle per size; reports the best of ``repeats`` runs."""
    settle = {"dp": settle_topdown, "basic": settle_basic_fast}[method]
    points = []
    for l in sizes:
        line = fully_open_basic_line(l)
        m = sum(line.clues) + len(line.clues) + 1
        best = math.inf
        for _ in range(max(1, repeats)):
            start = time.perf_counter()
            settle(line)
            best = min(best, time.perf_counter() - start)
        points.append(BenchPoint(l, m, best))
    return points


def write_csv(points: Sequence[BenchPoint], out: IO[str]) -> None:
    out.write(CSV_HEADER + "\n")
    for p in points:
        out.write(f"{p.l},{p.m},{p.seconds:.6f}\n")


def fitted_slope(points: Sequence[BenchPoint]) -> float:
    """Least-squares slope of log(seconds) against log(l)."""
    if len(points) < 2:
        raise ValueError("need at least two points to fit a slope")
    xs = [math.log(p.l) for p in points]
    ys = [math.log(max(p.seconds, 1e-9)) for p in points]
    return statistics.linear_regression(xs, ys).slope


def render_scaling_figure(points: Sequence[BenchPoint], path: str) -> None:
    """Write a log-log scaling plot of the timings to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ls = [p.l for p in points]
    ts = [p.seconds for p in points]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(ls, ts, "o-", label="settle on fully open line")
    if len(points) >= 2:
        slope = fitted_slope(points)
        anchor = ts[0]
        ax.loglog(
            ls,
            [anchor * (l / ls[0]) ** slope for l in ls],
            "--",
            color="gray",
            label=f"fit: slope {slope:.2f}",
        )
    ax.set_xlabel("line length l")
    ax.set_ylabel("seconds")
    ax.set_title("Line settle scaling")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
