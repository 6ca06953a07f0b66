"""Experiment orchestration: peak sweeps, the runtime fit, and CSV formats."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import GridGeometry, Oracle, WalkConfig
from .errors import InsufficientData, NoPeakFound
from .simulate import auto_peak

LOOP_RULE_4_OVER_N = "4overN"
SWEEP_HEADER = "n,N,loop_weight,t_star,p_star"
SERIES_HEADER = "t,success_probability"


@dataclass(frozen=True)
class SweepSpec:
    """A grid of (side, loop weight) cells to find first peaks for.

    Loop weights come either from an explicit list applied at every side or
    from the rule l = 4/N with N the vertex count of each cell.
    """

    grid_sides: tuple[int, ...]
    oracle: Oracle
    loop_weights: tuple[float, ...] | None = None
    loop_rule: str | None = None

    def __post_init__(self) -> None:
        # canonical cell order: ascending side, then ascending weight
        object.__setattr__(self, "grid_sides", tuple(sorted(int(s) for s in self.grid_sides)))
        object.__setattr__(self, "oracle", Oracle(self.oracle))
        if self.loop_weights is not None:
            object.__setattr__(
                self, "loop_weights", tuple(sorted(float(w) for w in self.loop_weights))
            )
        if not self.grid_sides:
            raise ValueError("grid_sides must be nonempty")
        if any(side < 2 for side in self.grid_sides):
            raise ValueError("every grid side must be >= 2")
        if (self.loop_weights is None) == (self.loop_rule is None):
            raise ValueError("exactly one of loop_weights and loop_rule must be set")
        if self.loop_weights is not None and not self.loop_weights:
            raise ValueError("loop_weights must be nonempty")
        if self.loop_rule is not None and self.loop_rule != LOOP_RULE_4_OVER_N:
            raise ValueError(f"unknown loop rule {self.loop_rule!r}")

    def cell_weights(self, side: int) -> tuple[float, ...]:
        if self.loop_rule == LOOP_RULE_4_OVER_N:
            return (4.0 / (side * side),)
        return self.loop_weights


@dataclass(frozen=True)
class SweepRow:
    """One sweep cell; t_star/p_star are None when no peak was found."""

    side: int
    n_vertices: int
    loop_weight: float
    t_star: int | None
    p_star: float | None


def _run_cell(cell: tuple[int, float, Oracle]) -> SweepRow:
    side, loop_weight, oracle = cell
    config = WalkConfig(GridGeometry(side), loop_weight, oracle, marked=0)
    try:
        peak = auto_peak(config)
    except NoPeakFound:
        return SweepRow(side, side * side, float(loop_weight), None, None)
    return SweepRow(side, side * side, float(loop_weight), peak.t_star, peak.p_star)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    """One auto-peak row per (side, weight) cell, ordered by side then weight.

    Cells are independent; ``jobs > 1`` fans them out over a process pool.
    Output order is by cell index regardless of completion order, so a given
    spec always produces the identical table.
    """
    cells = [
        (side, weight, spec.oracle)
        for side in spec.grid_sides
        for weight in spec.cell_weights(side)
    ]
    if jobs <= 1:
        return [_run_cell(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_cell, cells))


@dataclass(frozen=True)
class FitResult:
    """Through-origin fit t* = c * sqrt(N ln N) plus the Pearson correlation."""

    c: float
    correlation: float
    point_count: int


def _fit_points(rows: list[SweepRow]) -> tuple[np.ndarray, np.ndarray]:
    good = [row for row in rows if row.t_star is not None]
    if len(good) < 2:
        raise InsufficientData(f"need at least 2 successful rows, got {len(good)}")
    x = np.array([math.sqrt(row.n_vertices * math.log(row.n_vertices)) for row in good])
    y = np.array([float(row.t_star) for row in good])
    return x, y


def fit_runtime(rows: list[SweepRow]) -> FitResult:
    """Least squares through the origin: c = sum(x y) / sum(x^2)."""
    x, y = _fit_points(rows)
    c = float((x @ y) / (x @ x))
    correlation = float(np.corrcoef(x, y)[0, 1])
    return FitResult(c=c, correlation=correlation, point_count=len(x))


def fit_runtime_with_intercept(rows: list[SweepRow]) -> tuple[float, float]:
    """Diagnostic free-intercept fit; returns (slope, intercept)."""
    x, y = _fit_points(rows)
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def format_fit(fit: FitResult) -> str:
    return f"c={fit.c!r}\ncorrelation={fit.correlation!r}\n"


def format_sweep_csv(rows: list[SweepRow]) -> str:
    lines = [SWEEP_HEADER]
    for row in rows:
        t_field = "" if row.t_star is None else str(int(row.t_star))
        p_field = "" if row.p_star is None else repr(float(row.p_star))
        lines.append(
            f"{row.side},{row.n_vertices},{float(row.loop_weight)!r},{t_field},{p_field}"
        )
    return "\n".join(lines) + "\n"


def emit_sweep_csv(rows: list[SweepRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(format_sweep_csv(rows))


def parse_sweep_csv(path) -> list[SweepRow]:
    """Inverse of emit_sweep_csv; reals round-trip exactly."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != SWEEP_HEADER:
        raise ValueError(f"{path}: missing sweep CSV header {SWEEP_HEADER!r}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected 5 fields, got {len(parts)}")
        rows.append(
            SweepRow(
                side=int(parts[0]),
                n_vertices=int(parts[1]),
                loop_weight=float(parts[2]),
                t_star=int(parts[3]) if parts[3] else None,
                p_star=float(parts[4]) if parts[4] else None,
            )
        )
    return rows


def format_series_csv(probabilities) -> str:
    lines = [SERIES_HEADER]
    for t, p in enumerate(probabilities):
        lines.append(f"{t},{float(p)!r}")
    return "\n".join(lines) + "\n"


def emit_series_csv(probabilities, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(format_series_csv(probabilities))


def parse_series_csv(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != SERIES_HEADER:
        raise ValueError(f"{path}: missing series CSV header {SERIES_HEADER!r}")
    return np.array([float(line.split(",")[1]) for line in lines[1:] if line])
