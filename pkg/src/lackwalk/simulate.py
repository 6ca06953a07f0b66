"""Evolution loop, success-probability series, and first-peak detection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import WalkConfig, build_start_state, coin_vector, oracle_code, shift_permutation
from .errors import NoPeakFound

PLATEAU_EPS = 1e-12
MAX_PEAK_RETRIES = 3


@dataclass
class SuccessSeries:
    """Per-step probability at the marked vertex, all five directions summed."""

    config: WalkConfig
    probabilities: np.ndarray  # p(t) for t = 0..t_max

    def __len__(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class PeakResult:
    """First local maximum of a success series: step index and value."""

    t_star: int
    p_star: float


def run_series(config: WalkConfig, t_max: int) -> SuccessSeries:
    """Evolve the start state for ``t_max`` steps, recording p(t) at each step.

    p(0) is the uniform start value 1/N.
    """
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    coin = coin_vector(config.loop_weight)
    perm = shift_permutation(config.geometry)
    code = oracle_code(config.oracle)
    marked = config.marked
    w0 = 5 * marked

    amps = build_start_state(config).amplitudes
    out = np.empty_like(amps)
    scratch = np.empty_like(amps)

    probs = np.empty(t_max + 1)
    blk = amps[w0 : w0 + 5]
    probs[0] = blk @ blk
    for t in range(1, t_max + 1):
        kernels.step(amps, out, scratch, coin, marked, code, perm)
        amps, out = out, amps
        blk = amps[w0 : w0 + 5]
        probs[t] = blk @ blk
    return SuccessSeries(config, probs)


def find_first_peak(series: SuccessSeries) -> PeakResult:
    """Earliest t >= 1 with p(t) >= p(t-1), p(t) > p(t+1) + eps, p(t) > p(t+2) - eps.

    The epsilon guards against floating-point plateaus being read as peaks.
    The two-step lookahead exists because a sign-alternating query at the
    marked vertex (the SKW oracle) superimposes a period-2 ripple on a still
    rising probability curve; without it the first down-tick of the ripple
    would be reported as the peak.  Smooth curves are unaffected: past a real
    maximum both following values are lower.

    Raises NoPeakFound when no step qualifies (typically the series is still
    rising at t_max and the caller should rerun with a longer horizon).
    """
    p = series.probabilities
    for t in range(1, len(p) - 1):
        if p[t] < p[t - 1] or p[t] <= p[t + 1] + PLATEAU_EPS:
            continue
        if t + 2 < len(p) and p[t] <= p[t + 2] - PLATEAU_EPS:
            continue
        return PeakResult(t, float(p[t]))
    raise NoPeakFound(f"no peak within {len(p) - 1} steps")


def default_horizon(config: WalkConfig) -> int:
    """Generous step budget, ceil(3 * sqrt(N ln N))."""
    n_vertices = config.geometry.n_vertices
    return math.ceil(3.0 * math.sqrt(n_vertices * math.log(n_vertices)))


def auto_peak(config: WalkConfig) -> PeakResult:
    """First peak with an automatic horizon, doubling it on NoPeakFound.

    Gives up after MAX_PEAK_RETRIES doublings and lets NoPeakFound propagate;
    that signals a pathological configuration rather than a short horizon.
    """
    t_max = default_horizon(config)
    for attempt in range(MAX_PEAK_RETRIES + 1):
        try:
            return find_first_peak(run_series(config, t_max))
        except NoPeakFound:
            if attempt == MAX_PEAK_RETRIES:
                raise
            t_max *= 2
    raise AssertionError("unreachable")
