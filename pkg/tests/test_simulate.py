"""Success-probability series and first-peak detection."""

import numpy as np
import pytest

import dense_reference as ref
from lackwalk import (
    GridGeometry,
    NoPeakFound,
    Oracle,
    WalkConfig,
    auto_peak,
    build_start_state,
    find_first_peak,
    run_series,
    walk_step,
)
from lackwalk import simulate
from lackwalk.simulate import SuccessSeries


def synthetic(values):
    config = WalkConfig(GridGeometry(2))
    return SuccessSeries(config, np.asarray(values, dtype=float))


def test_series_starts_at_uniform_probability():
    for side in (5, 16):
        config = WalkConfig(GridGeometry(side), 0.03, Oracle.GROVER)
        series = run_series(config, 3)
        assert series.probabilities[0] == pytest.approx(1.0 / side**2, abs=1e-15)


def test_series_values_are_probabilities():
    config = WalkConfig(GridGeometry(8), 4.0 / 64, Oracle.GROVER)
    p = run_series(config, 300).probabilities
    assert np.all(p >= 0.0) and np.all(p <= 1.0)


def test_run_series_rejects_bad_horizon():
    with pytest.raises(ValueError):
        run_series(WalkConfig(GridGeometry(4)), 0)


def test_find_first_peak_simple():
    peak = find_first_peak(synthetic([0.1, 0.2, 0.3, 0.29, 0.1]))
    assert (peak.t_star, peak.p_star) == (2, 0.3)


def test_find_first_peak_plateau_end():
    peak = find_first_peak(synthetic([0.1, 0.3, 0.3, 0.29, 0.1]))
    assert (peak.t_star, peak.p_star) == (2, 0.3)


def test_find_first_peak_skips_period2_ripple():
    # rising envelope with a superimposed alternation must not stop early
    peak = find_first_peak(synthetic([0.0, 0.10, 0.05, 0.20, 0.15, 0.30, 0.10, 0.05]))
    assert (peak.t_star, peak.p_star) == (5, 0.30)


def test_find_first_peak_monotone_raises():
    with pytest.raises(NoPeakFound):
        find_first_peak(synthetic([0.1, 0.2, 0.3, 0.4, 0.5]))


def test_reference_peak_n16():
    config = WalkConfig(GridGeometry(16), 4.0 / 256, Oracle.GROVER)
    peak = find_first_peak(run_series(config, 100))
    assert peak.t_star == 35
    assert peak.p_star == pytest.approx(0.975506, abs=5e-6)


def test_auto_peak_retry_loop(monkeypatch):
    config = WalkConfig(GridGeometry(16), 4.0 / 256, Oracle.GROVER)
    monkeypatch.setattr(simulate, "default_horizon", lambda cfg: 5)
    peak = auto_peak(config)  # horizons 5, 10, 20, 40; the peak sits at 35
    assert peak.t_star == 35
    monkeypatch.setattr(simulate, "default_horizon", lambda cfg: 2)
    with pytest.raises(NoPeakFound):
        auto_peak(config)  # 2, 4, 8, 16 all end before the peak


# pinned from the dense-matrix route in dense_reference.success_series
LAZINESS_LADDER = {
    0.0: (23, 0.25593616244441364),
    0.005: (43, 0.7101000826016701),
    0.015: (35, 0.973959732601191),
    0.2: (13, 0.18340334936824876),
}


@pytest.mark.parametrize("loop_weight", sorted(LAZINESS_LADDER))
def test_laziness_ladder_regression(loop_weight):
    config = WalkConfig(GridGeometry(16), loop_weight, Oracle.GROVER)
    peak = auto_peak(config)
    t_expected, p_expected = LAZINESS_LADDER[loop_weight]
    assert peak.t_star == t_expected
    assert peak.p_star == pytest.approx(p_expected, abs=1e-9)


def test_laziness_ladder_against_live_dense_oracle():
    config = WalkConfig(GridGeometry(16), 0.015, Oracle.GROVER)
    dense = ref.success_series(16, 0.015, "grover", 0, 60)
    fast = run_series(config, 60).probabilities
    assert np.max(np.abs(dense - fast)) < 1e-12


def test_laziness_rise_then_fall():
    peaks = {
        l: auto_peak(WalkConfig(GridGeometry(16), l, Oracle.GROVER)).p_star
        for l in (0.0, 0.005, 0.015, 0.2)
    }
    assert peaks[0.0] < peaks[0.005] < peaks[0.015]
    assert peaks[0.2] < peaks[0.015]
    assert peaks[0.0] < 0.4


def test_skw_only_slows_down():
    t_stars = {
        l: auto_peak(WalkConfig(GridGeometry(16), l, Oracle.SKW)).t_star
        for l in (0.0, 5.0, 20.0)
    }
    assert t_stars[0.0] < t_stars[5.0] < t_stars[20.0]


def test_self_loop_holds_most_of_the_peak():
    config = WalkConfig(GridGeometry(16), 4.0 / 256, Oracle.GROVER)
    state = build_start_state(config)
    for _ in range(35):
        state = walk_step(state, config)
    block = state.block(config.marked)
    assert block[4] ** 2 / (block @ block) > 0.5


def test_series_is_deterministic():
    config = WalkConfig(GridGeometry(12), 4.0 / 144, Oracle.GROVER)
    a = run_series(config, 80).probabilities
    b = run_series(config, 80).probabilities
    assert np.array_equal(a, b)


def test_translation_covariance():
    geom = GridGeometry(8)
    base = WalkConfig(geom, 4.0 / 64, Oracle.GROVER, marked=0)
    moved = WalkConfig(geom, 4.0 / 64, Oracle.GROVER, marked=geom.vertex_index(3, 5))
    pa = run_series(base, 100).probabilities
    pb = run_series(moved, 100).probabilities
    assert np.max(np.abs(pa - pb)) < 1e-12
