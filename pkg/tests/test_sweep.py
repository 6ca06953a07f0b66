"""Sweep orchestration, runtime fit, and CSV round trips."""

import math

import numpy as np
import pytest

import dense_reference as ref
from lackwalk import (
    GridGeometry,
    InsufficientData,
    NoPeakFound,
    Oracle,
    SweepRow,
    SweepSpec,
    WalkConfig,
    emit_series_csv,
    emit_sweep_csv,
    find_first_peak,
    fit_runtime,
    parse_series_csv,
    parse_sweep_csv,
    run_sweep,
)
from lackwalk import sweep as sweep_mod
from lackwalk.simulate import SuccessSeries
from lackwalk.sweep import fit_runtime_with_intercept, format_fit, format_sweep_csv


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec((), Oracle.GROVER, loop_rule="4overN")
    with pytest.raises(ValueError):
        SweepSpec((1, 4), Oracle.GROVER, loop_rule="4overN")
    with pytest.raises(ValueError):
        SweepSpec((4,), Oracle.GROVER, loop_weights=())
    with pytest.raises(ValueError):
        SweepSpec((4,), Oracle.GROVER)
    with pytest.raises(ValueError):
        SweepSpec((4,), Oracle.GROVER, loop_weights=(0.1,), loop_rule="4overN")
    with pytest.raises(ValueError):
        SweepSpec((4,), Oracle.GROVER, loop_rule="5overN")


def test_rule_weights_follow_grid_size():
    spec = SweepSpec((4, 8), Oracle.GROVER, loop_rule="4overN")
    assert spec.cell_weights(4) == (4.0 / 16,)
    assert spec.cell_weights(8) == (4.0 / 64,)


def test_run_sweep_reference_cell():
    spec = SweepSpec((16,), Oracle.GROVER, loop_rule="4overN")
    rows = run_sweep(spec)
    assert len(rows) == 1
    row = rows[0]
    assert (row.side, row.n_vertices, row.loop_weight) == (16, 256, 0.015625)
    assert row.t_star == 35
    assert row.p_star == pytest.approx(0.975506, abs=5e-6)


def test_run_sweep_loopless_cell_matches_dense_route():
    rows = run_sweep(SweepSpec((16,), Oracle.GROVER, loop_weights=(0.0,)))
    dense = ref.success_series(16, 0.0, "grover", 0, 120)
    config = WalkConfig(GridGeometry(16), 0.0, Oracle.GROVER)
    dense_peak = find_first_peak(SuccessSeries(config, dense))
    assert rows[0].t_star == dense_peak.t_star
    assert rows[0].p_star == pytest.approx(dense_peak.p_star, abs=1e-12)


def test_run_sweep_row_order_and_parallel_equivalence():
    spec = SweepSpec((5, 4), Oracle.GROVER, loop_weights=(0.4, 0.1))
    rows = run_sweep(spec)
    assert [(r.side, r.loop_weight) for r in rows] == [
        (4, 0.1),
        (4, 0.4),
        (5, 0.1),
        (5, 0.4),
    ]
    assert run_sweep(spec, jobs=2) == rows


def test_run_sweep_records_failed_cells(monkeypatch):
    def fail_on_side_5(config):
        if config.geometry.side == 5:
            raise NoPeakFound("forced")
        return original(config)

    original = sweep_mod.auto_peak
    monkeypatch.setattr(sweep_mod, "auto_peak", fail_on_side_5)
    rows = run_sweep(SweepSpec((4, 5), Oracle.GROVER, loop_weights=(0.25,)))
    assert rows[0].t_star is not None
    assert rows[1] == SweepRow(5, 25, 0.25, None, None)


def test_fit_exact_linear_data():
    rows = [
        SweepRow(n, n * n, 0.1, 2.0 * math.sqrt(n * n * math.log(n * n)), None)
        for n in (4, 8, 16, 32)
    ]
    fit = fit_runtime(rows)
    assert fit.c == pytest.approx(2.0, abs=1e-12)
    assert fit.correlation == pytest.approx(1.0, abs=1e-12)
    assert fit.point_count == 4


def test_fit_reference_triple():
    rows = [
        SweepRow(16, 256, 4.0 / 256, 35, 0.975506),
        SweepRow(32, 1024, 4.0 / 1024, 77, 0.973669),
        SweepRow(64, 4096, 4.0 / 4096, 170, 0.975548),
    ]
    fit = fit_runtime(rows)
    assert fit.c == pytest.approx(0.92, abs=0.005)
    # spot value: 170 / sqrt(4096 ln 4096) ~ 0.921
    assert 170 / math.sqrt(4096 * math.log(4096)) == pytest.approx(0.921, abs=2e-3)


def test_fit_requires_two_successes():
    rows = [
        SweepRow(4, 16, 0.1, 7, 0.5),
        SweepRow(5, 25, 0.1, None, None),
    ]
    with pytest.raises(InsufficientData):
        fit_runtime(rows)


def test_fit_with_intercept_diagnostic():
    rows = [
        SweepRow(n, n * n, 0.1, 3.0 * math.sqrt(n * n * math.log(n * n)) + 1.0, None)
        for n in (4, 8, 16)
    ]
    slope, intercept = fit_runtime_with_intercept(rows)
    assert slope == pytest.approx(3.0, abs=1e-9)
    assert intercept == pytest.approx(1.0, abs=1e-7)


def test_format_fit_lines():
    from lackwalk.sweep import FitResult

    text = format_fit(FitResult(c=0.5, correlation=0.25, point_count=3))
    assert text == "c=0.5\ncorrelation=0.25\n"


def test_sweep_csv_round_trip(tmp_path):
    rows = [
        SweepRow(16, 256, 0.015625, 35, 0.9755064554170094),
        SweepRow(17, 289, 4.0 / 289, 39, 0.97608314),
        SweepRow(18, 324, 4.0 / 324, None, None),
    ]
    path = tmp_path / "rows.csv"
    emit_sweep_csv(rows, path)
    assert parse_sweep_csv(path) == rows


def test_sweep_csv_format(tmp_path):
    path = tmp_path / "rows.csv"
    emit_sweep_csv([], path)
    raw = path.read_bytes()
    assert raw == b"n,N,loop_weight,t_star,p_star\n"

    rows = [SweepRow(4, 16, 0.25, 7, 0.5), SweepRow(5, 25, 0.16, 9, 0.625)]
    emit_sweep_csv(rows, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 3
    assert lines[1] == "4,16,0.25,7,0.5"
    assert b"\r" not in path.read_bytes()


def test_sweep_csv_reals_round_trip_exactly():
    weight = 4.0 / 289  # not representable in a short decimal
    text = format_sweep_csv([SweepRow(17, 289, weight, 39, 0.1 + 0.2)])
    field = text.splitlines()[1].split(",")
    assert float(field[2]) == weight
    assert float(field[4]) == 0.1 + 0.2


def test_parse_sweep_csv_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("nope\n", encoding="utf-8")
    with pytest.raises(ValueError):
        parse_sweep_csv(path)
    path.write_text("n,N,loop_weight,t_star,p_star\n1,2,3\n", encoding="utf-8")
    with pytest.raises(ValueError):
        parse_sweep_csv(path)


def test_series_csv_round_trip(tmp_path):
    probs = np.array([0.25, 0.1 + 0.2, 0.975506])
    path = tmp_path / "series.csv"
    emit_series_csv(probs, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,success_probability"
    assert lines[1].startswith("0,")
    assert np.array_equal(parse_series_csv(path), probs)
