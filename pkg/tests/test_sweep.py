import os

import numpy as np
import pytest

from tlqed import (SweepAxis, run_sweep, build_coupling, replace_params,
                   DetuningSpec, TruncationSpec)
from tlqed.params import ConfigError, TWO_PI
from tlqed.sweep import OBSERVABLES

MHZ = TWO_PI * 1e6


def explicit_params(params, **kw):
    det = DetuningSpec("explicit", "43_32", -TWO_PI * 30e9, -TWO_PI * 30e9)
    return replace_params(params, detuning_mode=det, kappa_m=TWO_PI * 10e6,
                          kappa_n=TWO_PI * 60e9,
                          drive_amplitude=TWO_PI * 30e9, **kw)


def test_axis_validation():
    with pytest.raises(ConfigError):
        SweepAxis("bogus", 0, 1, 4)
    with pytest.raises(ConfigError):
        SweepAxis("c_g", 1, 0, 4)
    with pytest.raises(ConfigError):
        SweepAxis("c_g", 0, 1, 0)


def test_unknown_observable_rejected(params, trunc):
    with pytest.raises(ConfigError):
        run_sweep(params, trunc, [SweepAxis("c_g", 1e-15, 2e-15, 2)], ["foo"])


def test_single_point_matches_direct_call(params, trunc):
    x = 0.37 * params.half_length_l
    axes = [SweepAxis("x_position", x, x, 1)]
    grid = run_sweep(params, trunc, axes, "gamma_m")["gamma_m"]
    direct = build_coupling(1, x, params).gamma_m / (TWO_PI * 1e9)
    assert grid.values[0] == pytest.approx(direct, rel=1e-14)
    assert grid.error_mask == [""]


def test_gamma_grid_symmetric_in_x(params, trunc):
    l = params.half_length_l
    axes = [SweepAxis("x_position", -l, l, 21)]
    grid = run_sweep(params, trunc, axes, "gamma_m")["gamma_m"]
    vals = grid.values
    assert np.allclose(vals, vals[::-1], rtol=1e-10)


def test_masked_points_dont_abort(params, trunc):
    # c_g sweep runs into |alpha| >= 1 at the junction for large c_g
    axes = [SweepAxis("c_g", 10e-15, 60e-15, 6)]
    grid = run_sweep(params, trunc, axes, "gamma_m")["gamma_m"]
    codes = set(grid.error_mask)
    assert "alpha_unitarity" in codes
    assert any(code == "" for code in grid.error_mask)
    masked = [i for i, c in enumerate(grid.error_mask) if c]
    assert all(np.isnan(grid.values[i]) for i in masked)


def test_spectrum_observables_and_tracking(params):
    trunc = TruncationSpec(2, 3, 4)
    l = params.half_length_l
    axes = [SweepAxis("x_position", -l, l, 9)]
    grids = run_sweep(params, trunc, axes, ["e1", "e2", "de21", "tau_p"],
                      solver="lapack")
    e1, e2 = grids["e1"].values, grids["e2"].values
    assert np.all(np.isfinite(e1))
    # gap observable consistent with labeled levels
    assert np.allclose(grids["de21"].values, e2 - e1, atol=1e-9)


def test_gap_flat_in_x_when_decoupled(params):
    # a negligible coupling capacitance flattens every gap along the line
    trunc = TruncationSpec(2, 3, 4)
    p = replace_params(params, c_g=1e-22)
    l = params.half_length_l
    axes = [SweepAxis("x_position", -0.9 * l, 0.9 * l, 7)]
    vals = run_sweep(p, trunc, axes, "de21", solver="lapack")["de21"].values
    assert np.max(vals) - np.min(vals) < 1e-9 * abs(np.mean(vals))


def test_mode_axis_switches_entanglement_mode(params):
    trunc = TruncationSpec(2, 3, 4)
    p = explicit_params(params, x_j=0.0)
    axes = [SweepAxis("mode_m", 1, 2, 2)]
    grid = run_sweep(p, trunc, axes, "epsilon_e")["epsilon_e"]
    # even mode decouples exactly at the center: epsilon = 0
    assert grid.values[1] == pytest.approx(0.0, abs=1e-20)
    assert grid.values[0] > 0


def test_ej_axis_scales_junction_energy(params, trunc):
    axes = [SweepAxis("ej_over_ec", 10.0, 10.0, 1)]
    grid = run_sweep(params, trunc, axes, "gamma_m")["gamma_m"]
    p10 = replace_params(params, e_j=10 * params.e_c)
    expect = build_coupling(1, params.x_j, p10).gamma_m / (TWO_PI * 1e9)
    assert grid.values[0] == pytest.approx(expect, rel=1e-14)


def test_parallel_matches_serial(params, trunc, monkeypatch):
    l = params.half_length_l
    axes = [SweepAxis("ej_over_ec", 2, 20, 3),
            SweepAxis("x_position", -0.8 * l, 0.8 * l, 4)]
    p = explicit_params(params)
    grids_serial = run_sweep(p, trunc, axes, ["epsilon_e", "e1"])
    monkeypatch.setenv("TLQED_WORKERS", "4")
    grids_par = run_sweep(p, trunc, axes, ["epsilon_e", "e1"])
    for name in ("epsilon_e", "e1"):
        a, b = grids_serial[name], grids_par[name]
        assert a.error_mask == b.error_mask
        assert np.array_equal(a.values, b.values, equal_nan=True)


def test_every_registered_observable_evaluates(params):
    trunc = TruncationSpec(2, 3, 4)
    p = explicit_params(params, x_j=0.2 * params.half_length_l)
    axes = [SweepAxis("ej_over_ec", 5, 5, 1)]
    grids = run_sweep(p, trunc, axes, sorted(OBSERVABLES))
    for name, grid in grids.items():
        assert grid.error_mask[0] == "", f"{name}: {grid.error_mask[0]}"
        assert np.isfinite(grid.values[0]), name
