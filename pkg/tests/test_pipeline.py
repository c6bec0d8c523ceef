import numpy as np
import pytest

from tlqed import (DetuningSpec, TruncationSpec, detuning_set, energy_levels,
                   evaluate_point, replace_params, resolve_drive)
from tlqed.params import TWO_PI


def test_resolve_drive_explicit(params, trunc):
    det = DetuningSpec("explicit", "43_32", 1.0e9, -2.0e9)
    p = replace_params(params, detuning_mode=det)
    drive, spec = resolve_drive(p, trunc)
    assert drive.delta_m == 1.0e9 and drive.delta_n == -2.0e9
    assert drive.amplitude == p.drive_amplitude
    assert spec is None  # no diagonalization needed


def test_resolve_drive_from_transitions(params, trunc):
    drive, spec = resolve_drive(params, trunc)
    assert spec is not None
    expected = detuning_set(spec)["43_32"]
    assert drive.delta_m == expected and drive.delta_n == expected


def test_resolve_drive_pair_selector(params, trunc):
    det = DetuningSpec("from_transitions", "21_32")
    p = replace_params(params, detuning_mode=det)
    drive, spec = resolve_drive(p, trunc)
    assert drive.delta_m == detuning_set(spec)["21_32"]


def test_evaluate_point_consistent(params):
    trunc = TruncationSpec(2, 3, 4)
    det = DetuningSpec("explicit", "43_32", -TWO_PI * 30e9, -TWO_PI * 30e9)
    p = replace_params(params, x_j=0.1 * params.half_length_l,
                       kappa_n=TWO_PI * 60e9, drive_amplitude=TWO_PI * 30e9,
                       detuning_mode=det)
    res = evaluate_point(p, trunc, mode_m=1)
    assert res.report.epsilon_e > 0
    assert res.kappa_n_prime > p.kappa_n / 2
    assert res.steady.residual < 1e-10
    assert res.spectrum is None
