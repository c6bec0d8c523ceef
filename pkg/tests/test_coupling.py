import math

import numpy as np
import pytest

from tlqed import (alpha, beta, gamma_coupling, transmon_frequency,
                   build_coupling, charging_energy_mode, replace_params)
from tlqed.params import AlphaUnitarityError, TWO_PI


def test_alpha_even_mode_node(params):
    assert alpha(2, 0.0, params) == pytest.approx(0.0, abs=1e-15)


def test_alpha_decoupling_limit(params):
    p = replace_params(params, c_g=1e-22)
    assert abs(alpha(1, 0.0, p)) < 1e-8


def test_alpha_closed_form(params):
    # algebraic simplification: c_g / sqrt(l c0 c_big_g)
    direct = alpha(1, 0.0, params)
    closed = params.c_g / math.sqrt(
        params.half_length_l * params.c0 * (params.c_g + params.c_j + params.c_b))
    assert direct == pytest.approx(closed, rel=1e-12)
    assert direct == pytest.approx(0.8773246315326999, rel=1e-13)


def test_alpha_unitarity_error(params):
    p = replace_params(params, c_g=60e-15)
    with pytest.raises(AlphaUnitarityError):
        alpha(1, 0.0, p)


def test_alpha_sign_follows_envelope(params):
    l = params.half_length_l
    # mode 2 envelope is negative just right of center
    assert alpha(2, 0.25 * l, params) < 0
    assert alpha(2, -0.25 * l, params) > 0


def test_alpha_monotone_in_cg(params):
    x = 0.5 * params.half_length_l
    values = []
    for cg in np.linspace(1e-15, 30e-15, 12):
        p = replace_params(params, c_g=float(cg))
        values.append(abs(alpha(1, x, p)))
    assert all(b > a for a, b in zip(values, values[1:]))


def test_beta_zero_when_decoupled(params):
    # the center node of mode 2 kills the coupling chain
    assert abs(beta(2, 0.0, params)) < 1e-13 * abs(beta(1, 0.0, params))


def test_beta_frozen_value(params):
    assert beta(1, 0.0, params) == pytest.approx(2.950991057336312e18, rel=1e-12)


def test_beta_scales_with_frequency(params):
    # same alpha at a position where u_1 and u_2 coincide is unavailable;
    # instead check the documented linearity through a length rescale at
    # fixed alpha: alpha is length-free only via the envelope, so verify
    # directly that beta/omega is constant when only l0 changes omega.
    p2 = replace_params(params, l0=4 * params.l0)  # halves omega_m
    b1, b2 = beta(1, 0.0, params), beta(1, 0.0, p2)
    w_ratio = 0.5
    assert b2 / b1 == pytest.approx(w_ratio, rel=1e-12)


def test_gamma_zero_at_even_node(params):
    g2 = gamma_coupling(2, 0.0, params)
    g1 = gamma_coupling(1, 0.0, params)
    assert abs(g2) < 1e-13 * abs(g1)


def test_gamma_frozen_value(params):
    assert gamma_coupling(1, 0.0, params) == pytest.approx(
        100724419257.22083, rel=1e-12)


def test_gamma_fourth_root_scaling(params):
    p16 = replace_params(params, e_j=16 * params.e_j)
    assert gamma_coupling(1, 0.0, p16) == pytest.approx(
        2 * gamma_coupling(1, 0.0, params), rel=1e-12)


def test_gamma_node_structure_matches_envelope(params):
    l = params.half_length_l
    xs = np.linspace(-l, l, 201)
    from tlqed import mode_envelope
    for x in xs:
        g = gamma_coupling(2, float(x), params)
        u = mode_envelope(2, float(x), params)
        assert np.sign(g) == np.sign(u) or u == 0


def test_transmon_frequency_value(params):
    w = transmon_frequency(params)
    assert w == pytest.approx(TWO_PI * 4.874423042781576e9, rel=1e-12)


def test_transmon_frequency_scaling(params):
    p4 = replace_params(params, e_j=4 * params.e_j)
    assert transmon_frequency(p4) == pytest.approx(
        2 * transmon_frequency(params), rel=1e-13)


def test_transmon_frequency_ecm_variant(params):
    e_cm = charging_energy_mode(1, 0.0, params)
    assert e_cm > params.ec_ang
    assert transmon_frequency(params, e_cm) > transmon_frequency(params)


def test_transmon_frequency_degenerate_limit(params):
    assert transmon_frequency(params, 0.0) == 0.0


def test_build_coupling_consistency(params):
    cc = build_coupling(1, 0.0, params)
    assert cc.alpha_m == pytest.approx(alpha(1, 0.0, params), rel=1e-14)
    assert cc.beta_m == pytest.approx(beta(1, 0.0, params), rel=1e-14)
    assert cc.gamma_m == pytest.approx(gamma_coupling(1, 0.0, params), rel=1e-14)
    assert cc.e_cm == pytest.approx(1.8006406673376274e10, rel=1e-12)
    assert cc.e_cm >= params.ec_ang
