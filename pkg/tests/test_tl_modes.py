import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tlqed import (mode_envelope, mode_frequency, orthonormality_check,
                   gradient_orthogonality_check, interior_node_count,
                   replace_params)
from tlqed.tl_modes import norm_constant


def test_frequency_linear_in_mode_index(params):
    w1 = mode_frequency(1, params)
    assert mode_frequency(2, params) == pytest.approx(2 * w1, rel=1e-15)
    assert mode_frequency(7, params) == pytest.approx(7 * w1, rel=1e-15)


def test_frequency_table_value(params):
    # pi / (2l sqrt(L0 C0)) evaluated independently
    assert mode_frequency(1, params) == pytest.approx(1.9288575929227643e11,
                                                      rel=1e-12)


def test_frequency_halves_when_length_doubles(params):
    longer = replace_params(params, half_length_l=2 * params.half_length_l)
    assert mode_frequency(3, longer) == pytest.approx(
        mode_frequency(3, params) / 2, rel=1e-15)


def test_frequency_rejects_bad_mode(params):
    with pytest.raises(ValueError):
        mode_frequency(0, params)


def test_envelope_values(params):
    l = params.half_length_l
    n = norm_constant(params)
    assert n == pytest.approx(3.0654204723647984, rel=1e-13)
    assert mode_envelope(1, 0.0, params) == pytest.approx(n, rel=1e-13)
    assert mode_envelope(2, 0.0, params) == pytest.approx(0.0, abs=1e-12 * n)
    assert mode_envelope(1, l, params) == pytest.approx(0.0, abs=1e-12 * n)
    assert mode_envelope(1, -l, params) == pytest.approx(0.0, abs=1e-12 * n)


def test_envelope_domain_error(params):
    with pytest.raises(ValueError):
        mode_envelope(1, 1.01 * params.half_length_l, params)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.floats(-1.0, 1.0))
def test_envelope_parity(m, frac):
    p = __import__("tlqed").CircuitParams()
    x = frac * p.half_length_l
    left = mode_envelope(m, -x, p)
    right = (-1.0) ** (m + 1) * mode_envelope(m, x, p)
    assert left == pytest.approx(right, abs=1e-12 * norm_constant(p))


def test_node_counts(params):
    for m in range(1, 7):
        assert interior_node_count(m, params) == m - 1


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (3, 5), (2, 2), (4, 6)])
def test_orthonormality(params, m, n):
    assert orthonormality_check(m, n, params, 2048) < 1e-10


def test_orthonormality_quadrature_oracle(params):
    # denser quadrature as the independent reference
    for m, n in [(3, 5), (2, 4)]:
        coarse = orthonormality_check(m, n, params, 1024)
        fine = orthonormality_check(m, n, params, 4096)
        assert coarse < 1e-10 and fine < 1e-12


def test_orthonormality_rejects_low_quadrature(params):
    with pytest.raises(ValueError):
        orthonormality_check(1, 1, params, 32)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (1, 3), (2, 5)])
def test_gradient_orthogonality(params, m, n):
    assert gradient_orthogonality_check(m, n, params, 2048) < 1e-8
