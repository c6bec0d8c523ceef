import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tlqed import hermitian_eigs, eigenvalues_by_charpoly


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (m + m.conj().T) / 2


def test_diagonal_input(rng):
    d = np.diag([3.0, -1.0, 2.5, 0.0])
    w, v = hermitian_eigs(d.astype(complex))
    assert np.allclose(w, sorted([3.0, -1.0, 2.5, 0.0]))
    # columns are unit vectors of the permutation
    assert np.allclose(np.abs(v), np.abs(v).round())


@pytest.mark.parametrize("delta,g", [(0.8, 0.35), (0.0, 1.0), (-3.0, 0.2)])
def test_two_by_two_closed_form(delta, g):
    h = np.array([[0.0, g], [g, delta]], dtype=complex)
    w, _ = hermitian_eigs(h)
    exact = np.sort([delta / 2 - np.hypot(delta / 2, g),
                     delta / 2 + np.hypot(delta / 2, g)])
    assert np.max(np.abs(w - exact)) < 1e-12


def test_random_8x8_against_charpoly(rng):
    for _ in range(20):
        h = random_hermitian(rng, 8)
        w, _ = hermitian_eigs(h)
        oracle = eigenvalues_by_charpoly(h)
        assert np.max(np.abs(w - oracle)) < 1e-8 * max(1.0, np.max(np.abs(w)))


def test_eigenvector_orthonormality(rng):
    h = random_hermitian(rng, 12)
    w, v = hermitian_eigs(h)
    assert np.max(np.abs(v.conj().T @ v - np.eye(12))) < 1e-10
    assert np.max(np.abs(h @ v - v @ np.diag(w))) < 1e-10 * np.max(np.abs(h))


def test_trace_and_gershgorin(rng):
    for _ in range(100):
        n = int(rng.integers(2, 9))
        h = random_hermitian(rng, n)
        w, _ = hermitian_eigs(h)
        assert np.sum(w) == pytest.approx(np.trace(h).real,
                                          rel=1e-9, abs=1e-9 * n)
        radii = np.sum(np.abs(h), axis=1) - np.abs(np.diag(h))
        centers = np.diag(h).real
        for lam in w:
            assert np.any(np.abs(lam - centers) <= radii + 1e-9)


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigs(np.array([[0.0, 1.0], [0.5, 0.0]], dtype=complex))


def test_rejects_non_square():
    with pytest.raises(ValueError):
        hermitian_eigs(np.zeros((2, 3), dtype=complex))


def test_ascending_order(rng):
    w, _ = hermitian_eigs(random_hermitian(rng, 10))
    assert np.all(np.diff(w) >= 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2 ** 31 - 1))
def test_matches_lapack_property(n, seed):
    h = random_hermitian(np.random.default_rng(seed), n)
    w, _ = hermitian_eigs(h)
    assert np.max(np.abs(w - np.linalg.eigvalsh(h))) < 1e-10 * max(
        1.0, float(np.max(np.abs(h))))
