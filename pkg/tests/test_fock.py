import numpy as np
import pytest

from tlqed import (TruncationSpec, ladder, quartic_matrix, assemble_hamiltonian,
                   interaction_split, convergence_check, basis_occupations,
                   hermiticity_residual, hermitian_eigs, build_coupling,
                   matrix_to_json, replace_params)
from tlqed.coupling import CouplingConstants
from tlqed.params import ResourceLimitError


def decoupled_cc(params, n_modes, gamma=0.0):
    out = []
    for m in range(1, n_modes + 1):
        c = build_coupling(m, params.x_j, params)
        out.append(CouplingConstants(m=c.m, omega_m=c.omega_m, alpha_m=0.0,
                                     beta_m=0.0, gamma_m=gamma,
                                     e_cm=params.ec_ang,
                                     omega_n_transmon=c.omega_n_transmon))
    return out


def test_ladder_qubit_case():
    a = ladder(2)
    assert np.allclose(a, [[0, 1], [0, 0]])


def test_ladder_matrix_elements():
    a = ladder(3)
    assert a[1, 2] == pytest.approx(np.sqrt(2))
    num = a.conj().T @ a
    assert np.allclose(np.diag(num).real, [0, 1, 2])


def test_ladder_commutator_below_cutoff():
    a = ladder(6)
    comm = a @ a.conj().T - a.conj().T @ a
    assert np.allclose(np.diag(comm).real[:5], 1.0)
    assert np.allclose(comm - np.diag(np.diag(comm)), 0.0)


def test_ladder_rejects_small_cutoff():
    with pytest.raises(ValueError):
        ladder(1)


def test_quartic_diagonal_matches_closed_form():
    q = quartic_matrix(8, "diagonal")
    for n in range(6):  # two below the cutoff
        assert q[n, n].real == pytest.approx(6 * n * n + 6 * n + 3, rel=1e-13)
    # top two levels are truncation-polluted
    assert q[6, 6].real < 6 * 36 + 6 * 6 + 3
    assert q[7, 7].real < 6 * 49 + 6 * 7 + 3


def test_quartic_full_contains_offdiagonals():
    q = quartic_matrix(6, "full")
    assert abs(q[0, 2]) > 0
    assert np.allclose(q, q.conj().T)


def test_quartic_none():
    assert np.allclose(quartic_matrix(5, "none"), 0.0)


def test_truncation_dimension_cap():
    with pytest.raises(ResourceLimitError):
        TruncationSpec(n_tl_modes=3, tl_photon_cutoff=20, transmon_levels=4)


def test_hamiltonian_hermitian(params, trunc):
    cc = [build_coupling(m, 0.0, params) for m in (1, 2)]
    h = assemble_hamiltonian(cc, trunc, params)
    assert hermiticity_residual(h) < 1e-12
    assert np.allclose(np.diag(h).imag, 0.0)


def test_decoupled_block_structure(params):
    trunc = TruncationSpec(1, 3, 3)
    cc = decoupled_cc(params, 1)
    h = assemble_hamiltonian(cc, trunc, params, quartic="diagonal")
    w, _ = hermitian_eigs(h)
    # spectrum is the Minkowski sum of the oscillator and transmon levels
    occ = basis_occupations(trunc)
    diag = np.sort(np.diag(h).real)
    assert np.allclose(np.sort(w), diag, atol=1e-9 * np.max(np.abs(h)))
    assert len(occ) == trunc.dimension


def test_two_level_no_quartic_splitting(params):
    trunc = TruncationSpec(1, 2, 2)
    cc = decoupled_cc(params, 1)
    h = assemble_hamiltonian(cc, trunc, params, quartic="none")
    w, _ = hermitian_eigs(h)
    # transmon block reduces to the sqrt(8 E_c E_J) splitting
    split = np.sqrt(8 * params.ec_ang * params.ej_ang)
    gaps = np.diff(np.sort(w))
    assert any(abs(g - split) < 1e-6 * split for g in gaps)


def test_interaction_split_zero_coupling(params, trunc):
    cc = decoupled_cc(params, 1)[0]
    out = interaction_split(cc, trunc)
    assert out["bs_norm"] == 0.0 and out["amp_norm"] == 0.0


def test_interaction_split_linear_and_equal(params, trunc):
    cc = build_coupling(1, 0.0, params)
    out1 = interaction_split(cc, trunc)
    cc2 = CouplingConstants(cc.m, cc.omega_m, cc.alpha_m, cc.beta_m,
                            2 * cc.gamma_m, cc.e_cm, cc.omega_n_transmon)
    out2 = interaction_split(cc2, trunc)
    assert out2["bs_norm"] == pytest.approx(2 * out1["bs_norm"], rel=1e-13)
    assert out2["amp_norm"] == pytest.approx(2 * out1["amp_norm"], rel=1e-13)
    # both blocks share the same coupling coefficient
    assert out1["bs_norm"] == pytest.approx(out1["amp_norm"], rel=1e-13)
    # largest Fock factor sqrt(cutoff-1) sqrt(levels-1)
    expect = abs(cc.gamma_m) * np.sqrt(3) * np.sqrt(3)
    assert out1["bs_norm"] == pytest.approx(expect, rel=1e-13)


def test_interaction_split_named_pairings(params, trunc):
    cc = build_coupling(1, 0.0, params)
    out = interaction_split(cc, trunc)
    g = cc.gamma_m
    assert out["pairings"]["exchange_tl1_t1"] == pytest.approx(-g, rel=1e-13)
    assert out["pairings"]["pair_tl1_t3"] == pytest.approx(g * np.sqrt(3), rel=1e-13)


def test_convergence_decoupled_exact(params):
    trunc = TruncationSpec(1, 3, 3)
    cc = decoupled_cc(params, 1)
    rep = convergence_check(cc, trunc, params)
    assert rep["max_relative_shift"] == 0.0
    assert not rep["flagged"]


def test_convergence_flags_strong_coupling(params):
    trunc = TruncationSpec(1, 2, 4)
    cc = [build_coupling(1, 0.0, params)]
    rep = convergence_check(cc, trunc, params)
    assert rep["flagged"]


def test_eigen_sum_matches_trace(params, trunc):
    cc = [build_coupling(m, 0.3 * params.half_length_l, params) for m in (1, 2)]
    h = assemble_hamiltonian(cc, trunc, params)
    w, _ = hermitian_eigs(h)
    assert np.sum(w) == pytest.approx(np.trace(h).real, rel=1e-9)


def test_matrix_json_roundtrip():
    h = np.array([[1.0, 1 - 2j], [1 + 2j, -1.0]])
    doc = matrix_to_json(h)
    assert doc[0][1] == [1.0, -2.0]
    assert doc[1][0] == [1.0, 2.0]
