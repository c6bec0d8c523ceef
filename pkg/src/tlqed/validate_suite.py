"""Fast invariant and oracle suite behind the `validate` command.

Each check recomputes a contract from an independent direction (quadrature
against closed forms, solver against oracle, determinism by byte
comparison) and prints one PASS/FAIL line. The suite is meant to finish
in seconds on the default configuration.
"""

from __future__ import annotations

import math
import tempfile
from pathlib import Path

import numpy as np

from .config import RunConfig
from .coupling import CouplingConstants, alpha, build_coupling
from .entanglement import (closure_residual, entanglement_metric,
                           photon_numbers)
from .fock import TruncationSpec, assemble_hamiltonian, hermiticity_residual, ladder
from .jacobi import eigenvalues_by_charpoly, hermitian_eigs
from .langevin import DriveSpec, modified_decay, strong_field_steady_state
from .params import validate
from .spectrum import decoupled_closed_form_levels
from .sweep import SweepAxis, run_sweep
from .tl_modes import (gradient_orthogonality_check, interior_node_count,
                       mode_envelope, orthonormality_check)


def run(cfg: RunConfig, verbose: bool = True) -> int:
    """Run every check; returns the number of failures."""
    checks = [
        ("params_valid", _check_params),
        ("mode_orthonormality", _check_orthonormality),
        ("mode_parity_and_nodes", _check_parity_nodes),
        ("gradient_orthogonality", _check_gradient),
        ("coupling_closed_form", _check_coupling),
        ("even_mode_decoupling", _check_even_mode),
        ("ladder_and_hermiticity", _check_fock),
        ("jacobi_oracles", _check_jacobi),
        ("decoupled_spectrum", _check_decoupled),
        ("purcell_identities", _check_purcell),
        ("strong_field", _check_strong_field),
        ("photon_closure", _check_closure),
        ("csv_determinism", _check_determinism),
    ]
    failures = 0
    for name, fn in checks:
        try:
            ok, detail = fn(cfg)
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"exception: {exc!r}"
        if not ok:
            failures += 1
        if verbose:
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    if verbose:
        print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return failures


def _check_params(cfg):
    report = validate(cfg.params)
    return report.ok, "no invariant violations" if report.ok else "; ".join(report.violations)


def _check_orthonormality(cfg):
    worst = 0.0
    for m in range(1, 5):
        for n in range(1, 5):
            worst = max(worst, orthonormality_check(m, n, cfg.params, 512))
    return worst < 1e-10, f"max residual {worst:.2e}"


def _check_parity_nodes(cfg):
    p = cfg.params
    xs = np.linspace(-p.half_length_l, p.half_length_l, 41)
    worst = 0.0
    for m in range(1, 5):
        for x in xs:
            u_plus = mode_envelope(m, float(x), p)
            u_minus = mode_envelope(m, float(-x), p)
            worst = max(worst, abs(u_minus - (-1.0) ** (m + 1) * u_plus))
        if interior_node_count(m, p) != m - 1:
            return False, f"mode {m} node count wrong"
    return worst < 1e-12 * mode_envelope(1, 0.0, p), f"max parity residual {worst:.2e}"


def _check_gradient(cfg):
    worst = max(gradient_orthogonality_check(m, n, cfg.params, 1024)
                for m in range(1, 4) for n in range(1, 4))
    return worst < 1e-8, f"max relative residual {worst:.2e}"


def _check_coupling(cfg):
    p = cfg.params
    a_direct = alpha(1, 0.0, p)
    caps_lc = p.half_length_l * p.c0 * (p.c_g + p.c_j + p.c_b)
    a_closed = p.c_g / math.sqrt(caps_lc)
    rel = abs(a_direct - a_closed) / abs(a_closed)
    return rel < 1e-12, f"alpha(1, 0) relative deviation {rel:.2e}"


def _check_even_mode(cfg):
    g2 = build_coupling(2, 0.0, cfg.params).gamma_m
    g1 = build_coupling(1, 0.0, cfg.params).gamma_m
    return abs(g2) < 1e-12 * abs(g1), f"|gamma_2(0)| / |gamma_1(0)| = {abs(g2 / g1):.2e}"


def _check_fock(cfg):
    a = ladder(5)
    comm = a @ a.conj().T - a.conj().T @ a
    sub = np.diag(comm).real[:4]
    if not np.allclose(sub, 1.0, atol=1e-14):
        return False, "ladder commutator off below the cutoff"
    cc = [build_coupling(m, cfg.params.x_j, cfg.params)
          for m in range(1, cfg.trunc.n_tl_modes + 1)]
    h = assemble_hamiltonian(cc, cfg.trunc, cfg.params, quartic=cfg.quartic)
    res = hermiticity_residual(h)
    return res < 1e-12, f"hermiticity residual {res:.2e}"


def _check_jacobi(cfg):
    delta, g = 0.8, 0.35
    h2 = np.array([[0.0, g], [g, delta]], dtype=complex)
    w2, _ = hermitian_eigs(h2)
    exact = np.sort([delta / 2 - math.hypot(delta / 2, g),
                     delta / 2 + math.hypot(delta / 2, g)])
    err2 = float(np.max(np.abs(w2 - exact)))
    rng = np.random.default_rng(20240817)
    m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    m = (m + m.conj().T) / 2
    err6 = float(np.max(np.abs(hermitian_eigs(m)[0] - eigenvalues_by_charpoly(m))))
    ok = err2 < 1e-12 and err6 < 1e-8
    return ok, f"2x2 err {err2:.2e}, charpoly err {err6:.2e}"


def _decoupled_cc(params, trunc):
    out = []
    for m in range(1, trunc.n_tl_modes + 1):
        c = build_coupling(m, params.x_j, params)
        out.append(CouplingConstants(
            m=c.m, omega_m=c.omega_m, alpha_m=0.0, beta_m=0.0, gamma_m=0.0,
            e_cm=params.ec_ang, omega_n_transmon=c.omega_n_transmon))
    return out


def _check_decoupled(cfg):
    trunc = TruncationSpec(2, 3, 4)
    cc = _decoupled_cc(cfg.params, trunc)
    h = assemble_hamiltonian(cc, trunc, cfg.params, quartic="diagonal")
    w, v = hermitian_eigs(h)
    closed, occ = decoupled_closed_form_levels(cc, trunc, cfg.params)
    scale = float(np.max(np.abs(w)))
    state = np.argmax(np.abs(v), axis=0)  # diagonal H: permutation columns
    err = max((abs(w[k] - closed[idx]) / scale
               for k, idx in enumerate(state)
               if occ[idx][1] <= trunc.transmon_levels - 3), default=1.0)
    return err < 1e-12, f"relative deviation {err:.2e} on levels 2+ below cutoff"


def _check_purcell(cfg):
    cc = build_coupling(1, 0.0, cfg.params)
    p = cfg.params
    at_zero = modified_decay(cc, DriveSpec(0, 0, 0.0, 0.0), p)
    expected = 0.5 * p.kappa_n + 4 * cc.gamma_m ** 2 / p.kappa_m
    rel = abs(at_zero.kappa_n_prime - expected) / expected
    plus = modified_decay(cc, DriveSpec(0, 0, 3e8, 0.0), p).purcell_term
    minus = modified_decay(cc, DriveSpec(0, 0, -3e8, 0.0), p).purcell_term
    even = abs(plus - minus) <= 1e-15 * plus
    return rel < 1e-12 and even, f"resonant deviation {rel:.2e}"


def _check_strong_field(cfg):
    p = cfg.params
    cc = build_coupling(1, 0.6 * p.half_length_l, p)
    drive0 = DriveSpec(0.0, 0.0, 5 * p.kappa_m, 5 * p.kappa_n)
    ss0 = strong_field_steady_state(cc, drive0, p)
    if ss0.a_big != 0 or ss0.b_big != 0 or ss0.gamma_n_kerr != 0:
        return False, "undriven fixed point moved"
    drive = DriveSpec(1e-3 * p.kappa_m, 0.3, 5 * p.kappa_m, 5 * p.kappa_n)
    ss = strong_field_steady_state(cc, drive, p)
    return ss.residual < 1e-10, f"scaled residual {ss.residual:.2e}"


def _check_closure(cfg):
    p = cfg.params
    cc = build_coupling(1, 0.93 * p.half_length_l, p)
    ecm_ghz = cc.e_cm / (2 * math.pi * 1e9)
    drive = DriveSpec(0.2 * abs(cc.gamma_m), 0.5,
                      -4.0 * abs(cc.gamma_m), -4.0 * abs(cc.gamma_m))
    ss = strong_field_steady_state(cc, drive, p)
    n_tl, n_t = photon_numbers(cc, drive, ss, p)
    rep = entanglement_metric(cc, drive, ss, p)
    res = closure_residual(rep, cc, ss, p)
    ok = res < 1e-12 and n_tl >= 0 and n_t >= 0
    return ok, f"re-substitution residual {res:.2e} (e_cm {ecm_ghz:.2f} GHz)"


def _check_determinism(cfg):
    from .cli import write_csv
    axes = [SweepAxis("ej_over_ec", 2.0, 10.0, 3),
            SweepAxis("x_position", -0.5 * cfg.params.half_length_l,
                      0.5 * cfg.params.half_length_l, 3)]
    blobs = []
    for _ in range(2):
        grids = run_sweep(cfg.params, cfg.trunc, axes, ["gamma_m"],
                          mode_m=1, solver=cfg.eigensolver)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "g.csv"
            write_csv(grids["gamma_m"], path)
            blobs.append(path.read_bytes())
    return blobs[0] == blobs[1], f"{len(blobs[0])} bytes, identical={blobs[0] == blobs[1]}"
