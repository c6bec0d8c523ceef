"""Steady photon numbers, cross-correlation, and the entanglement metric.

The intracavity numbers solve the linear pair

    n_tl           = (g^2 / |a0|^2) (2 n_t + 1) + k_m n_ina / |a0|^2
    (1 - gN^2/|b0|^2) n_t = (g^2 / |b0|^2) (2 n_tl + 1) + gN^2 / |b0|^2
                            + k_n n_inb / |b0|^2

with a0 = j d_m + k_m/2 and b0 = j d_n + k_n/2. The bath injections carry
one factor of the mode decay rate so the ratios stay dimensionless; with
the decay rates normalized to one they reduce to the bare n_in/|a0|^2
form, and at n_in = 0 the choice is inert. Output numbers follow the
2 kappa scaling of the input-output convention, the cross-correlation is

    d_mm = -2 sqrt(k_m k_n) g gN (1 + n_t) / (a0 b0)

and epsilon_e = |d_mm| / sqrt(n_otl n_ot) with values above one counted as
entangled (the boundary itself is classified separable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coupling import CouplingConstants
from .langevin import DriveSpec, SteadyStateFields
from .params import (CircuitParams, DegenerateSpectrumError, InstabilityError,
                     NegativePhotonNumberError)


@dataclass(frozen=True)
class EntanglementReport:
    n_tl: float
    n_t: float
    n_otl: float
    n_ot: float
    d_mm: complex
    epsilon_e: float
    entangled: bool
    a0: complex
    b0: complex
    b1: float


def response_denominators(drive: DriveSpec, params: CircuitParams) -> tuple[complex, complex]:
    a0 = 1j * drive.delta_m + 0.5 * params.kappa_m
    b0 = 1j * drive.delta_n + 0.5 * params.kappa_n
    return a0, b0


def photon_numbers(cc: CouplingConstants, drive: DriveSpec,
                   ss: SteadyStateFields, params: CircuitParams) -> tuple[float, float]:
    """Intracavity occupations (n_tl, n_t) from the linear closure."""
    a0, b0 = response_denominators(drive, params)
    g2 = cc.gamma_m ** 2
    abs_a0_sq = abs(a0) ** 2
    abs_b0_sq = abs(b0) ** 2
    g_n = ss.gamma_n_kerr
    b1 = 1.0 - (g_n * g_n) / abs_b0_sq
    if b1 <= 0.0:
        raise InstabilityError(
            f"b1 = {b1:.3e} <= 0: parametric regime beyond linearized validity")
    c_a = g2 / abs_a0_sq
    c_b = g2 / abs_b0_sq
    s_a = params.kappa_m * params.n_ina / abs_a0_sq
    s_b = params.kappa_n * params.n_inb / abs_b0_sq
    det = b1 - 4.0 * c_a * c_b
    if det <= 0.0:
        raise NegativePhotonNumberError(
            f"closure outside its validity: det = {det:.3e} <= 0 "
            f"(c_a = {c_a:.3e}, c_b = {c_b:.3e}, b1 = {b1:.3e})")
    rhs_a = c_a + s_a
    rhs_b = c_b + (g_n * g_n) / abs_b0_sq + s_b
    n_tl = (b1 * rhs_a + 2.0 * c_a * rhs_b) / det
    n_t = (rhs_b + 2.0 * c_b * rhs_a) / det
    if n_tl < 0.0 or n_t < 0.0:
        raise NegativePhotonNumberError(
            f"closure produced a negative occupation: n_tl = {n_tl:.3e}, "
            f"n_t = {n_t:.3e} (c_a = {c_a:.3e}, c_b = {c_b:.3e}, b1 = {b1:.3e})")
    return n_tl, n_t


def output_photon_numbers(n_tl: float, n_t: float,
                          params: CircuitParams) -> tuple[float, float]:
    """Propagating-field numbers 2 kappa n + n_in for both modes."""
    if n_tl < 0 or n_t < 0:
        raise ValueError("occupations must be >= 0")
    n_otl = 2.0 * params.kappa_m * n_tl + params.n_ina
    n_ot = 2.0 * params.kappa_n * n_t + params.n_inb
    return n_otl, n_ot


def cross_correlation(cc: CouplingConstants, ss: SteadyStateFields,
                      n_t: float, drive: DriveSpec,
                      params: CircuitParams) -> complex:
    """Phase-sensitive output cross-correlation d_mm (complex)."""
    a0, b0 = response_denominators(drive, params)
    pref = -2.0 * math.sqrt(params.kappa_m * params.kappa_n)
    return pref * cc.gamma_m * ss.gamma_n_kerr * (1.0 + n_t) / (a0 * b0)


def entanglement_metric(cc: CouplingConstants, drive: DriveSpec,
                        ss: SteadyStateFields,
                        params: CircuitParams) -> EntanglementReport:
    """Full per-point entanglement verdict from the closure chain."""
    a0, b0 = response_denominators(drive, params)
    n_tl, n_t = photon_numbers(cc, drive, ss, params)
    n_otl, n_ot = output_photon_numbers(n_tl, n_t, params)
    d_mm = cross_correlation(cc, ss, n_t, drive, params)
    denom = math.sqrt(n_otl) * math.sqrt(n_ot)  # roots first: no underflow
    if denom > 0.0:
        eps = abs(d_mm) / denom
    elif d_mm == 0:
        eps = 0.0
    else:
        raise DegenerateSpectrumError(
            "zero output photon number with nonzero cross-correlation")
    g_n = ss.gamma_n_kerr
    return EntanglementReport(
        n_tl=n_tl, n_t=n_t, n_otl=n_otl, n_ot=n_ot, d_mm=d_mm,
        epsilon_e=eps, entangled=bool(eps > 1.0), a0=a0, b0=b0,
        b1=1.0 - (g_n * g_n) / abs(b0) ** 2)


def closure_residual(report: EntanglementReport, cc: CouplingConstants,
                     ss: SteadyStateFields, params: CircuitParams) -> float:
    """Re-substitution residual of the photon-number pair (relative)."""
    g2 = cc.gamma_m ** 2
    a0_sq = abs(report.a0) ** 2
    b0_sq = abs(report.b0) ** 2
    g_n = ss.gamma_n_kerr
    lhs1 = report.n_tl
    rhs1 = g2 / a0_sq * (2 * report.n_t + 1) + params.kappa_m * params.n_ina / a0_sq
    lhs2 = report.b1 * report.n_t
    rhs2 = (g2 / b0_sq * (2 * report.n_tl + 1) + g_n * g_n / b0_sq
            + params.kappa_n * params.n_inb / b0_sq)
    scale = max(abs(lhs1), abs(rhs1), abs(lhs2), abs(rhs2), 1e-300)
    return max(abs(lhs1 - rhs1), abs(lhs2 - rhs2)) / scale
