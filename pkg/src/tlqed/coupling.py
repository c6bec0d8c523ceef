"""Per-mode coupling constants between the line and the transmon.

For every mode m the chain is

    alpha_m = C_g u_m(x_j) / sqrt(C_sigma C_G)
    beta_m  = alpha_m omega_m / ((1 - alpha_m^2) sqrt(C_G))
    gamma_m = (e beta_m / hbar) (E_J / 8 E_c)^(1/4) sqrt(hbar / omega_m)
    E_cm    = E_c / (1 - alpha_m^2)

with the elementary charge and hbar entering only in gamma_m. Signs follow
u_m(x_j): even modes decouple exactly at the line center. |alpha_m| >= 1 is
a hard regime error (the 1 - alpha^2 normalization breaks down).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import (HBAR, E_CHARGE, AlphaUnitarityError, CircuitParams,
                     derive_capacitances)
from .tl_modes import mode_envelope, mode_frequency


@dataclass(frozen=True)
class CouplingConstants:
    m: int
    omega_m: float            # rad/s
    alpha_m: float            # dimensionless, |alpha_m| < 1
    beta_m: float             # rad s^-1 F^-1/2
    gamma_m: float            # rad/s, sign follows u_m(x_j)
    e_cm: float               # rad/s (angular charging energy, >= e_c)
    omega_n_transmon: float   # rad/s


def alpha(m: int, x_j: float, params: CircuitParams) -> float:
    """Dimensionless mode-overlap factor at the junction position."""
    caps = derive_capacitances(params)
    value = params.c_g * mode_envelope(m, x_j, params) / math.sqrt(
        caps.c_sigma * caps.c_big_g)
    if abs(value) >= 1.0:
        raise AlphaUnitarityError(
            f"|alpha_{m}| = {abs(value):.6f} >= 1 at x_j = {x_j}: "
            "ultra-strong normalization breakdown")
    return value


def beta(m: int, x_j: float, params: CircuitParams) -> float:
    """Charge-coupling rate per root capacitance (rad s^-1 F^-1/2)."""
    a = alpha(m, x_j, params)
    caps = derive_capacitances(params)
    return a * mode_frequency(m, params) / ((1.0 - a * a) * math.sqrt(caps.c_big_g))


def gamma_coupling(m: int, x_j: float, params: CircuitParams) -> float:
    """Mode-transmon coupling rate (rad/s).

    E_J and E_c enter as a dimensionless ratio, so the angular-unit values
    can be used directly; hbar and e carry the remaining dimensions.
    """
    b = beta(m, x_j, params)
    w = mode_frequency(m, params)
    ratio = params.ej_ang / (8.0 * params.ec_ang)
    return (E_CHARGE * b / HBAR) * ratio ** 0.25 * math.sqrt(HBAR / w)


def charging_energy_mode(m: int, x_j: float, params: CircuitParams) -> float:
    """Renormalized angular charging energy E_cm = E_c / (1 - alpha_m^2)."""
    a = alpha(m, x_j, params)
    return params.ec_ang / (1.0 - a * a)


def transmon_frequency(params: CircuitParams, e_cm: float | None = None) -> float:
    """Bare transmon frequency sqrt(8 E_J E_c) / hbar in rad/s.

    By default uses the bare charging energy as written; passing e_cm
    (rad/s) substitutes the mode-renormalized value.
    """
    ec = params.ec_ang if e_cm is None else e_cm
    return math.sqrt(8.0 * params.ej_ang * ec)


def build_coupling(m: int, x_j: float, params: CircuitParams) -> CouplingConstants:
    """All derived constants for mode m with the junction at x_j."""
    a = alpha(m, x_j, params)
    caps = derive_capacitances(params)
    w = mode_frequency(m, params)
    b = a * w / ((1.0 - a * a) * math.sqrt(caps.c_big_g))
    ratio = params.ej_ang / (8.0 * params.ec_ang)
    g = (E_CHARGE * b / HBAR) * ratio ** 0.25 * math.sqrt(HBAR / w)
    e_cm = params.ec_ang / (1.0 - a * a)
    return CouplingConstants(
        m=m, omega_m=w, alpha_m=a, beta_m=b, gamma_m=g, e_cm=e_cm,
        omega_n_transmon=transmon_frequency(params))
