"""Transmission-line standing-wave modes.

The line spans x in [-l, +l] with both ends pinned, so the m-th envelope is

    u_m(x) = N sin(m pi (x + l) / (2 l)),   N = sqrt(C_sigma / (l C_0))

which makes odd modes antinodal and even modes nodal at the line center.
The normalization is fixed by the capacitance-weighted orthogonality
integral C_0 <u_m u_n> = C_sigma delta_mn.
"""

from __future__ import annotations

import math

import numpy as np

from .params import CircuitParams, derive_capacitances


def mode_frequency(m: int, params: CircuitParams) -> float:
    """Angular frequency of standing-wave mode m (rad/s).

    omega_m = m pi / (2 l sqrt(L0 C0)), strictly increasing in m.
    """
    if m < 1:
        raise ValueError(f"mode index must be >= 1, got {m}")
    length = 2.0 * params.half_length_l
    return m * math.pi / (length * math.sqrt(params.l0 * params.c0))


def norm_constant(params: CircuitParams) -> float:
    caps = derive_capacitances(params)
    return math.sqrt(caps.c_sigma / (params.half_length_l * params.c0))


def mode_envelope(m: int, x: float, params: CircuitParams) -> float:
    """Dimensionless envelope u_m(x); vanishes at both line ends.

    Nodes that land on exactly representable fractions of the line (the
    ends, and the center for even m) return exactly 0 so that downstream
    decoupling identities hold to the last bit.
    """
    if m < 1:
        raise ValueError(f"mode index must be >= 1, got {m}")
    half_l = params.half_length_l
    if abs(x) > half_l:
        raise ValueError(f"x={x} outside the line [-{half_l}, {half_l}]")
    phase = m * (x + half_l) / (2.0 * half_l)  # node at every integer
    if phase == round(phase):
        return 0.0
    return norm_constant(params) * math.sin(math.pi * phase)


def orthonormality_check(m: int, n: int, params: CircuitParams,
                         quad_points: int = 2048) -> float:
    """|integral(C0 u_m u_n) / C_sigma - delta_mn| by composite Simpson.

    quad_points counts subintervals of the uniform grid and must be even
    and >= 64; the integrand is smooth, so Simpson converges fast.
    """
    if quad_points < 64:
        raise ValueError("quad_points must be >= 64")
    half_l = params.half_length_l
    caps = derive_capacitances(params)
    npts = quad_points + (quad_points % 2)  # Simpson needs an even count
    x = np.linspace(-half_l, half_l, npts + 1)
    nrm = norm_constant(params)
    um = nrm * np.sin(m * np.pi * (x + half_l) / (2 * half_l))
    un = nrm * np.sin(n * np.pi * (x + half_l) / (2 * half_l))
    integral = _simpson(params.c0 * um * un, x[1] - x[0])
    delta = 1.0 if m == n else 0.0
    return abs(integral / caps.c_sigma - delta)


def gradient_orthogonality_check(m: int, n: int, params: CircuitParams,
                                 quad_points: int = 2048) -> float:
    """Residual of the derivative orthogonality relation.

    Checks integral((1/L0) u_m' u_n') / C_sigma against omega_m^2 delta_mn,
    returned as a relative residual (scaled by omega_m omega_n).
    """
    if quad_points < 64:
        raise ValueError("quad_points must be >= 64")
    half_l = params.half_length_l
    caps = derive_capacitances(params)
    npts = quad_points + (quad_points % 2)
    x = np.linspace(-half_l, half_l, npts + 1)
    nrm = norm_constant(params)
    km = m * np.pi / (2 * half_l)
    kn = n * np.pi / (2 * half_l)
    dum = nrm * km * np.cos(km * (x + half_l))
    dun = nrm * kn * np.cos(kn * (x + half_l))
    integral = _simpson(dum * dun / params.l0, x[1] - x[0])
    target = mode_frequency(m, params) ** 2 if m == n else 0.0
    scale = mode_frequency(m, params) * mode_frequency(n, params)
    return abs(integral / caps.c_sigma - target) / scale


def interior_node_count(m: int, params: CircuitParams, grid: int = 10000) -> int:
    """Count sign changes of u_m strictly inside the line; equals m - 1."""
    half_l = params.half_length_l
    x = np.linspace(-half_l, half_l, grid)[1:-1]
    u = norm_constant(params) * np.sin(m * np.pi * (x + half_l) / (2 * half_l))
    signs = np.sign(u)
    return int(np.sum(signs[1:] * signs[:-1] < 0))


def _simpson(y: np.ndarray, dx: float) -> float:
    weights = np.ones_like(y)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return float(np.dot(weights, y) * dx / 3.0)
