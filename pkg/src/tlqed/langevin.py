"""Strong-field steady state, Purcell-modified decay, and the stochastic
moment oracle for the linearized fluctuation dynamics.

Strong field: with one line mode retained, the steady state of the driven
nonlinear equations

    0 = -(j d_m + k_m/2) A + j g (B - B*) + E
    0 = -(j d_n + k_n/2) B + j g (A - A*) + j (E_cm/3) (B + B*)^3

is found by Newton iteration on the four real field components with
continuation in the drive amplitude, starting from the cubic-free linear
solution; the branch returned is the one continuously connected to zero
drive. The drive term E enters the line-mode equation; without it the
undriven fixed point A = B = 0 is the only solution.

Fluctuations: the linearized equations around (A, B) gain the Kerr-like
rate gamma_N = E_cm Re(B)^2 / 3 (angular units, E_cm already divided by
hbar). Their steady covariance is available two ways: exactly, from the
16-dimensional linear (Lyapunov) system, and stochastically, from seeded
Euler-Maruyama trajectories. The c-number noise convention is symmetric
ordering: each complex white noise has strength kappa (n_in + 1/2), and
occupations are means of |field|^2 minus the half-quantum offset, so a
decoupled thermal mode relaxes to exactly n_in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coupling import CouplingConstants
from .params import (CircuitParams, InstabilityError, NewtonConvergenceError)


@dataclass(frozen=True)
class DriveSpec:
    amplitude: float = 0.0   # |E| (rad/s)
    phase: float = 0.0       # rad
    delta_m: float = 0.0     # line-mode detuning (rad/s)
    delta_n: float = 0.0     # transmon detuning (rad/s)

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("drive amplitude must be >= 0")


@dataclass(frozen=True)
class SteadyStateFields:
    a_big: complex          # line-mode strong field
    b_big: complex          # transmon strong field
    gamma_n_kerr: float     # rad/s
    residual: float         # max equation residual scaled by the drive
    bistable: bool = False  # continuation step sizes disagreed


@dataclass(frozen=True)
class ModifiedRates:
    kappa_n_prime: float    # rad/s
    purcell_term: float     # rad/s


def modified_decay(cc: CouplingConstants, drive: DriveSpec,
                   params: CircuitParams) -> ModifiedRates:
    """Transmon decay rate modified by the line coupling.

    purcell_term = 4 k_m g^2 / (4 d_m^2 + k_m^2); the modified rate is
    kappa_n/2 plus this term.
    """
    if params.kappa_m <= 0:
        raise ValueError("kappa_m must be positive")
    g = cc.gamma_m
    k_m = params.kappa_m
    purcell = 4.0 * k_m * g * g / (4.0 * drive.delta_m ** 2 + k_m * k_m)
    return ModifiedRates(kappa_n_prime=0.5 * params.kappa_n + purcell,
                         purcell_term=purcell)


def kerr_rate(b_big: complex, cc: CouplingConstants) -> float:
    """gamma_N = E_cm Re(B)^2 / 3 in rad/s; quadratic in Re(B), never negative."""
    re_b = b_big.real
    return cc.e_cm * re_b * re_b / 3.0


def _residual(z: np.ndarray, g: float, e_cm: float, drive: DriveSpec,
              params: CircuitParams) -> np.ndarray:
    re_a, im_a, re_b, im_b = z
    e_re = drive.amplitude * math.cos(drive.phase)
    e_im = drive.amplitude * math.sin(drive.phase)
    k_m2, k_n2 = 0.5 * params.kappa_m, 0.5 * params.kappa_n
    d_m, d_n = drive.delta_m, drive.delta_n
    cubic = (8.0 * e_cm / 3.0) * re_b ** 3
    return np.array([
        e_re - k_m2 * re_a + d_m * im_a - 2.0 * g * im_b,
        e_im - d_m * re_a - k_m2 * im_a,
        -k_n2 * re_b + d_n * im_b - 2.0 * g * im_a,
        -d_n * re_b - k_n2 * im_b + cubic,
    ])


def _jacobian(z: np.ndarray, g: float, e_cm: float, drive: DriveSpec,
              params: CircuitParams) -> np.ndarray:
    re_b = z[2]
    k_m2, k_n2 = 0.5 * params.kappa_m, 0.5 * params.kappa_n
    d_m, d_n = drive.delta_m, drive.delta_n
    return np.array([
        [-k_m2, d_m, 0.0, -2.0 * g],
        [-d_m, -k_m2, 0.0, 0.0],
        [0.0, -2.0 * g, -k_n2, d_n],
        [0.0, 0.0, -d_n + 8.0 * e_cm * re_b ** 2, -k_n2],
    ])


def _linear_seed(g: float, drive: DriveSpec, params: CircuitParams) -> np.ndarray:
    """Exact solution of the cubic-free linear system."""
    e_re = drive.amplitude * math.cos(drive.phase)
    e_im = drive.amplitude * math.sin(drive.phase)
    k_m2, k_n2 = 0.5 * params.kappa_m, 0.5 * params.kappa_n
    d_m, d_n = drive.delta_m, drive.delta_n
    # Solve the four linear equations directly.
    mat = np.array([
        [-k_m2, d_m, 0.0, -2.0 * g],
        [-d_m, -k_m2, 0.0, 0.0],
        [0.0, -2.0 * g, -k_n2, d_n],
        [0.0, 0.0, -d_n, -k_n2],
    ])
    rhs = -np.array([e_re, e_im, 0.0, 0.0])
    return np.linalg.solve(mat, rhs)


def strong_field_steady_state(cc: CouplingConstants, drive: DriveSpec,
                              params: CircuitParams, n_steps: int = 8,
                              max_iter: int = 100,
                              tol: float = 1e-12) -> SteadyStateFields:
    """Drive-connected steady state by Newton continuation in the amplitude.

    Runs the continuation at n_steps and 2 n_steps amplitude increments;
    disagreement beyond 1e-6 between the two end points raises the
    bistability flag on the returned (finer) solution.
    """
    if params.kappa_m <= 0 or params.kappa_n <= 0:
        raise ValueError("decay rates must be positive")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if drive.amplitude == 0.0:
        return SteadyStateFields(0j, 0j, 0.0, 0.0)

    g, e_cm = cc.gamma_m, cc.e_cm
    scale = max(drive.amplitude, params.kappa_m, params.kappa_n,
                abs(drive.delta_m), abs(drive.delta_n))
    # converge against the drive scale so the drive-relative residual stays
    # tight, but never below the rounding floor of the dominant rate
    tol_abs = max(tol * drive.amplitude, 64 * np.finfo(float).eps * scale)

    def run(steps: int) -> np.ndarray:
        z = np.zeros(4)
        for k in range(1, steps + 1):
            amp = drive.amplitude * k / steps
            d_k = DriveSpec(amp, drive.phase, drive.delta_m, drive.delta_n)
            if k == 1:
                z = _linear_seed(g, d_k, params)
            for it in range(max_iter):
                f = _residual(z, g, e_cm, d_k, params)
                if np.max(np.abs(f)) <= tol_abs:
                    break
                jac = _jacobian(z, g, e_cm, d_k, params)
                try:
                    step = np.linalg.solve(jac, -f)
                except np.linalg.LinAlgError as exc:
                    raise NewtonConvergenceError(
                        f"singular Jacobian at step {k}: {exc}") from exc
                # backtracking keeps the iteration on the connected branch
                lam = 1.0
                f0 = np.max(np.abs(f))
                for _ in range(40):
                    z_try = z + lam * step
                    if np.max(np.abs(_residual(z_try, g, e_cm, d_k, params))) < f0:
                        break
                    lam *= 0.5
                z = z + lam * step
            else:
                raise NewtonConvergenceError(
                    f"no convergence after {max_iter} iterations at "
                    f"continuation step {k}/{steps}, amplitude {amp:.3e}")
        return z

    z_coarse = run(n_steps)
    z_fine = run(2 * n_steps)
    denom = max(1.0, float(np.max(np.abs(z_fine))))
    bistable = bool(np.max(np.abs(z_fine - z_coarse)) / denom > 1e-6)

    a_big = complex(z_fine[0], z_fine[1])
    b_big = complex(z_fine[2], z_fine[3])
    res = float(np.max(np.abs(_residual(z_fine, g, e_cm, drive, params))) /
                max(drive.amplitude, 1e-300))
    return SteadyStateFields(a_big, b_big, kerr_rate(b_big, cc), res, bistable)


def drift_matrix(gamma_m: float, gamma_n: float, drive: DriveSpec,
                 params: CircuitParams) -> np.ndarray:
    """Drift of the linearized fluctuations over (da, da*, db, db*)."""
    a0 = 1j * drive.delta_m + 0.5 * params.kappa_m
    b0 = 1j * drive.delta_n + 0.5 * params.kappa_n
    jg = 1j * gamma_m
    jn = 1j * gamma_n
    return np.array([
        [-a0, 0.0, jg, -jg],
        [0.0, -np.conj(a0), jg, -jg],
        [jg, -jg, -b0 + jn, jn],
        [jg, -jg, -jn, -np.conj(b0) - jn],
    ], dtype=complex)


def drift_stable(m: np.ndarray, margin: float = 0.0) -> bool:
    return bool(np.max(np.linalg.eigvals(m).real) < -margin)


def linear_steady_covariance(gamma_m: float, gamma_n: float, drive: DriveSpec,
                             params: CircuitParams) -> np.ndarray:
    """Exact stationary covariance <u u^dag> of the linearized dynamics.

    u = (da, da*, db, db*) with symmetric-ordering noise strengths
    kappa (n_in + 1/2) per mode. Solves M C + C M^dag + D = 0 by
    vectorization. Raises InstabilityError when the drift is not Hurwitz.
    """
    m = drift_matrix(gamma_m, gamma_n, drive, params)
    if not drift_stable(m):
        raise InstabilityError("linear fluctuation drift has an unstable mode")
    s_a = params.kappa_m * (params.n_ina + 0.5)
    s_b = params.kappa_n * (params.n_inb + 0.5)
    d = np.diag([s_a, s_a, s_b, s_b]).astype(complex)
    eye = np.eye(4)
    lhs = np.kron(eye, m) + np.kron(m.conj(), eye)
    c_vec = np.linalg.solve(lhs, -d.reshape(16, order="F"))
    return c_vec.reshape((4, 4), order="F")


def steady_moments_exact(gamma_m: float, gamma_n: float, drive: DriveSpec,
                         params: CircuitParams) -> tuple[float, float, complex]:
    """(n_a, n_b, <da db>) from the exact stationary covariance."""
    c = linear_steady_covariance(gamma_m, gamma_n, drive, params)
    return (float(c[0, 0].real) - 0.5, float(c[2, 2].real) - 0.5,
            complex(c[0, 3]))


def sde_moment_oracle(cc: CouplingConstants, drive: DriveSpec,
                      params: CircuitParams, seed: int, n_traj: int,
                      t_end: float, dt: float, gamma_n: float = 0.0,
                      burn_frac: float = 0.5, chunk: int = 500):
    """Seeded Euler-Maruyama estimates of the steady fluctuation moments.

    Integrates the linearized equations as c-number fields with
    symmetric-ordering white noise and returns time- and trajectory-
    averaged estimates of (n_tl, n_t, <da db>) with standard errors.
    Trajectory k draws its noise from a generator seeded with seed + k,
    so results are bitwise independent of chunking or thread schedule.
    """
    g = cc.gamma_m
    rate_scale = max(params.kappa_m, params.kappa_n, abs(drive.delta_m),
                     abs(drive.delta_n), abs(g), abs(gamma_n))
    if dt * rate_scale >= 0.1:
        raise ValueError("dt too coarse: dt * max rate must be < 0.1")
    if n_traj < 100:
        raise ValueError("n_traj must be >= 100")

    m = drift_matrix(g, gamma_n, drive, params)
    if not drift_stable(m):
        raise InstabilityError("linear fluctuation drift has an unstable mode")

    # 2x2 complex drift acting on (da, db) with the conjugate pair folded in
    a0 = 1j * drive.delta_m + 0.5 * params.kappa_m
    b0 = 1j * drive.delta_n + 0.5 * params.kappa_n
    sig_a = math.sqrt(params.kappa_m * (params.n_ina + 0.5) * 0.5)
    sig_b = math.sqrt(params.kappa_n * (params.n_inb + 0.5) * 0.5)

    n_steps = int(round(t_end / dt))
    burn = int(n_steps * burn_frac)
    if n_steps - burn < 8:
        raise ValueError("t_end leaves too few steps after burn-in")

    sum_na = np.zeros(n_traj)
    sum_nb = np.zeros(n_traj)
    sum_ab = np.zeros(n_traj, dtype=complex)

    sqdt = math.sqrt(dt)
    block = 1024  # noise drawn in fixed time blocks, stream order unchanged
    # fused one-step update constants
    ea = 1.0 - a0 * dt
    eb = 1.0 - b0 * dt
    fg = 1j * g * dt
    fn = 1j * gamma_n * dt
    na_sig = sig_a * sqdt
    nb_sig = sig_b * sqdt
    for start in range(0, n_traj, chunk):
        stop = min(start + chunk, n_traj)
        width = stop - start
        # one generator per trajectory: bitwise independent of chunking
        gens = [np.random.default_rng(seed + start + t) for t in range(width)]
        da = np.zeros(width, dtype=complex)
        db = np.zeros(width, dtype=complex)
        acc_na = np.zeros(width)
        acc_nb = np.zeros(width)
        acc_ab = np.zeros(width, dtype=complex)
        kept = 0
        noise = np.empty((width, block, 4))
        step = 0
        while step < n_steps:
            nb_steps = min(block, n_steps - step)
            for t_idx, gen in enumerate(gens):
                noise[t_idx, :nb_steps] = gen.standard_normal((nb_steps, 4))
            for k in range(nb_steps):
                zn = noise[:, k, :]
                db_c = np.conj(db)
                da_new = (ea * da + fg * (db - db_c)
                          + na_sig * (zn[:, 0] + 1j * zn[:, 1]))
                db = (eb * db + fg * (da - np.conj(da)) + fn * (db + db_c)
                      + nb_sig * (zn[:, 2] + 1j * zn[:, 3]))
                da = da_new
                if step + k >= burn:
                    acc_na += da.real ** 2 + da.imag ** 2
                    acc_nb += db.real ** 2 + db.imag ** 2
                    acc_ab += da * db
                    kept += 1
            step += nb_steps
        sum_na[start:stop] = acc_na / kept - 0.5
        sum_nb[start:stop] = acc_nb / kept - 0.5
        sum_ab[start:stop] = acc_ab / kept

    def mean_se(x):
        mean = x.mean()
        se = x.std(ddof=1) / math.sqrt(len(x))
        return float(mean), float(se)

    n_tl_est, se_tl = mean_se(sum_na)
    n_t_est, se_t = mean_se(sum_nb)
    cross_mean = complex(sum_ab.mean())
    se_cross = math.hypot(sum_ab.real.std(ddof=1), sum_ab.imag.std(ddof=1)) / math.sqrt(n_traj)
    return {
        "n_tl": n_tl_est, "n_t": n_t_est, "cross": cross_mean,
        "se_n_tl": se_tl, "se_n_t": se_t, "se_cross": float(se_cross),
        "n_steps": n_steps, "kept_steps": n_steps - burn,
    }
