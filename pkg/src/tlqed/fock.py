"""Truncated product-space Hamiltonian of the line modes and the transmon.

The register order is [mode 1, ..., mode M, transmon]; operators act on the
full space through identity padding (Kronecker products). All entries are
angular (rad/s).

The transmon quartic is built by explicit matrix multiplication of
(b + b^dag) and then, by default, projected onto its number-conserving
diagonal. The diagonal equals 6n^2 + 6n + 3 exactly for every level at
least two below the cutoff, which keeps the diagonalized decoupled
spectrum on the closed-form ladder; "full" retains the number-changing
entries for diagnostics and "none" drops the quartic entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coupling import CouplingConstants
from .params import CircuitParams, ResourceLimitError

MAX_DIMENSION = 4096

QUARTIC_MODES = ("diagonal", "full", "none")


@dataclass(frozen=True)
class TruncationSpec:
    n_tl_modes: int = 2
    tl_photon_cutoff: int = 4
    transmon_levels: int = 4

    def __post_init__(self):
        if min(self.n_tl_modes, self.tl_photon_cutoff, self.transmon_levels) < 1:
            raise ValueError("truncation sizes must be >= 1")
        if self.dimension > MAX_DIMENSION:
            raise ResourceLimitError(
                f"product dimension {self.dimension} exceeds {MAX_DIMENSION}")

    @property
    def dimension(self) -> int:
        return self.tl_photon_cutoff ** self.n_tl_modes * self.transmon_levels


def ladder(cutoff: int) -> np.ndarray:
    """Annihilation operator on a cutoff-dimensional Fock space."""
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    a = np.zeros((cutoff, cutoff), dtype=complex)
    for i in range(1, cutoff):
        a[i - 1, i] = np.sqrt(i)
    return a


def embed(op: np.ndarray, slot: int, dims: list[int]) -> np.ndarray:
    """Pad op with identities so it acts on register `slot` of the product."""
    out = np.eye(1, dtype=complex)
    for k, d in enumerate(dims):
        out = np.kron(out, op if k == slot else np.eye(d, dtype=complex))
    return out


def quartic_matrix(levels: int, mode: str = "diagonal") -> np.ndarray:
    """(b + b^dag)^4 on a truncated space, per the selected treatment."""
    if mode not in QUARTIC_MODES:
        raise ValueError(f"quartic mode must be one of {QUARTIC_MODES}")
    if mode == "none":
        return np.zeros((levels, levels), dtype=complex)
    if levels < 2:
        # a single retained level has <0|x^4|0> = 0 after truncation
        return np.zeros((1, 1), dtype=complex)
    b = ladder(levels)
    x = b + b.conj().T
    q = x @ x @ x @ x
    if mode == "diagonal":
        q = np.diag(np.diag(q))
    return q


def basis_occupations(trunc: TruncationSpec) -> list[tuple[tuple[int, ...], int]]:
    """Product-basis bookkeeping: index -> (TL occupations, transmon level)."""
    out = []
    cut, t = trunc.tl_photon_cutoff, trunc.transmon_levels
    for idx in range(trunc.dimension):
        rem, n = divmod(idx, t)
        occs = []
        for _ in range(trunc.n_tl_modes):
            rem, k = divmod(rem, cut)
            occs.append(k)
        out.append((tuple(reversed(occs)), n))
    return out


def assemble_hamiltonian(cc: list[CouplingConstants], trunc: TruncationSpec,
                         params: CircuitParams, quartic: str = "diagonal",
                         ecm_mode_index: int = 1) -> np.ndarray:
    """Dense Hermitian Hamiltonian over the truncated product space (rad/s).

    One CouplingConstants per line mode, in mode order. The transmon
    self-energy carries the charging energy renormalized by the mode
    selected by ecm_mode_index (1-based position in cc).
    """
    if len(cc) != trunc.n_tl_modes:
        raise ValueError("need one CouplingConstants per line mode")
    if not (1 <= ecm_mode_index <= len(cc)):
        raise ValueError("ecm_mode_index outside the supplied mode list")
    dims = [trunc.tl_photon_cutoff] * trunc.n_tl_modes + [trunc.transmon_levels]
    dim = trunc.dimension

    t = trunc.transmon_levels
    b = ladder(t) if t >= 2 else np.zeros((1, 1), dtype=complex)
    b_num = b.conj().T @ b
    b_drive = b - b.conj().T

    e_cm = cc[ecm_mode_index - 1].e_cm
    e_j = params.ej_ang
    h_transmon = (np.sqrt(8.0 * e_cm * e_j) * (b_num + 0.5 * np.eye(t))
                  - (e_cm / 12.0) * quartic_matrix(t, quartic)
                  - e_j * np.eye(t))

    h = embed(h_transmon, trunc.n_tl_modes, dims)
    for k, c in enumerate(cc):
        cut = trunc.tl_photon_cutoff
        a = ladder(cut) if cut >= 2 else np.zeros((1, 1), dtype=complex)
        num = a.conj().T @ a
        h += c.omega_m * embed(num + 0.5 * np.eye(cut), k, dims)
        if c.gamma_m != 0.0:
            coupling_term = embed(a - a.conj().T, k, dims) @ embed(
                b_drive, trunc.n_tl_modes, dims)
            h += c.gamma_m * coupling_term
    if h.shape != (dim, dim):
        raise RuntimeError("assembled dimension mismatch")
    return h


def interaction_split(cc: CouplingConstants, trunc: TruncationSpec):
    """Split the mode-transmon coupling into its two interaction classes.

    (a - a^dag)(b - b^dag) = (a b + a^dag b^dag) - (a b^dag + a^dag b); the
    first block creates and destroys excitation pairs (amplification), the
    second exchanges single excitations (beam splitter). Returns the
    largest matrix-element magnitude of each block on a single-mode product
    space plus the two named single-element pairings.
    """
    cut, t = trunc.tl_photon_cutoff, trunc.transmon_levels
    dims = [cut, t]
    a = embed(ladder(cut), 0, dims) if cut >= 2 else np.zeros((t, t), complex)
    b = embed(ladder(t), 1, dims) if t >= 2 else np.zeros((cut, cut), complex)
    g = cc.gamma_m
    bs = g * (-a @ b.conj().T - a.conj().T @ b)
    amp = g * (a @ b + a.conj().T @ b.conj().T)

    def elem(op, bra, ket):
        i = bra[0] * t + bra[1]
        j = ket[0] * t + ket[1]
        return complex(op[i, j])

    pairings = {}
    if cut >= 2 and t >= 2:
        # one line photon exchanged with the first transmon excitation
        pairings["exchange_tl1_t1"] = elem(bs, (0, 1), (1, 0))
    if cut >= 2 and t >= 4:
        # pair creation linking one line photon with the third transmon level
        pairings["pair_tl1_t3"] = elem(amp, (1, 3), (0, 2))
    return {
        "bs_norm": float(np.max(np.abs(bs))),
        "amp_norm": float(np.max(np.abs(amp))),
        "pairings": pairings,
    }


def convergence_check(cc: list[CouplingConstants], trunc: TruncationSpec,
                      params: CircuitParams, quartic: str = "diagonal",
                      flag_threshold: float = 1e-6) -> dict:
    """Sensitivity of the low spectrum to the line photon cutoff.

    Recomputes the lowest transmon_levels + 2 eigenvalues with the cutoff
    raised by two and reports the maximum relative shift.
    """
    from .jacobi import hermitian_eigs

    n_low = trunc.transmon_levels + 2
    levels = {}
    for cutoff in (trunc.tl_photon_cutoff, trunc.tl_photon_cutoff + 2):
        tr = TruncationSpec(trunc.n_tl_modes, cutoff, trunc.transmon_levels)
        h = assemble_hamiltonian(cc, tr, params, quartic=quartic)
        w, _ = hermitian_eigs(h)
        levels[cutoff] = w[:n_low]
    base = levels[trunc.tl_photon_cutoff]
    refined = levels[trunc.tl_photon_cutoff + 2]
    scale = max(float(np.max(np.abs(refined))), 1.0)
    shift = float(np.max(np.abs(base - refined))) / scale
    return {
        "max_relative_shift": shift,
        "flagged": shift > flag_threshold,
        "levels_at_cutoff": base,
        "levels_at_cutoff_plus_2": refined,
    }


def hermiticity_residual(h: np.ndarray) -> float:
    scale = float(np.max(np.abs(h)))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(h - h.conj().T))) / scale


def matrix_to_json(h: np.ndarray) -> list[list[list[float]]]:
    """Row-major debug representation with [re, im] entry pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(h)]
