"""Energy levels, transitions, anharmonicity, and pulse-duration limits.

Physical energies come from diagonalizing the assembled Hamiltonian.
Levels are labeled E_1, E_2, ... ascending; across sweeps the labels are
carried by eigenvector overlap so that curves keep their identity through
crossings. The closed-form diagonal energy is kept as an independent
cross-check of the decoupled spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coupling import CouplingConstants, build_coupling
from .fock import TruncationSpec, assemble_hamiltonian, basis_occupations
from .jacobi import hermitian_eigs
from .params import (CircuitParams, DegenerateSpectrumError,
                     HarmonicDegeneracyError, replace_params)

TRACK_DEPTH = 8  # eigenvectors kept per point for overlap tracking

DETUNING_LABELS = {
    "21_32": ((2, 1), (3, 2)),
    "32_43": ((3, 2), (4, 3)),
    "43_32": ((4, 3), (3, 2)),
    "31_42": ((3, 1), (4, 2)),
}


@dataclass
class SpectrumResult:
    levels: np.ndarray                  # ascending label order, rad/s
    vectors: np.ndarray                 # first TRACK_DEPTH eigenvector columns
    transitions: dict = field(default_factory=dict)  # (i, j) -> E_i - E_j
    alpha_r: float | None = None
    tau_p: float | None = None

    def omega(self, i: int, j: int) -> float:
        """Transition frequency omega_ij = E_i - E_j (1-based labels)."""
        return float(self.levels[i - 1] - self.levels[j - 1])


def energy_levels(params: CircuitParams, trunc: TruncationSpec,
                  x_j: float | None = None, ej_over_ec: float | None = None,
                  quartic: str = "diagonal", solver: str = "jacobi",
                  n_labeled: int = 4) -> SpectrumResult:
    """Diagonalize the coupled system at one parameter point.

    x_j and ej_over_ec override the corresponding base parameters
    (ej_over_ec scales e_j while e_c stays at its configured value).
    """
    p = params
    if x_j is not None:
        p = replace_params(p, x_j=x_j)
    if ej_over_ec is not None:
        if ej_over_ec <= 0:
            raise ValueError("ej_over_ec must be positive")
        p = replace_params(p, e_j=ej_over_ec * p.e_c)
    cc = [build_coupling(m, p.x_j, p) for m in range(1, trunc.n_tl_modes + 1)]
    h = assemble_hamiltonian(cc, trunc, p, quartic=quartic)
    w, v = diagonalize(h, solver)
    res = SpectrumResult(levels=w, vectors=v[:, :TRACK_DEPTH])
    fill_derived(res, n_labeled=n_labeled)
    return res


def diagonalize(h: np.ndarray, solver: str = "jacobi"):
    if solver == "jacobi":
        return hermitian_eigs(h)
    if solver == "lapack":
        w, v = np.linalg.eigh(h)
        return w, v
    raise ValueError(f"unknown solver '{solver}'")


def fill_derived(res: SpectrumResult, n_labeled: int = 4) -> None:
    """Populate transitions and the anharmonicity-derived quantities."""
    n = min(n_labeled, len(res.levels))
    res.transitions = {
        (i, j): res.omega(i, j)
        for i in range(1, n + 1) for j in range(1, n + 1) if i != j
    }
    if n >= 3:
        try:
            res.alpha_r = anharmonicity(res)
            res.tau_p = min_pulse_duration(res)
        except (DegenerateSpectrumError, HarmonicDegeneracyError):
            pass


def anharmonicity(spectrum: SpectrumResult) -> float:
    """Relative anharmonicity (omega_32 - omega_21) / omega_21."""
    if len(spectrum.levels) < 3:
        raise ValueError("need at least three levels")
    w21 = spectrum.omega(2, 1)
    if w21 == 0.0:
        raise DegenerateSpectrumError("omega_21 = 0")
    return (spectrum.omega(3, 2) - w21) / w21


def min_pulse_duration(spectrum: SpectrumResult) -> float:
    """Shortest control pulse compatible with addressing one transition.

    tau_p = 1 / |omega_21 alpha_r|; an exactly harmonic ladder has no
    finite answer and raises HarmonicDegeneracyError.
    """
    a_r = anharmonicity(spectrum)
    if a_r == 0.0:
        raise HarmonicDegeneracyError("harmonic spectrum: alpha_r = 0")
    return 1.0 / abs(spectrum.omega(2, 1) * a_r)


def detuning_set(spectrum: SpectrumResult) -> dict[str, float]:
    """Labeled transition differences used as drive detunings (rad/s)."""
    if len(spectrum.levels) < 4:
        raise ValueError("need at least four levels")
    out = {}
    for label, ((i1, j1), (i2, j2)) in DETUNING_LABELS.items():
        out[label] = spectrum.omega(i1, j1) - spectrum.omega(i2, j2)
    return out


def closed_form_energy(m_occupations, n_level: int,
                       cc: list[CouplingConstants], params: CircuitParams,
                       ecm_mode_index: int = 1) -> float:
    """Diagonal closed-form energy of a product basis state (rad/s).

    Sum of the line oscillator terms, the transmon ladder with its quartic
    diagonal 6n^2 + 6n + 3, and the junction-energy offset. Matches the
    diagonalized decoupled spectrum for transmon levels far enough below
    the cutoff.
    """
    if len(m_occupations) != len(cc):
        raise ValueError("one occupation per line mode")
    e_cm = cc[ecm_mode_index - 1].e_cm
    e_j = params.ej_ang
    n = n_level
    energy = sum(c.omega_m * (k + 0.5) for k, c in zip(m_occupations, cc))
    energy += np.sqrt(8.0 * e_cm * e_j) * (n + 0.5)
    energy -= (e_cm / 12.0) * (6.0 * n * n + 6.0 * n + 3.0)
    energy -= e_j
    return float(energy)


def decoupled_closed_form_levels(cc: list[CouplingConstants],
                                 trunc: TruncationSpec,
                                 params: CircuitParams,
                                 ecm_mode_index: int = 1):
    """Closed-form energies of every basis state, with bookkeeping.

    Returns (energies, occupations) in product-basis order; sorting the
    energies reproduces the decoupled diagonalized spectrum.
    """
    occ = basis_occupations(trunc)
    energies = np.array([
        closed_form_energy(m_occs, n, cc, params, ecm_mode_index)
        for m_occs, n in occ
    ])
    return energies, occ


def track_labels(prev_vectors: np.ndarray, new_vectors: np.ndarray) -> np.ndarray:
    """Greedy overlap assignment from previous labels to new columns.

    Returns perm such that new column perm[k] continues previous label k.
    """
    overlap = np.abs(prev_vectors.conj().T @ new_vectors)
    k = overlap.shape[0]
    perm = np.full(k, -1, dtype=int)
    taken_rows = np.zeros(k, dtype=bool)
    taken_cols = np.zeros(overlap.shape[1], dtype=bool)
    work = overlap.copy()
    for _ in range(k):
        idx = int(np.argmax(np.where(taken_rows[:, None] | taken_cols[None, :],
                                     -1.0, work)))
        r, c = divmod(idx, work.shape[1])
        perm[r] = c
        taken_rows[r] = True
        taken_cols[c] = True
    return perm
