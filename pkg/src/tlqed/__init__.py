"""Quantum-circuit observables of a transmon embedded in a transmission line.

Public surface: circuit parameters and validation, line-mode functions,
per-mode coupling constants, the truncated product-space Hamiltonian and
its eigensolver, spectral observables, strong-field and fluctuation
dynamics, the photon-number/entanglement chain, and the sweep engine.
"""

from .params import (CircuitParams, DetuningSpec, DerivedCapacitances,
                     ValidationReport, RegimeError, AlphaUnitarityError,
                     InstabilityError, NegativePhotonNumberError,
                     NewtonConvergenceError, DegenerateSpectrumError,
                     HarmonicDegeneracyError, ConfigError, ResourceLimitError,
                     E_CHARGE, HBAR, TWO_PI,
                     validate, derive_capacitances, energy_to_angular,
                     angular_to_energy, replace_params)
from .tl_modes import (mode_frequency, mode_envelope, orthonormality_check,
                       gradient_orthogonality_check, interior_node_count)
from .coupling import (CouplingConstants, alpha, beta, gamma_coupling,
                       charging_energy_mode, transmon_frequency, build_coupling)
from .fock import (TruncationSpec, ladder, embed, quartic_matrix,
                   assemble_hamiltonian, interaction_split, convergence_check,
                   basis_occupations, hermiticity_residual, matrix_to_json)
from .jacobi import hermitian_eigs, eigenvalues_by_charpoly
from .spectrum import (SpectrumResult, energy_levels, anharmonicity,
                       min_pulse_duration, detuning_set, closed_form_energy,
                       decoupled_closed_form_levels, track_labels)
from .langevin import (DriveSpec, SteadyStateFields, ModifiedRates,
                       strong_field_steady_state, kerr_rate, modified_decay,
                       drift_matrix, linear_steady_covariance,
                       steady_moments_exact, sde_moment_oracle)
from .entanglement import (EntanglementReport, photon_numbers,
                           output_photon_numbers, cross_correlation,
                           entanglement_metric, closure_residual)
from .pipeline import PointResult, resolve_drive, evaluate_point
from .sweep import SweepAxis, SweepGrid, OBSERVABLES, run_sweep
from .config import (RunConfig, load_config, save_config, config_from_dict,
                     config_to_dict)

__version__ = "0.1.0"
