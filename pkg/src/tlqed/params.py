"""Circuit parameters, unit conventions, derived capacitances.

Unit conventions used by every module in this package:

  * capacitances in F, lengths in m, line constants in F/m and H/m
  * the charging and junction energies enter a configuration as ordinary
    frequencies E/h in Hz (``e_c``, ``e_j``) and are converted exactly once
    to angular units (rad/s) via ``energy_to_angular``
  * all rates and detunings (``kappa_m``, ``kappa_n``, ``drive_amplitude``,
    ``delta_m``, ``delta_n``) are angular, rad/s

The elementary charge and hbar enter the computation only inside the
transmon coupling rate (see ``coupling.gamma_coupling``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace

E_CHARGE = 1.602176634e-19  # C
HBAR = 1.054571817e-34      # J s
TWO_PI = 2.0 * math.pi

# Known selectors for transition-derived detunings: "43_32" means
# (omega_43 - omega_32) with 1-based ascending level labels.
DETUNING_PAIRS = ("43_32", "21_32", "32_43", "31_42")


class RegimeError(Exception):
    """Parameter regime outside the validity of the implemented model.

    Raised per evaluation point; sweep grids catch these and mask the
    point with an error code instead of aborting.
    """

    code = "regime"


class AlphaUnitarityError(RegimeError):
    """|alpha_m| >= 1: ultra-strong normalization breakdown."""

    code = "alpha_unitarity"


class InstabilityError(RegimeError):
    """Linearized fluctuation dynamics unstable (includes b1 <= 0)."""

    code = "instability"


class NegativePhotonNumberError(RegimeError):
    """Photon-number closure produced a negative occupation."""

    code = "negative_photon_number"


class NewtonConvergenceError(RegimeError):
    """Strong-field Newton iteration failed to converge."""

    code = "newton_nonconvergence"


class DegenerateSpectrumError(RegimeError):
    """A transition frequency needed by the observable vanished."""

    code = "degenerate_spectrum"


class HarmonicDegeneracyError(RegimeError):
    """alpha_r = 0: minimum pulse duration is unbounded."""

    code = "harmonic_degenerate"


class ResourceLimitError(Exception):
    """Requested truncation exceeds the supported dense-matrix size."""


class ConfigError(Exception):
    """Malformed run configuration (unknown key, bad type, bad value)."""


@dataclass(frozen=True)
class DetuningSpec:
    """How the drive detunings are obtained.

    mode "explicit": use delta_m / delta_n as given (rad/s).
    mode "from_transitions": derive both detunings from the spectrum at the
    evaluation point using the transition pair selector, e.g. "43_32" for
    (omega_43 - omega_32).
    """

    mode: str = "from_transitions"
    pair: str = "43_32"
    delta_m: float = 0.0
    delta_n: float = 0.0


@dataclass(frozen=True)
class CircuitParams:
    """All physical inputs of a run. Reference defaults follow the
    device values used throughout the shipped configurations."""

    c_g: float = 20e-15            # TL-to-island coupling capacitance (F)
    c_b: float = 40e-15            # island shunt capacitance (F)
    c_j: float = 2e-15             # junction capacitance (F)
    c0: float = 0.66e-12           # line capacitance per length (F/m)
    l0: float = 623e-9             # line inductance per length (H/m)
    half_length_l: float = 12.7e-3  # line spans [-l, +l] (m)
    c_in: float = 2e-15            # input coupling capacitance (F)
    e_c: float = 660e6             # charging energy E/h (Hz)
    e_j: float = 4.5e9             # junction energy E/h (Hz)
    x_j: float = 0.0               # junction position (m)
    kappa_m: float = TWO_PI * 10e6  # TL decay rate (rad/s)
    kappa_n: float = TWO_PI * 1e6   # transmon decay rate (rad/s)
    n_ina: float = 0.0             # TL bath occupation
    n_inb: float = 0.0             # transmon bath occupation
    drive_amplitude: float = TWO_PI * 100e6  # |E_TL| (rad/s)
    drive_phase: float = 0.0       # rad
    detuning_mode: DetuningSpec = field(default_factory=DetuningSpec)

    @property
    def ec_ang(self) -> float:
        """Charging energy in angular units (rad/s)."""
        return energy_to_angular(self.e_c)

    @property
    def ej_ang(self) -> float:
        """Junction energy in angular units (rad/s)."""
        return energy_to_angular(self.e_j)


@dataclass(frozen=True)
class DerivedCapacitances:
    c_big_g: float  # c_g + c_j + c_b (F)
    c_sigma: float  # 2*l*c0 + c_big_g (F)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def energy_to_angular(freq_hz: float) -> float:
    """Hz (E/h) -> rad/s (E/hbar)."""
    return TWO_PI * freq_hz


def angular_to_energy(omega: float) -> float:
    """rad/s -> Hz. Inverse of energy_to_angular to within 1 ulp."""
    return omega / TWO_PI


def validate(params: CircuitParams) -> ValidationReport:
    """Check every invariant of a run configuration.

    Returns a report carrying the violated invariants by field name;
    never raises and never mutates the input.
    """
    v: list[str] = []
    for name in ("c_g", "c_b", "c_j", "c_in", "c0", "l0", "half_length_l",
                 "e_c", "e_j", "kappa_m", "kappa_n"):
        value = getattr(params, name)
        if not math.isfinite(value) or value <= 0.0:
            v.append(f"{name} must be positive")
    for name in ("n_ina", "n_inb", "drive_amplitude"):
        value = getattr(params, name)
        if not math.isfinite(value) or value < 0.0:
            v.append(f"{name} must be >= 0")
    if not math.isfinite(params.drive_phase):
        v.append("drive_phase must be finite")
    if not math.isfinite(params.x_j) or abs(params.x_j) > params.half_length_l:
        v.append("x_j outside line")
    det = params.detuning_mode
    if det.mode not in ("explicit", "from_transitions"):
        v.append("detuning_mode.mode must be 'explicit' or 'from_transitions'")
    elif det.mode == "from_transitions" and det.pair not in DETUNING_PAIRS:
        v.append(f"detuning_mode.pair must be one of {DETUNING_PAIRS}")
    if not (math.isfinite(det.delta_m) and math.isfinite(det.delta_n)):
        v.append("detuning values must be finite")
    return ValidationReport(v)


def derive_capacitances(params: CircuitParams) -> DerivedCapacitances:
    """Total island capacitance and total line capacitance."""
    c_big_g = params.c_g + params.c_j + params.c_b
    c_sigma = 2.0 * params.half_length_l * params.c0 + c_big_g
    return DerivedCapacitances(c_big_g=c_big_g, c_sigma=c_sigma)


def replace_params(params: CircuitParams, **kwargs) -> CircuitParams:
    """Functional update; unknown names are a hard error."""
    known = {f.name for f in fields(CircuitParams)}
    for key in kwargs:
        if key not in known:
            raise ConfigError(f"unknown parameter '{key}'")
    return replace(params, **kwargs)


# Dimensional bookkeeping for every derived quantity that leaves this
# package. Consumed by the test suite as an assertion list; the runtime
# carries plain floats.
UNIT_TABLE = {
    "c_big_g": "F",
    "c_sigma": "F",
    "omega_m": "rad/s",
    "mode_envelope": "1",
    "alpha_m": "1",
    "beta_m": "rad s^-1 F^-1/2",
    "gamma_m": "rad/s",
    "e_cm": "rad/s",
    "omega_n_transmon": "rad/s",
    "hamiltonian": "rad/s",
    "energy_level": "rad/s",
    "transition": "rad/s",
    "alpha_r": "1",
    "tau_p": "s",
    "kappa_n_prime": "rad/s",
    "purcell_term": "rad/s",
    "gamma_n_kerr": "rad/s",
    "strong_field": "1",
    "n_tl": "1",
    "n_t": "1",
    "n_otl": "rad/s",   # 2*kappa*n convention, bath term added as a number
    "n_ot": "rad/s",
    "d_mm": "rad/s",
    "epsilon_e": "1",
}
