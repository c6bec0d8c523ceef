"""Grid evaluation of registered observables over circuit parameters.

Points are pure functions of the configuration, so grids can be evaluated
serially or across processes (TLQED_WORKERS) with identical results.
Regime errors are recorded per point in the error mask and never abort a
grid. Level labels for spectrum observables are assigned in a
deterministic post-pass that follows eigenvector overlap along the
innermost axis, so parallel evaluation cannot change labeling.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coupling import build_coupling
from .fock import TruncationSpec
from .langevin import modified_decay, strong_field_steady_state
from .entanglement import entanglement_metric
from .params import (CircuitParams, ConfigError, RegimeError, TWO_PI,
                     replace_params)
from .pipeline import resolve_drive
from .spectrum import (TRACK_DEPTH, energy_levels, track_labels)

AXIS_NAMES = ("ej_over_ec", "x_position", "c_g", "mode_m", "drive_amplitude")

GHZ = TWO_PI * 1e9  # rad/s per GHz for reporting

# observable name -> (family, unit)
OBSERVABLES = {
    "e1": ("spectrum", "GHz"), "e2": ("spectrum", "GHz"),
    "e3": ("spectrum", "GHz"), "e4": ("spectrum", "GHz"),
    "de21": ("spectrum", "GHz"), "de31": ("spectrum", "GHz"),
    "de32": ("spectrum", "GHz"), "de41": ("spectrum", "GHz"),
    "de42": ("spectrum", "GHz"), "de43": ("spectrum", "GHz"),
    "alpha_r": ("spectrum", "1"), "tau_p": ("spectrum", "s"),
    "det_21_32": ("spectrum", "GHz"), "det_32_43": ("spectrum", "GHz"),
    "det_43_32": ("spectrum", "GHz"), "det_31_42": ("spectrum", "GHz"),
    "gamma_m": ("coupling", "GHz"),
    "kappa_n_prime": ("rates", "GHz"),
    "n_tl": ("entangle", "1"), "n_t": ("entangle", "1"),
    "n_otl": ("entangle", "rad/s"), "n_ot": ("entangle", "rad/s"),
    "d_mm_abs": ("entangle", "rad/s"), "epsilon_e": ("entangle", "1"),
    "gamma_n_kerr": ("entangle", "GHz"), "b1": ("entangle", "1"),
}


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ConfigError(f"unknown sweep axis '{self.name}'")
        if self.count < 1:
            raise ConfigError("axis count must be >= 1")
        if self.start > self.stop:
            raise ConfigError("axis start must be <= stop")
        if self.spacing != "linear":
            raise ConfigError("only linear spacing is supported")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass
class SweepGrid:
    axes: list[SweepAxis]
    observable: str
    values: np.ndarray            # flat, row-major over the axes
    error_mask: list[str]         # "" where the point evaluated cleanly
    unit: str = "1"

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(ax.count for ax in self.axes)


def run_sweep(params: CircuitParams, trunc: TruncationSpec,
              axes: list[SweepAxis], observables,
              mode_m: int = 1, solver: str = "lapack",
              quartic: str = "diagonal") -> dict[str, SweepGrid]:
    """Evaluate the requested observables over the axis product grid."""
    if isinstance(observables, str):
        observables = [observables]
    for name in observables:
        if name not in OBSERVABLES:
            raise ConfigError(f"unknown observable '{name}'")
    if not (1 <= len(axes) <= 3):
        raise ConfigError("sweeps support 1 to 3 axes")
    families = {OBSERVABLES[name][0] for name in observables}
    axis_values = [ax.values() for ax in axes]
    shape = tuple(ax.count for ax in axes)
    n_points = int(np.prod(shape))
    points = []
    for flat in range(n_points):
        idx = np.unravel_index(flat, shape)
        points.append({axes[k].name: float(axis_values[k][i])
                       for k, i in enumerate(idx)})

    args = [(params, trunc, mode_m, solver, quartic, ov, sorted(families))
            for ov in points]
    workers = int(os.environ.get("TLQED_WORKERS", "1") or "1")
    if workers > 1 and n_points > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(_evaluate_point, args,
                                chunksize=max(1, n_points // (workers * 4))))
    else:
        raw = [_evaluate_point(a) for a in args]

    track = None
    if "spectrum" in families:
        track = _tracking_pass(raw, shape)

    grids = {}
    for name in observables:
        vals = np.full(n_points, np.nan)
        mask = [""] * n_points
        for i, rec in enumerate(raw):
            value, err = _extract(name, rec, track[i] if track else None)
            vals[i] = value
            mask[i] = err
        grids[name] = SweepGrid(axes=list(axes), observable=name, values=vals,
                                error_mask=mask, unit=OBSERVABLES[name][1])
    return grids


def _apply_overrides(params: CircuitParams, overrides: dict) -> tuple[CircuitParams, int | None]:
    mode_m = None
    updates = {}
    for name, value in overrides.items():
        if name == "ej_over_ec":
            updates["e_j"] = value * params.e_c
        elif name == "x_position":
            updates["x_j"] = value
        elif name == "c_g":
            updates["c_g"] = value
        elif name == "drive_amplitude":
            updates["drive_amplitude"] = value
        elif name == "mode_m":
            mode_m = int(round(value))
        else:
            raise ConfigError(f"unknown axis '{name}'")
    return (replace_params(params, **updates) if updates else params), mode_m


def _evaluate_point(arg) -> dict:
    params, trunc, mode_m, solver, quartic, overrides, families = arg
    rec: dict = {"errors": {}}
    try:
        p, axis_mode = _apply_overrides(params, overrides)
    except RegimeError as exc:
        for fam in families:
            rec["errors"][fam] = exc.code
        return rec
    mode = axis_mode if axis_mode is not None else mode_m
    spectrum = None

    if "spectrum" in families:
        try:
            spectrum = energy_levels(p, trunc, solver=solver, quartic=quartic)
            rec["levels"] = spectrum.levels
            rec["vectors"] = spectrum.vectors
        except RegimeError as exc:
            rec["errors"]["spectrum"] = exc.code

    if "coupling" in families:
        try:
            rec["gamma_m"] = build_coupling(mode, p.x_j, p).gamma_m
        except RegimeError as exc:
            rec["errors"]["coupling"] = exc.code

    if "rates" in families or "entangle" in families:
        try:
            cc = build_coupling(mode, p.x_j, p)
            drive, spectrum = resolve_drive(p, trunc, spectrum, solver=solver)
            if "rates" in families:
                rec["kappa_n_prime"] = modified_decay(cc, drive, p).kappa_n_prime
            if "entangle" in families:
                steady = strong_field_steady_state(cc, drive, p)
                rec["report"] = entanglement_metric(cc, drive, steady, p)
                rec["gamma_n_kerr"] = steady.gamma_n_kerr
        except RegimeError as exc:
            if "rates" in families and "kappa_n_prime" not in rec:
                rec["errors"]["rates"] = exc.code
            if "entangle" in families:
                rec["errors"]["entangle"] = exc.code
    return rec


def _tracking_pass(raw: list[dict], shape: tuple[int, ...]) -> list[np.ndarray | None]:
    """Assign level labels along the innermost axis by eigenvector overlap."""
    n_points = len(raw)
    perms: list[np.ndarray | None] = [None] * n_points
    inner = shape[-1] if shape else 1
    for i, rec in enumerate(raw):
        if "levels" not in rec:
            continue
        k = min(TRACK_DEPTH, rec["vectors"].shape[1])
        pred = i - 1 if (i % inner) != 0 else i - inner
        if pred < 0 or perms[pred] is None or "vectors" not in raw[pred]:
            perms[i] = np.arange(k)
            continue
        prev_perm = perms[pred]
        prev_vecs = raw[pred]["vectors"][:, prev_perm]
        perms[i] = track_labels(prev_vecs, rec["vectors"][:, :k])
    return perms


def _extract(name: str, rec: dict, perm: np.ndarray | None) -> tuple[float, str]:
    family = OBSERVABLES[name][0]
    if family in rec["errors"]:
        return float("nan"), rec["errors"][family]

    if family == "coupling":
        return rec["gamma_m"] / GHZ, ""
    if family == "rates":
        return rec["kappa_n_prime"] / GHZ, ""
    if family == "entangle":
        rep = rec["report"]
        if name == "gamma_n_kerr":
            return rec["gamma_n_kerr"] / GHZ, ""
        value = {
            "n_tl": rep.n_tl, "n_t": rep.n_t,
            "n_otl": rep.n_otl, "n_ot": rep.n_ot,
            "d_mm_abs": abs(rep.d_mm),
            "epsilon_e": rep.epsilon_e,
            "b1": rep.b1,
        }[name]
        return float(value), ""

    # spectrum family
    if "levels" not in rec:
        return float("nan"), rec["errors"].get("spectrum", "regime")
    levels = rec["levels"]
    p = perm if perm is not None else np.arange(min(TRACK_DEPTH, len(levels)))

    def lev(k: int) -> float:  # 1-based label
        return float(levels[p[k - 1]])

    def w(i: int, j: int) -> float:
        return lev(i) - lev(j)

    if name in ("e1", "e2", "e3", "e4"):
        return lev(int(name[1])) / GHZ, ""
    if name.startswith("det_"):
        a, b = name[4:].split("_")
        return (w(int(a[0]), int(a[1])) - w(int(b[0]), int(b[1]))) / GHZ, ""
    if name.startswith("de"):
        i, j = int(name[2]), int(name[3])
        return w(i, j) / GHZ, ""
    if name == "alpha_r":
        w21 = w(2, 1)
        if w21 == 0.0:
            return float("nan"), "degenerate_spectrum"
        return (w(3, 2) - w21) / w21, ""
    if name == "tau_p":
        gap = abs(w(3, 2) - w(2, 1))
        if gap == 0.0:
            return float("nan"), "harmonic_degenerate"
        return 1.0 / gap, ""
    raise ConfigError(f"unhandled observable '{name}'")
