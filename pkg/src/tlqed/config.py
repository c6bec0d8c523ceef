"""Run configuration: one JSON document, snake_case keys, no unknowns.

Schema (all keys optional, defaults in params.py / fock.py):

  params      object   every CircuitParams field by name; detuning_mode is
                       {"mode": "explicit", "delta_m": .., "delta_n": ..} or
                       {"mode": "from_transitions", "pair": "43_32"}
  truncation  object   n_tl_modes, tl_photon_cutoff, transmon_levels
  sweep       object   {"axes": [{name, start, stop, count, spacing}...],
                        "observables": [names...]}
  mode_m      int      line mode used by the entanglement chain
  eigensolver string   "lapack" (default) or "jacobi"
  quartic     string   "diagonal" (default), "full", or "none"
  output_dir  string
  seed        int

Unknown keys anywhere are a hard error; parse(serialize(config)) is the
identity for every valid configuration.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .fock import TruncationSpec
from .params import (CircuitParams, ConfigError, DetuningSpec, validate)
from .sweep import OBSERVABLES, SweepAxis


@dataclass
class RunConfig:
    params: CircuitParams = field(default_factory=CircuitParams)
    trunc: TruncationSpec = field(default_factory=TruncationSpec)
    axes: list[SweepAxis] = field(default_factory=list)
    observables: list[str] = field(default_factory=list)
    mode_m: int = 1
    eigensolver: str = "lapack"
    quartic: str = "diagonal"
    output_dir: str = "out"
    seed: int = 1234


def _check_keys(obj: dict, allowed, where: str) -> None:
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")


def config_from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("configuration root must be an object")
    _check_keys(doc, ("params", "truncation", "sweep", "mode_m",
                      "eigensolver", "quartic", "output_dir", "seed"),
                "configuration")

    pdoc = dict(doc.get("params", {}))
    pfields = {f.name for f in dataclasses.fields(CircuitParams)}
    _check_keys(pdoc, pfields, "params")
    if "detuning_mode" in pdoc:
        ddoc = dict(pdoc["detuning_mode"])
        _check_keys(ddoc, ("mode", "pair", "delta_m", "delta_n"),
                    "params.detuning_mode")
        pdoc["detuning_mode"] = DetuningSpec(**ddoc)
    try:
        params = CircuitParams(**pdoc)
    except TypeError as exc:
        raise ConfigError(f"bad params: {exc}") from exc

    tdoc = dict(doc.get("truncation", {}))
    _check_keys(tdoc, ("n_tl_modes", "tl_photon_cutoff", "transmon_levels"),
                "truncation")
    try:
        trunc = TruncationSpec(**tdoc)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad truncation: {exc}") from exc

    sdoc = dict(doc.get("sweep", {}))
    _check_keys(sdoc, ("axes", "observables"), "sweep")
    axes = []
    for i, adoc in enumerate(sdoc.get("axes", [])):
        adoc = dict(adoc)
        _check_keys(adoc, ("name", "start", "stop", "count", "spacing"),
                    f"sweep.axes[{i}]")
        try:
            axes.append(SweepAxis(**adoc))
        except (TypeError, ConfigError) as exc:
            raise ConfigError(f"bad sweep axis {i}: {exc}") from exc
    observables = list(sdoc.get("observables", []))
    for name in observables:
        if name not in OBSERVABLES:
            raise ConfigError(f"unknown observable '{name}'")

    cfg = RunConfig(
        params=params, trunc=trunc, axes=axes, observables=observables,
        mode_m=int(doc.get("mode_m", 1)),
        eigensolver=str(doc.get("eigensolver", "lapack")),
        quartic=str(doc.get("quartic", "diagonal")),
        output_dir=str(doc.get("output_dir", "out")),
        seed=int(doc.get("seed", 1234)),
    )
    if cfg.eigensolver not in ("lapack", "jacobi"):
        raise ConfigError("eigensolver must be 'lapack' or 'jacobi'")
    if cfg.quartic not in ("diagonal", "full", "none"):
        raise ConfigError("quartic must be 'diagonal', 'full', or 'none'")
    if cfg.mode_m < 1 or cfg.mode_m > cfg.trunc.n_tl_modes:
        raise ConfigError("mode_m must select one of the retained line modes")
    report = validate(cfg.params)
    if not report.ok:
        raise ConfigError("invalid params: " + "; ".join(report.violations))
    return cfg


def config_to_dict(cfg: RunConfig) -> dict:
    det = cfg.params.detuning_mode
    pdoc = dataclasses.asdict(cfg.params)
    pdoc["detuning_mode"] = {"mode": det.mode, "pair": det.pair,
                             "delta_m": det.delta_m, "delta_n": det.delta_n}
    return {
        "params": pdoc,
        "truncation": dataclasses.asdict(cfg.trunc),
        "sweep": {
            "axes": [dataclasses.asdict(ax) for ax in cfg.axes],
            "observables": list(cfg.observables),
        },
        "mode_m": cfg.mode_m,
        "eigensolver": cfg.eigensolver,
        "quartic": cfg.quartic,
        "output_dir": cfg.output_dir,
        "seed": cfg.seed,
    }


def load_config(path: str | Path) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    return config_from_dict(doc)


def save_config(cfg: RunConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg), indent=2) + "\n")


def apply_override(doc: dict, dotted: str, raw_value: str) -> None:
    """--set key.path=value override on the raw JSON document."""
    keys = dotted.split(".")
    target = doc
    for key in keys[:-1]:
        if isinstance(target, list):
            target = target[int(key)]
        else:
            target = target.setdefault(key, {})
        if not isinstance(target, (dict, list)):
            raise ConfigError(f"cannot descend into '{dotted}'")
    try:
        value = json.loads(raw_value)
    except json.JSONDecodeError:
        value = raw_value
    last = keys[-1]
    if isinstance(target, list):
        target[int(last)] = value
    else:
        target[last] = value
