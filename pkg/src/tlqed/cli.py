"""Command-line front end.

    tlqed <command> --config <file> [--set key=value]... [--out DIR] [--seed N]

Commands: spectrum, purcell, entangle, detunings, sweep, validate.
Each map command evaluates its fixed observable set over the configured
sweep axes and writes one CSV (and, for two-axis grids, one SVG heatmap)
per observable. With no sweep axes configured the command evaluates the
single configured point and writes <command>_point.json; regime errors at
that point exit with status 3. Configuration problems exit with status 2.
Masked sweep points are reported as warnings on stderr and do not change
the exit status.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import validate_suite
from .config import RunConfig, apply_override, config_from_dict
from .coupling import build_coupling
from .entanglement import entanglement_metric
from .langevin import modified_decay, strong_field_steady_state
from .params import ConfigError, RegimeError, TWO_PI
from .pipeline import resolve_drive
from .spectrum import detuning_set, energy_levels
from .svg import write_svg_heatmap
from .sweep import SweepGrid, run_sweep

COMMAND_OBSERVABLES = {
    "spectrum": ["e1", "e2", "e3", "e4", "alpha_r", "tau_p"],
    "purcell": ["gamma_m", "kappa_n_prime"],
    "entangle": ["n_otl", "n_ot", "d_mm_abs", "epsilon_e"],
    "detunings": ["det_21_32", "det_32_43", "det_43_32", "det_31_42"],
}


def write_csv(grid: SweepGrid, path: str | Path) -> None:
    """Deterministic CSV: axis columns, value, error code; 12 significant
    digits in fixed scientific notation; LF line endings."""
    n_axes = len(grid.axes)
    header = ",".join([f"axis{i + 1}" for i in range(n_axes)] + ["value", "error_code"])
    axis_values = [ax.values() for ax in grid.axes]
    shape = grid.shape
    lines = [header]
    for flat in range(grid.values.size):
        idx = np.unravel_index(flat, shape)
        coords = [f"{axis_values[k][i]:.11e}" for k, i in enumerate(idx)]
        value = grid.values[flat]
        vtxt = f"{value:.11e}" if np.isfinite(value) else "nan"
        lines.append(",".join(coords + [vtxt, grid.error_mask[flat]]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _point_evaluation(command: str, cfg: RunConfig) -> dict:
    p, trunc = cfg.params, cfg.trunc
    if command == "spectrum":
        spec = energy_levels(p, trunc, solver=cfg.eigensolver, quartic=cfg.quartic)
        return {
            "levels_ghz": [lvl / (TWO_PI * 1e9) for lvl in spec.levels[:6]],
            "alpha_r": spec.alpha_r,
            "tau_p_s": spec.tau_p,
        }
    if command == "detunings":
        spec = energy_levels(p, trunc, solver=cfg.eigensolver, quartic=cfg.quartic)
        return {k: v / (TWO_PI * 1e9) for k, v in detuning_set(spec).items()}
    cc = build_coupling(cfg.mode_m, p.x_j, p)
    drive, _ = resolve_drive(p, trunc, solver=cfg.eigensolver)
    if command == "purcell":
        rates = modified_decay(cc, drive, p)
        return {
            "gamma_m_ghz": cc.gamma_m / (TWO_PI * 1e9),
            "kappa_n_prime_ghz": rates.kappa_n_prime / (TWO_PI * 1e9),
            "purcell_term_ghz": rates.purcell_term / (TWO_PI * 1e9),
        }
    if command == "entangle":
        steady = strong_field_steady_state(cc, drive, p)
        rep = entanglement_metric(cc, drive, steady, p)
        return {
            "n_tl": rep.n_tl, "n_t": rep.n_t,
            "n_otl": rep.n_otl, "n_ot": rep.n_ot,
            "d_mm": [rep.d_mm.real, rep.d_mm.imag],
            "epsilon_e": rep.epsilon_e, "entangled": rep.entangled,
            "b1": rep.b1,
        }
    raise ConfigError(f"unknown command '{command}'")


def _run_maps(command: str, cfg: RunConfig, observables: list[str],
              out_dir: Path) -> int:
    grids = run_sweep(cfg.params, cfg.trunc, cfg.axes, observables,
                      mode_m=cfg.mode_m, solver=cfg.eigensolver,
                      quartic=cfg.quartic)
    masked_total = 0
    for name, grid in grids.items():
        write_csv(grid, out_dir / f"{command}_{name}.csv")
        if len(grid.axes) == 2:
            write_svg_heatmap(grid, out_dir / f"{command}_{name}.svg")
        masked = sum(1 for code in grid.error_mask if code)
        masked_total += masked
        if masked:
            codes = sorted({c for c in grid.error_mask if c})
            print(f"warning: {masked}/{grid.values.size} points masked in "
                  f"{name} ({', '.join(codes)})", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="tlqed",
        description="transmission-line + transmon circuit observable maps")
    parser.add_argument("command",
                        choices=["spectrum", "purcell", "entangle",
                                 "detunings", "sweep", "validate"])
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--set", action="append", default=[], metavar="K=V",
                        help="override a configuration key (dotted path)")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--seed", type=int, help="seed override")
    parser.add_argument("--dump-hamiltonian", metavar="PATH",
                        help="write the assembled matrix at the configured "
                             "point as JSON [re, im] pairs")
    args = parser.parse_args(argv)

    try:
        if args.config:
            doc = json.loads(Path(args.config).read_text())
        else:
            doc = {}
        for item in args.set:
            if "=" not in item:
                raise ConfigError(f"--set needs key=value, got '{item}'")
            key, _, value = item.partition("=")
            apply_override(doc, key, value)
        cfg = config_from_dict(doc)
        if args.out:
            cfg.output_dir = args.out
        if args.seed is not None:
            cfg.seed = args.seed
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        failures = validate_suite.run(cfg, verbose=True)
        return 0 if failures == 0 else 1

    if args.dump_hamiltonian:
        from .fock import assemble_hamiltonian, matrix_to_json
        cc = [build_coupling(m, cfg.params.x_j, cfg.params)
              for m in range(1, cfg.trunc.n_tl_modes + 1)]
        h = assemble_hamiltonian(cc, cfg.trunc, cfg.params, quartic=cfg.quartic)
        Path(args.dump_hamiltonian).write_text(
            json.dumps(matrix_to_json(h)) + "\n")

    out_dir = Path(cfg.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output dir: {exc}", file=sys.stderr)
        return 2

    if args.command == "sweep":
        observables = cfg.observables
        if not observables:
            print("error: sweep command needs sweep.observables", file=sys.stderr)
            return 2
    else:
        observables = COMMAND_OBSERVABLES[args.command]

    try:
        if cfg.axes:
            return _run_maps(args.command, cfg, observables, out_dir)
        result = _point_evaluation(args.command, cfg)
    except RegimeError as exc:
        print(f"regime error: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    path = out_dir / f"{args.command}_point.json"
    path.write_text(json.dumps(result, indent=2) + "\n")
    print(json.dumps(result, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
