"""Command-line surface: config ingestion, subcommands, file outputs.

Subcommands: solve-pair, scan-pair, oracle, times, cascade, calibrate,
wavefunction.  Exit codes: 0 success, 1 computation error (for example a
resonance search that comes up empty), 2 configuration or usage error.

The configuration file is flat INI text with sections [wells], [solver],
[oracle], [output] and optionally [constants].  Keys are case sensitive and
unknown keys are rejected rather than ignored.  All file outputs are
deterministic for a given config: no timestamps or host information is ever
written into data files.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import cascade as cascade_mod
from .dynamics import ResonantPair, decay_time, tunneling_time
from .eigensolver import (
    CalibrationError,
    SolveResult,
    SolverConfig,
    calibrate_depth,
    calibrate_distance,
    solve_pair,
)
from .oracle import FdConfig, fd_solve, fd_states
from .potential import CascadeSpec, WellPair, cascade_profile, pair_profile, write_profile_csv
from .quantities import CODATA2018, PhysicalConstants, make_constants
from .transcendental import grid_scan
from .wavefunctions import build_wavefunction, write_wavefunction_csv

__all__ = ["ConfigError", "RunConfig", "parse_config", "load_config", "main"]

OUTPUT_DIR_ENV = "WELLCASCADE_OUTDIR"

_REQUIRED_KEYS = (("wells", "widths_A"), ("wells", "depths_eV"), ("wells", "distances_A"))

_KNOWN_KEYS = {
    "wells": {
        "labels",
        "widths_A",
        "depths_eV",
        "distances_A",
        "closing_distance_A",
        "absorption_target_eV",
        "resonance_window_eV",
    },
    "solver": {"grid_step_eV", "refine_tol_eV", "residual_tol", "max_levels"},
    "oracle": {"grid_points", "padding_A", "extrapolate"},
    "output": {"directory", "formats"},
    "constants": {
        "hbar_eV_s",
        "hbar_J_s",
        "electron_mass_kg",
        "eV_in_J",
        "hc_eV_nm",
        "wavenumber_factor",
    },
}

_FORMATS = ("json", "csv", "table")


class ConfigError(ValueError):
    """Configuration rejected before any computation ran."""


@dataclass(frozen=True)
class RunConfig:
    spec: CascadeSpec
    solver: SolverConfig
    oracle: FdConfig
    output_dir: str
    formats: tuple[str, ...]
    constants: PhysicalConstants
    absorption_target_ev: float
    resonance_window_ev: float


def _floats(section: str, key: str, raw: str) -> list[float]:
    out = []
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            out.append(float(piece))
        except ValueError:
            raise ConfigError(f"[{section}] {key}: cannot parse {piece!r} as a number")
    if not out:
        raise ConfigError(f"[{section}] {key}: no values given")
    return out


def _float(section: str, key: str, raw: str) -> float:
    values = _floats(section, key, raw)
    if len(values) != 1:
        raise ConfigError(f"[{section}] {key}: expected a single number, got {len(values)}")
    return values[0]


def _bool(section: str, key: str, raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"[{section}] {key}: expected a boolean, got {raw!r}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text into a :class:`RunConfig`.

    Unknown sections or keys are errors; missing required keys are reported
    all at once.  Geometry and tolerance invariants are checked here, before
    any computation.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # keys are case sensitive
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from exc

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")

    missing = [
        f"[{sec}] {key}"
        for sec, key in _REQUIRED_KEYS
        if not parser.has_option(sec, key)
    ]
    if missing:
        raise ConfigError("missing required key(s): " + ", ".join(missing))

    wells = parser["wells"]
    widths = _floats("wells", "widths_A", wells["widths_A"])
    if len(widths) == 1:
        widths = widths * 4
    if len(widths) != 4:
        raise ConfigError(f"[wells] widths_A: expected 1 or 4 values, got {len(widths)}")
    depths = _floats("wells", "depths_eV", wells["depths_eV"])
    if len(depths) != 4:
        raise ConfigError(f"[wells] depths_eV: expected 4 values, got {len(depths)}")
    distances = _floats("wells", "distances_A", wells["distances_A"])
    if len(distances) != 3:
        raise ConfigError(f"[wells] distances_A: expected 3 values, got {len(distances)}")
    if parser.has_option("wells", "closing_distance_A"):
        distances = distances + [_float("wells", "closing_distance_A", wells["closing_distance_A"])]
    labels = ("P", "B", "H", "Q")
    if parser.has_option("wells", "labels"):
        raw_labels = tuple(s.strip() for s in wells["labels"].split(",") if s.strip())
        if len(raw_labels) != 4:
            raise ConfigError(f"[wells] labels: expected 4 labels, got {len(raw_labels)}")
        labels = raw_labels
    absorption_target = 1.4267
    if parser.has_option("wells", "absorption_target_eV"):
        absorption_target = _float("wells", "absorption_target_eV", wells["absorption_target_eV"])
    resonance_window = 0.05
    if parser.has_option("wells", "resonance_window_eV"):
        resonance_window = _float("wells", "resonance_window_eV", wells["resonance_window_eV"])
    if not (math.isfinite(absorption_target) and absorption_target > 0.0):
        raise ConfigError("[wells] absorption_target_eV: must be positive")
    if not (math.isfinite(resonance_window) and resonance_window > 0.0):
        raise ConfigError("[wells] resonance_window_eV: must be positive")

    try:
        spec = CascadeSpec(
            widths=tuple(widths),
            distances=tuple(distances),
            depths=tuple(depths),
            labels=labels,
        )
    except ValueError as exc:
        raise ConfigError(f"[wells] invalid geometry: {exc}") from exc

    solver_kwargs: dict = {}
    if parser.has_section("solver"):
        sec = parser["solver"]
        if "grid_step_eV" in sec:
            solver_kwargs["grid_step"] = _float("solver", "grid_step_eV", sec["grid_step_eV"])
        if "refine_tol_eV" in sec:
            solver_kwargs["refine_tol"] = _float("solver", "refine_tol_eV", sec["refine_tol_eV"])
        if "residual_tol" in sec:
            solver_kwargs["residual_tol"] = _float("solver", "residual_tol", sec["residual_tol"])
        if "max_levels" in sec and sec["max_levels"].strip():
            try:
                solver_kwargs["max_levels"] = int(sec["max_levels"])
            except ValueError:
                raise ConfigError("[solver] max_levels: expected an integer")
    try:
        solver = SolverConfig(**solver_kwargs)
    except ValueError as exc:
        raise ConfigError(f"[solver] invalid configuration: {exc}") from exc

    oracle_kwargs: dict = {}
    if parser.has_section("oracle"):
        sec = parser["oracle"]
        if "grid_points" in sec:
            try:
                oracle_kwargs["grid_points"] = int(sec["grid_points"])
            except ValueError:
                raise ConfigError("[oracle] grid_points: expected an integer")
        if "padding_A" in sec:
            oracle_kwargs["padding"] = _float("oracle", "padding_A", sec["padding_A"])
        if "extrapolate" in sec:
            oracle_kwargs["extrapolate"] = _bool("oracle", "extrapolate", sec["extrapolate"])
    try:
        oracle = FdConfig(**oracle_kwargs)
    except ValueError as exc:
        raise ConfigError(f"[oracle] invalid configuration: {exc}") from exc

    output_dir = "out"
    formats: tuple[str, ...] = ("json", "table")
    if parser.has_section("output"):
        sec = parser["output"]
        if "directory" in sec:
            output_dir = sec["directory"].strip()
            if not output_dir:
                raise ConfigError("[output] directory: must not be empty")
        if "formats" in sec:
            formats = tuple(s.strip() for s in sec["formats"].split(",") if s.strip())
            bad = [f for f in formats if f not in _FORMATS]
            if bad:
                raise ConfigError(
                    f"[output] formats: unknown format(s) {bad}; allowed: {list(_FORMATS)}"
                )
            if not formats:
                raise ConfigError("[output] formats: must not be empty")

    constants = CODATA2018
    if parser.has_section("constants"):
        overrides = {
            key: _float("constants", key, raw) for key, raw in parser["constants"].items()
        }
        try:
            constants = make_constants(**overrides)
        except ValueError as exc:
            raise ConfigError(f"[constants] invalid override: {exc}") from exc

    return RunConfig(
        spec=spec,
        solver=solver,
        oracle=oracle,
        output_dir=output_dir,
        formats=formats,
        constants=constants,
        absorption_target_ev=absorption_target,
        resonance_window_ev=resonance_window,
    )


def load_config(path) -> RunConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return parse_config(p.read_text(encoding="utf-8"))


def serialize_config(config: RunConfig) -> str:
    """Emit config text that parses back to an equal :class:`RunConfig`."""
    spec = config.spec
    lines = [
        "[wells]",
        "labels = " + ", ".join(spec.labels),
        "widths_A = " + ", ".join(f"{w:.9g}" for w in spec.widths),
        "depths_eV = " + ", ".join(f"{v:.9g}" for v in spec.depths),
        "distances_A = " + ", ".join(f"{d:.9g}" for d in spec.distances[:3]),
    ]
    if spec.has_closing_distance:
        lines.append(f"closing_distance_A = {spec.distances[3]:.9g}")
    lines += [
        f"absorption_target_eV = {config.absorption_target_ev:.9g}",
        f"resonance_window_eV = {config.resonance_window_ev:.9g}",
        "",
        "[solver]",
        f"grid_step_eV = {config.solver.grid_step:.9g}",
        f"refine_tol_eV = {config.solver.refine_tol:.9g}",
        f"residual_tol = {config.solver.residual_tol:.9g}",
    ]
    if config.solver.max_levels is not None:
        lines.append(f"max_levels = {config.solver.max_levels}")
    lines += [
        "",
        "[oracle]",
        f"grid_points = {config.oracle.grid_points}",
        f"padding_A = {config.oracle.padding:.9g}",
        f"extrapolate = {'true' if config.oracle.extrapolate else 'false'}",
        "",
        "[output]",
        f"directory = {config.output_dir}",
        "formats = " + ", ".join(config.formats),
    ]
    if config.constants != CODATA2018:
        c = config.constants
        lines += [
            "",
            "[constants]",
            f"hbar_eV_s = {c.hbar_eV_s!r}",
            f"hbar_J_s = {c.hbar_J_s!r}",
            f"electron_mass_kg = {c.electron_mass_kg!r}",
            f"eV_in_J = {c.eV_in_J!r}",
            f"hc_eV_nm = {c.hc_eV_nm!r}",
            f"wavenumber_factor = {c.wavenumber_factor!r}",
        ]
    return "\n".join(lines) + "\n"


def reference_config_path() -> Path:
    """Path of the packaged reference configuration."""
    return Path(__file__).parent / "data" / "paper.cfg"


# ---------------------------------------------------------------- helpers


def _output_dir(config: RunConfig, override: str | None) -> Path:
    directory = override or os.environ.get(OUTPUT_DIR_ENV) or config.output_dir
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _resolve_pair(config: RunConfig, index: int) -> tuple[WellPair, float, str]:
    """Pair geometry, global offset and display name for pair 1..4."""
    spec = config.spec
    if index in (1, 2, 3):
        name = f"{spec.labels[index - 1]}{spec.labels[index]}"
        return spec.pair(index - 1), spec.pair_offset(index - 1), name
    if index == 4:
        if not spec.has_closing_distance:
            raise ValueError("pair 4 (closing) requested but no closing_distance_A configured")
        name = f"{spec.labels[3]}{spec.labels[0]}"
        offset = spec.max_depth - max(spec.depths[3], spec.depths[0])
        return spec.closing_pair(), offset, name
    raise ValueError(f"pair index must be 1..4, got {index}")


def _sig9(x: float) -> float:
    return float(f"{x:.9g}")


def _solve_result_dict(result: SolveResult, offset: float) -> dict:
    return {
        "schema_version": 1,
        "pair": {
            "width_A": _sig9(result.pair.width),
            "distance_A": _sig9(result.pair.distance),
            "v_shallow_eV": _sig9(result.pair.v_shallow),
            "v_deep_eV": _sig9(result.pair.v_deep),
            "offset_eV": _sig9(offset),
        },
        "config": {
            "grid_step_eV": _sig9(result.config.grid_step),
            "refine_tol_eV": _sig9(result.config.refine_tol),
            "residual_tol": _sig9(result.config.residual_tol),
            "max_levels": result.config.max_levels,
        },
        "levels": [
            {
                "index": lv.index,
                "energy_eV": _sig9(lv.energy),
                "energy_global_eV": _sig9(lv.energy + offset),
                "regime": str(lv.regime),
                "residual": _sig9(lv.residual),
            }
            for lv in result.levels
        ],
        "diagnostics": {
            "grid_points": result.diagnostics.grid_points,
            "sign_changes": result.diagnostics.sign_changes,
            "pole_points": result.diagnostics.pole_points,
            "skipped_intervals": [list(map(_sig9, iv)) for iv in result.diagnostics.skipped_intervals],
            "discarded_candidates": [_sig9(e) for e in result.diagnostics.discarded_candidates],
        },
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


# ------------------------------------------------------------- commands


def _cmd_solve_pair(args) -> int:
    config = load_config(args.config)
    pair, offset, name = _resolve_pair(config, args.pair)
    result = solve_pair(
        pair, config.solver, e_min=args.emin, e_max=args.emax, constants=config.constants
    )
    if "table" in config.formats:
        print(f"pair {args.pair} ({name}): width {pair.width} A, distance {pair.distance} A, "
              f"depths {pair.v_shallow}/{pair.v_deep} eV, global offset {offset} eV")
        print(f"{'idx':>3} {'E_local_eV':>14} {'E_global_eV':>14} {'regime':>6} {'residual':>10}")
        for lv in result.levels:
            print(f"{lv.index:>3} {lv.energy:>14.9f} {lv.energy + offset:>14.9f} "
                  f"{str(lv.regime):>6} {lv.residual:>10.2e}")
        print(f"{len(result.levels)} bound state(s)")
    if "json" in config.formats:
        out = _output_dir(config, args.output_dir) / f"solve_pair{args.pair}.json"
        _write_json(out, _solve_result_dict(result, offset))
        print(f"wrote {out}")
    return 0


def _cmd_scan_pair(args) -> int:
    config = load_config(args.config)
    pair, _, name = _resolve_pair(config, args.pair)
    e_lo = max(args.emin, args.step)
    e_hi = min(args.emax, pair.v_deep - args.step)
    if e_hi <= e_lo:
        raise ValueError(f"empty scan range ({args.emin}, {args.emax}) for pair {args.pair}")
    n = int(math.floor((e_hi - e_lo) / args.step)) + 1
    energies = e_lo + args.step * np.arange(n)
    scan = grid_scan(pair, energies, config.constants)
    out = _output_dir(config, args.output_dir) / f"scan_pair{args.pair}.csv"
    lines = ["E_eV,lhs,rhs,mismatch,regime,pole_flag"]
    for i in range(n):
        regime = "B" if scan.regime_b[i] else "A"
        lines.append(
            f"{energies[i]:.9g},{scan.lhs[i]:.9g},{scan.rhs[i]:.9g},"
            f"{scan.mismatch[i]:.9g},{regime},{int(scan.pole[i])}"
        )
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"pair {args.pair} ({name}): scanned {n} energies in [{e_lo:.6g}, {e_hi:.6g}] eV")
    print(f"wrote {out}")
    return 0


def _cmd_oracle(args) -> int:
    config = load_config(args.config)
    if args.cascade:
        profile = cascade_profile(config.spec)
        n_levels = args.levels or 12
        fd = fd_solve(profile, n_levels, config.oracle, config.constants)
        globals_all = []
        for i in (1, 2, 3):
            pair, offset, _ = _resolve_pair(config, i)
            result = solve_pair(pair, config.solver, constants=config.constants)
            globals_all.extend(lv.energy + offset for lv in result.levels)
        globals_all.sort()
        print(f"{'idx':>3} {'fd_global_eV':>14} {'nearest_pairwise_eV':>20} {'diff_eV':>12}")
        for i, e in enumerate(fd.levels):
            nearest = min(globals_all, key=lambda g: abs(g - e)) if globals_all else float("nan")
            print(f"{i:>3} {e:>14.9f} {nearest:>20.9f} {e - nearest:>12.2e}")
        if fd.truncated:
            print(f"note: only {len(fd.levels)} bound state(s) below the barrier top")
        return 0
    pair, offset, name = _resolve_pair(config, args.pair)
    result = solve_pair(pair, config.solver, constants=config.constants)
    n_levels = args.levels or max(len(result.levels), 1)
    profile = pair_profile(pair)
    fd = fd_solve(profile, n_levels, config.oracle, config.constants)
    print(f"pair {args.pair} ({name}): transcendental vs finite-difference (local eV)")
    print(f"{'idx':>3} {'transcendental':>15} {'finite_diff':>15} {'diff':>12}")
    for i in range(max(len(result.levels), len(fd.levels))):
        t = f"{result.levels[i].energy:>15.9f}" if i < len(result.levels) else " " * 15
        o = f"{fd.levels[i]:>15.9f}" if i < len(fd.levels) else " " * 15
        d = (
            f"{result.levels[i].energy - fd.levels[i]:>12.2e}"
            if i < len(result.levels) and i < len(fd.levels)
            else " " * 12
        )
        print(f"{i:>3} {t} {o} {d}")
    if args.emit_states:
        x, energies, vectors = fd_states(profile, n_levels, config.oracle, config.constants)
        out = _output_dir(config, args.output_dir) / f"oracle_pair{args.pair}_states.csv"
        header = "x_A," + ",".join(f"psi_{i}" for i in range(vectors.shape[1]))
        rows = [header]
        for r in range(len(x)):
            rows.append(f"{x[r]:.9g}," + ",".join(f"{vectors[r, c]:.9g}" for c in range(vectors.shape[1])))
        out.write_text("\n".join(rows) + "\n", encoding="utf-8")
        print(f"wrote {out}")
    return 0


def _cmd_times(args) -> int:
    if args.from_json:
        payload = json.loads(Path(args.from_json).read_text(encoding="utf-8"))
        levels = [lv["energy_eV"] for lv in payload["levels"]]
        if args.upper_index is None or args.lower_index is None:
            raise ValueError("--from-json requires --upper-index and --lower-index")
        try:
            e_plus = levels[args.upper_index]
            e_minus = levels[args.lower_index]
        except IndexError:
            raise ValueError(
                f"level indices ({args.lower_index}, {args.upper_index}) out of range; "
                f"file has {len(levels)} levels"
            )
    else:
        if args.e_plus is None or args.e_minus is None:
            raise ValueError("provide --e-plus and --e-minus, or --from-json with indices")
        e_plus, e_minus = args.e_plus, args.e_minus
    pair = ResonantPair(e_plus=e_plus, e_minus=e_minus)
    t = tunneling_time(pair, args.k)
    print(f"E+ = {e_plus:.9g} eV, E- = {e_minus:.9g} eV, splitting = {pair.splitting:.9g} eV")
    print(f"tunneling time (k={args.k}): {t:.9g} s = {t * 1e12:.6g} ps")
    if args.decay_gap is not None:
        dt = decay_time(args.decay_gap)
        print(f"decay gap {args.decay_gap:.9g} eV -> decay time {dt:.9g} s = {dt * 1e12:.6g} ps")
        print(f"tunneling/decay ratio: {t / dt:.6g}")
    return 0


def _cmd_cascade(args) -> int:
    config = load_config(args.config)
    report = cascade_mod.solve_cascade(
        config.spec,
        config.solver,
        absorption_target_ev=config.absorption_target_ev,
        resonance_window_ev=config.resonance_window_ev,
        constants=config.constants,
    )
    out_dir = _output_dir(config, args.output_dir)
    if "table" in config.formats:
        _print_cascade_table(report)
    if "json" in config.formats:
        out = out_dir / "report.json"
        _write_json(out, cascade_mod.report_to_dict(report))
        print(f"wrote {out}")
    if args.emit_profile:
        out = out_dir / "profile.csv"
        write_profile_csv(cascade_profile(config.spec), out)
        print(f"wrote {out}")
    if args.emit_scan:
        for i, resonance in enumerate(report.resonances):
            pair, offset, _ = _resolve_pair(config, i + 1)
            pad = config.resonance_window_ev
            e_lo = max(resonance.e_minus - offset - pad, config.solver.grid_step)
            e_hi = min(resonance.e_plus - offset + pad, pair.v_deep - config.solver.grid_step)
            step = 0.5 * config.solver.grid_step
            n = int(math.floor((e_hi - e_lo) / step)) + 1
            energies = e_lo + step * np.arange(n)
            scan = grid_scan(pair, energies, config.constants)
            out = out_dir / f"scan_pair{i + 1}.csv"
            lines = ["E_eV,lhs,rhs,mismatch,regime,pole_flag"]
            for j in range(n):
                regime = "B" if scan.regime_b[j] else "A"
                lines.append(
                    f"{energies[j]:.9g},{scan.lhs[j]:.9g},{scan.rhs[j]:.9g},"
                    f"{scan.mismatch[j]:.9g},{regime},{int(scan.pole[j])}"
                )
            out.write_text("\n".join(lines) + "\n", encoding="utf-8")
            print(f"wrote {out}")
    return 0


def _print_cascade_table(report) -> None:
    print("wells (energies on the global reference, eV):")
    print(f"{'site':>5} {'width_A':>9} {'depth_eV':>9} {'floor_eV':>9} {'ground_eV':>12}")
    for w in report.wells:
        print(f"{w.label:>5} {w.width:>9.4g} {w.depth_ev:>9.4g} {w.floor_ev:>9.4g} {w.ground_ev:>12.6f}")
    a = report.absorption
    print(f"\nabsorption: {a.from_ev:.6f} -> {a.to_ev:.6f} eV, "
          f"delta {a.delta_ev:.6f} eV, wavelength {a.wavelength_nm:.2f} nm")
    print("\ntransfer schedule:")
    print(f"{'step':>4} {'sites':>7} {'E-':>10} {'E+':>10} {'split_eV':>10} "
          f"{'T_ps':>9} {'gap_eV':>8} {'decay_ps':>10} {'ratio':>8}")
    for i, s in enumerate(report.steps):
        r = s.resonance
        print(f"{i + 1:>4} {s.from_site + '->' + s.to_site:>7} {r.e_minus:>10.5f} {r.e_plus:>10.5f} "
              f"{r.splitting:>10.3e} {s.tunneling_time_s * 1e12:>9.4f} {s.decay_gap_ev:>8.4f} "
              f"{s.decay_time_s * 1e12:>10.5f} {s.tunneling_time_s / s.decay_time_s:>8.1f}")
    print("\ncomparison with the measured reaction-center steps:")
    print(f"{'step':>4} {'model_ps':>10} {'exp_ps':>8} {'ratio':>9} {'same_order':>10}")
    for row in cascade_mod.compare_to_experiment(report):
        print(f"{row.step:>4} {row.model_time_ps:>10.4f} {row.reference_time_ps:>8.4g} "
              f"{row.time_ratio:>9.4f} {str(row.same_order).lower():>10}")
    for note in report.notes:
        print(f"note: {note}")


def _cmd_calibrate(args) -> int:
    config = load_config(args.config)
    pair, offset, name = _resolve_pair(config, args.pair)
    targets = [float(t) for t in args.targets.split(",") if t.strip()]
    lo, hi = (float(v) for v in args.range.split(","))
    if args.mode == "distance":
        result = calibrate_distance(
            pair, targets, (lo, hi), config=config.solver, constants=config.constants
        )
        label = "distance_A"
    else:
        result = calibrate_depth(
            pair,
            args.vary_fixed,
            targets,
            (lo, hi),
            config=config.solver,
            constants=config.constants,
        )
        label = "depth_eV"
    print(f"pair {args.pair} ({name}): calibrated {label} = {result.value:.6f} "
          f"(misfit {result.misfit:.3e} eV)")
    print("matched levels (pair-local eV): " + ", ".join(f"{e:.6f}" for e in result.levels))
    print(f"global offset of this pair: {offset} eV")
    return 0


def _cmd_wavefunction(args) -> int:
    config = load_config(args.config)
    pair, offset, name = _resolve_pair(config, args.pair)
    result = solve_pair(pair, config.solver, constants=config.constants)
    if args.level >= len(result.levels) or args.level < 0:
        raise ValueError(
            f"level index {args.level} out of range; pair {args.pair} has "
            f"{len(result.levels)} bound state(s)"
        )
    level = result.levels[args.level]
    wf = build_wavefunction(pair, level, config.constants)
    out = _output_dir(config, args.output_dir) / f"wavefunction_{name}_{args.level}.csv"
    write_wavefunction_csv(wf, out, n_points=args.points)
    print(f"pair {args.pair} ({name}) level {args.level}: E = {level.energy:.9f} eV "
          f"(global {level.energy + offset:.9f} eV), regime {level.regime}, "
          f"wall residual {wf.wall_residual:.2e}")
    print(f"wrote {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wellcascade",
        description="Bound states and tunneling times of asymmetric double square wells, "
        "and the four-well electron-transfer cascade built from them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", required=True, help="path to the INI configuration file")
        p.add_argument("--output-dir", default=None,
                       help=f"override output directory (also via ${OUTPUT_DIR_ENV})")

    p = sub.add_parser("solve-pair", help="find all bound states of one pair")
    add_common(p)
    p.add_argument("--pair", type=int, required=True, help="pair index 1..4 (4 = closing)")
    p.add_argument("--emin", type=float, default=None)
    p.add_argument("--emax", type=float, default=None)
    p.set_defaults(func=_cmd_solve_pair)

    p = sub.add_parser("scan-pair", help="tabulate lhs/rhs/mismatch over an energy range")
    add_common(p)
    p.add_argument("--pair", type=int, required=True)
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.set_defaults(func=_cmd_scan_pair)

    p = sub.add_parser("oracle", help="finite-difference cross-check of the solver")
    add_common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pair", type=int)
    group.add_argument("--cascade", action="store_true")
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--emit-states", action="store_true",
                   help="write oracle eigenfunctions as CSV (pair mode)")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("times", help="tunneling and decay times from doublet energies")
    p.add_argument("--e-plus", type=float, default=None)
    p.add_argument("--e-minus", type=float, default=None)
    p.add_argument("--from-json", default=None, help="solve-pair JSON output to read levels from")
    p.add_argument("--upper-index", type=int, default=None)
    p.add_argument("--lower-index", type=int, default=None)
    p.add_argument("--k", type=int, default=0, help="oscillation maximum index (default 0)")
    p.add_argument("--decay-gap", type=float, default=None, help="intra-well decay gap in eV")
    p.set_defaults(func=_cmd_times)

    p = sub.add_parser("cascade", help="solve the four-well chain and write report.json")
    add_common(p)
    p.add_argument("--emit-profile", action="store_true", help="also write profile.csv")
    p.add_argument("--emit-scan", action="store_true",
                   help="also write per-pair scan CSVs around each resonance")
    p.set_defaults(func=_cmd_cascade)

    p = sub.add_parser("calibrate", help="tune distance or one depth to target levels")
    add_common(p)
    p.add_argument("--pair", type=int, required=True)
    p.add_argument("--targets", required=True, help="comma-separated pair-local energies (eV)")
    p.add_argument("--mode", choices=("distance", "depth"), default="distance")
    p.add_argument("--range", required=True, help="search range 'lo,hi'")
    p.add_argument("--vary-fixed", choices=("shallow", "deep"), default="shallow",
                   help="depth mode: which depth stays fixed (the other is searched)")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("wavefunction", help="reconstruct one level's wavefunction as CSV")
    add_common(p)
    p.add_argument("--pair", type=int, required=True)
    p.add_argument("--level", type=int, required=True, help="0-based level index")
    p.add_argument("--points", type=int, default=2001)
    p.set_defaults(func=_cmd_wavefunction)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (CalibrationError, cascade_mod.ResonanceNotFoundError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
