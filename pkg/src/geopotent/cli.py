"""Command line interface.

Subcommands map one-to-one onto the solver pipelines:

    direct    surface energy balance -> at-infinity potential
    inverse   at-infinity potential -> characteristic radius + boundaries
    profile   tabulated profile -> mass, mean density, grad-P, diagnostics
    anomaly   buried sphere -> sensitivity pairs and signal rows
    pulse     cavity schedule -> precursor time series

Reports embed the full constant set used. CSV output carries numbers at
10 significant digits for readability; JSON carries full precision. Exit
codes: 0 success, 2 input/validation error, 3 numerical-domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .anomaly import BackgroundState, sensitivity_coefficients, sphere_anomaly
from .config import ENV_CONFIG, RunConfig, resolve_config
from .core import AnomalySource, CavitySchedule, ScheduleSegment, validate_profile
from .errors import (
    ConfigError,
    DegenerateProfileError,
    GeopotentError,
    MissingPressureSourceError,
    NonMonotonicRadiusError,
    NonPhysicalInputError,
    NonPhysicalValueError,
    OutOfDomainError,
    PressureIncreaseError,
    ScheduleError,
    TooFewSamplesError,
)
from .profiles import (
    core_equilibrium_gravity,
    enclosed_mass,
    mean_density,
    pressure_gradient_max,
)
from .pulse import evaluate_schedule, surface_background
from .solver import (
    compression_potential,
    direct_problem,
    homogeneity_bound,
    inverse_problem,
    locate_boundary,
)

PROFILE_HEADER = "radius_m,density_kg_m3,pressure_pa"
PULSE_HEADER = "t_s,source_radius_m,potential_j_kg,delta_u_j_kg,delta_g_m_s2,delta_v_s_m_s"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3

_INPUT_ERRORS = (ConfigError, MissingPressureSourceError,
                 NonMonotonicRadiusError, NonPhysicalValueError,
                 PressureIncreaseError, ScheduleError, TooFewSamplesError)
_DOMAIN_ERRORS = (DegenerateProfileError, NonPhysicalInputError,
                  OutOfDomainError)


class _CliInputError(GeopotentError):
    """Flag or file content failed validation before any computation."""


# -- input files -------------------------------------------------------------

def read_profile_csv(path):
    """Parse a profile CSV; errors carry 1-based line numbers."""
    if not os.path.exists(path):
        raise _CliInputError(f"profile file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != PROFILE_HEADER:
        got = lines[0].strip() if lines else "<empty file>"
        raise _CliInputError(
            f"{path}:1: bad header {got!r}; expected {PROFILE_HEADER!r}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise _CliInputError(
                f"{path}:{lineno}: expected 3 comma-separated values, "
                f"got {len(parts)}")
        try:
            rows.append(tuple(float(p) for p in parts))
        except ValueError:
            raise _CliInputError(
                f"{path}:{lineno}: non-numeric value in {line!r}") from None
    try:
        return validate_profile(rows)
    except (NonMonotonicRadiusError, NonPhysicalValueError,
            PressureIncreaseError) as exc:
        index = getattr(exc, "index", None)
        where = f"{path}:{index + 2}: " if index is not None else f"{path}: "
        raise _CliInputError(where + str(exc)) from exc
    except TooFewSamplesError as exc:
        raise _CliInputError(f"{path}: {exc}") from exc


_SEGMENT_PARAM_KEYS = {
    "constant": ("radius",),
    "linear": ("radius_start", "radius_end"),
    "coalesce_step": ("radius_1", "radius_2"),
}


def read_schedule_json(path):
    """Parse a cavity schedule JSON; errors name the offending segment."""
    if not os.path.exists(path):
        raise _CliInputError(f"schedule file not found: {path}")
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise _CliInputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise _CliInputError(f"{path}: schedule must be a JSON object")
    allowed = {"source_mass", "observer_radius", "host_density_contrast",
               "segments"}
    unknown = set(data) - allowed
    if unknown:
        raise _CliInputError(
            f"{path}: unknown key(s): {', '.join(sorted(unknown))}")
    missing = allowed - set(data)
    if missing:
        raise _CliInputError(
            f"{path}: missing key(s): {', '.join(sorted(missing))}")
    if not isinstance(data["segments"], list):
        raise _CliInputError(f"{path}: segments must be an array")
    segments = []
    for i, seg in enumerate(data["segments"]):
        where = f"{path}: segment {i}"
        if not isinstance(seg, dict):
            raise _CliInputError(f"{where}: must be an object")
        for key in ("t_start", "t_end", "kind", "params"):
            if key not in seg:
                raise _CliInputError(f"{where}: missing key {key!r}")
        unknown = set(seg) - {"t_start", "t_end", "kind", "params"}
        if unknown:
            raise _CliInputError(
                f"{where}: unknown key(s): {', '.join(sorted(unknown))}")
        kind = seg["kind"]
        param_keys = _SEGMENT_PARAM_KEYS.get(kind)
        if param_keys is None:
            raise _CliInputError(
                f"{where}: unknown kind {kind!r}; expected one of "
                f"{sorted(_SEGMENT_PARAM_KEYS)}")
        params_obj = seg["params"]
        if not isinstance(params_obj, dict) or set(params_obj) != set(param_keys):
            raise _CliInputError(
                f"{where}: params for kind {kind!r} must be an object with "
                f"key(s) {list(param_keys)}")
        try:
            segments.append(ScheduleSegment(
                t_start=float(seg["t_start"]), t_end=float(seg["t_end"]),
                kind=kind,
                params=tuple(float(params_obj[k]) for k in param_keys)))
        except (TypeError, ValueError):
            raise _CliInputError(f"{where}: non-numeric value") from None
    try:
        return CavitySchedule(
            segments=tuple(segments),
            source_mass=float(data["source_mass"]),
            observer_radius=float(data["observer_radius"]),
            host_density_contrast=float(data["host_density_contrast"]))
    except ScheduleError as exc:
        seg = f" (segment {exc.segment})" if exc.segment is not None else ""
        raise _CliInputError(f"{path}: {exc}{seg}") from exc
    except (TypeError, ValueError, NonPhysicalValueError) as exc:
        raise _CliInputError(f"{path}: {exc}") from exc


# -- report rendering --------------------------------------------------------

def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _preamble(report):
    lines = [f"# geopotent {report['command']}"]
    for section in ("constants", "earth", "inputs"):
        for key, value in report.get(section, {}).items():
            lines.append(f"# {section}.{key}={_fmt(value)}")
    return lines


def render_csv(report):
    lines = _preamble(report)
    if report["command"] == "pulse":
        lines.append(PULSE_HEADER)
        for row in report["rows"]:
            lines.append(",".join(_fmt(row[k]) for k in (
                "t_s", "source_radius_m", "potential_j_kg", "delta_u_j_kg",
                "delta_g_m_s2", "delta_v_s_m_s")))
        return "\n".join(lines) + "\n"
    if report.get("result"):
        lines.append("field,value")
        for key, value in report["result"].items():
            lines.append(f"{key},{_fmt(value)}")
    for table in report.get("tables", []):
        lines.append(",".join(table["columns"]))
        for row in table["rows"]:
            lines.append(",".join(_fmt(row[c]) for c in table["columns"]))
    return "\n".join(lines) + "\n"


def render_json(report):
    return json.dumps(report, indent=2) + "\n"


def emit(report, fmt, out_path):
    text = render_json(report) if fmt == "json" else render_csv(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _base_report(command, cfg: RunConfig):
    earth = cfg.earth
    return {
        "command": command,
        "constants": {"gamma": cfg.constants.gamma},
        "earth": {
            "mean_radius": earth.mean_radius,
            "mass": earth.mass,
            "mean_density": earth.mean_density,
            "surface_first_cosmic_velocity": earth.surface_first_cosmic_velocity,
            "gm": earth.gm,
        },
    }


# -- subcommands -------------------------------------------------------------

def cmd_direct(cfg: RunConfig, args):
    if args.p_g is not None:
        if args.p_g <= 0:
            raise _CliInputError(f"--p-g must be positive, got {args.p_g}")
        p_g, source = args.p_g, "flag"
    elif cfg.p_g_override is not None:
        p_g, source = cfg.p_g_override, "config_override"
    elif args.profile:
        grad = pressure_gradient_max(read_profile_csv(args.profile))
        p_g, source = grad.pressure_at_max, "profile_grad_p_max"
    else:
        raise MissingPressureSourceError(
            "no pressure source: pass --p-g, set p_g_override in the "
            "config, or pass --profile")
    phi_g = compression_potential(p_g, cfg.earth.mean_density)
    breakdown = direct_problem(cfg.earth, phi_g)
    report = _base_report("direct", cfg)
    report["inputs"] = {"p_g": p_g, "p_g_source": source,
                        "rho_g": cfg.earth.mean_density}
    report["result"] = {
        "u_surface_j_kg": breakdown.u_surface,
        "equipotential_surface_j_kg": breakdown.equipotential_surface,
        "compression_potential_j_kg": breakdown.compression_potential,
        "u_infinity_j_kg": breakdown.u_infinity,
    }
    return report


def cmd_inverse(cfg: RunConfig, args):
    if args.u_inf is None or not math.isfinite(args.u_inf) or args.u_inf <= 0:
        raise _CliInputError(f"--u-inf must be positive, got {args.u_inf}")
    result = inverse_problem(cfg.earth.gm, args.u_inf, cfg.earth.mean_radius)
    report = _base_report("inverse", cfg)
    report["inputs"] = {"u_infinity": args.u_inf}
    report["result"] = {
        "r0_m": result.r0,
        "depth_m": result.depth,
        "trend": result.trend.value,
    }
    rows = []
    for ref in cfg.boundaries:
        offset, within = locate_boundary(result, ref)
        rows.append({"boundary": ref.name, "radius_m": ref.radius,
                     "offset_m": offset, "within_layer": within})
    report["tables"] = [{
        "name": "boundaries",
        "columns": ["boundary", "radius_m", "offset_m", "within_layer"],
        "rows": rows,
    }]
    return report


def cmd_profile(cfg: RunConfig, args):
    profile = read_profile_csv(args.profile)
    gamma = cfg.constants.gamma
    total = enclosed_mass(profile, profile.body_radius)
    rho_mean = mean_density(profile)
    grad = pressure_gradient_max(profile)
    bound = homogeneity_bound(profile, gamma)
    report = _base_report("profile", cfg)
    report["inputs"] = {"profile": args.profile}
    report["result"] = {
        "body_radius_m": profile.body_radius,
        "total_mass_kg": total,
        "mean_density_kg_m3": rho_mean,
        "grad_p_radius_m": grad.radius_at_max,
        "grad_p_pressure_pa": grad.pressure_at_max,
        "grad_p_gradient_pa_m": grad.gradient_magnitude,
        "homogeneity_integral_j_kg": bound.integral_side,
        "homogeneity_uniform_j_kg": bound.uniform_side,
        "homogeneity_holds": bound.holds,
        "homogeneity_relative_gap": bound.relative_gap,
    }
    rows = []
    for ref in cfg.boundaries:
        if not (0.0 < ref.radius < profile.body_radius):
            continue
        rows.append({
            "boundary": ref.name,
            "radius_m": ref.radius,
            "equilibrium_gravity_m_s2":
                core_equilibrium_gravity(profile, ref.radius),
        })
    report["tables"] = [{
        "name": "core_equilibrium",
        "columns": ["boundary", "radius_m", "equilibrium_gravity_m_s2"],
        "rows": rows,
    }]
    return report


def _parse_float_list(text, flag):
    try:
        values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise _CliInputError(f"{flag} must be a comma-separated list of "
                             f"numbers, got {text!r}") from None
    if not values:
        raise _CliInputError(f"{flag} is empty")
    return values


def _background(cfg: RunConfig, args):
    default = surface_background(cfg.earth)
    u_inf = args.u_inf if args.u_inf is not None else default.u_infinity
    u0 = args.u0 if args.u0 is not None else default.u0
    g0 = args.g0 if args.g0 is not None else default.g0
    if u0 <= 0 or g0 <= 0 or u_inf <= 0:
        raise _CliInputError("--u0, --g0 and --u-inf must be positive")
    return BackgroundState(u0=u0, g0=g0, u_infinity=u_inf)


def cmd_anomaly(cfg: RunConfig, args):
    try:
        source = AnomalySource(depth=args.depth, radius=args.radius,
                               density_contrast=args.density_contrast)
    except NonPhysicalValueError as exc:
        raise _CliInputError(str(exc)) from exc
    offsets = _parse_float_list(args.offsets, "--offsets")
    for off in offsets:
        if off < source.depth:
            raise _CliInputError(
                f"--offsets entries must be >= source depth {source.depth}, "
                f"got {off}")
    background = _background(cfg, args)
    gamma = cfg.constants.gamma
    rows = []
    for off in offsets:
        pair = sensitivity_coefficients(off, source.radius, gamma)
        moved = AnomalySource(depth=off, radius=source.radius,
                              density_contrast=source.density_contrast)
        sig = sphere_anomaly(moved, background, gamma)
        rows.append({
            "offset_m": off,
            "k1": pair.k1,
            "k2": pair.k2,
            "k_ratio": pair.ratio,
            "delta_u_j_kg": sig.delta_u,
            "delta_g_m_s2": sig.delta_g,
            "delta_v_s_m_s": sig.delta_v_s,
            "relative_u": sig.relative_u,
            "relative_g": sig.relative_g,
            "advantage": sig.relative_u / sig.relative_g,
        })
    report = _base_report("anomaly", cfg)
    report["inputs"] = {
        "depth": source.depth,
        "radius": source.radius,
        "density_contrast": source.density_contrast,
        "u0": background.u0,
        "g0": background.g0,
        "u_infinity": background.u_infinity,
    }
    report["tables"] = [{
        "name": "signals",
        "columns": ["offset_m", "k1", "k2", "k_ratio", "delta_u_j_kg",
                    "delta_g_m_s2", "delta_v_s_m_s", "relative_u",
                    "relative_g", "advantage"],
        "rows": rows,
    }]
    return report


def cmd_pulse(cfg: RunConfig, args):
    schedule = read_schedule_json(args.schedule)
    if args.times:
        times = sorted(_parse_float_list(args.times, "--times"))
    else:
        n = args.num_samples
        if n < 2:
            raise _CliInputError(f"--num-samples must be >= 2, got {n}")
        span = schedule.t_end - schedule.t_start
        times = [schedule.t_start + span * i / (n - 1) for i in range(n)]
    for t in times:
        if not (schedule.t_start <= t <= schedule.t_end):
            raise _CliInputError(
                f"--times entry {t} outside schedule span "
                f"[{schedule.t_start}, {schedule.t_end}]")
    samples = evaluate_schedule(schedule, times,
                                background=surface_background(cfg.earth),
                                gamma=cfg.constants.gamma)
    report = _base_report("pulse", cfg)
    report["inputs"] = {
        "schedule": args.schedule,
        "source_mass": schedule.source_mass,
        "observer_radius": schedule.observer_radius,
        "host_density_contrast": schedule.host_density_contrast,
    }
    report["rows"] = [{
        "t_s": s.t,
        "source_radius_m": s.source_radius,
        "potential_j_kg": s.potential,
        "delta_u_j_kg": s.delta_u,
        "delta_g_m_s2": s.delta_g,
        "delta_v_s_m_s": s.delta_v_s,
    } for s in samples]
    return report


# -- entry point -------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="geopotent",
        description="Absolute gravitational potential toolkit for "
                    "spherically symmetric bodies.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help=f"JSON config path (default: "
                                        f"${ENV_CONFIG} if set)")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="output format (default: config or csv)")
        p.add_argument("--out", default=None,
                       help="output path (default: config or stdout)")

    p = sub.add_parser("direct", help="surface balance -> at-infinity potential")
    common(p)
    p.add_argument("--p-g", type=float, default=None, dest="p_g",
                   help="characteristic pressure, Pa")
    p.add_argument("--profile", help="profile CSV supplying the pressure curve")

    p = sub.add_parser("inverse", help="at-infinity potential -> "
                                       "characteristic radius")
    common(p)
    p.add_argument("--u-inf", type=float, required=True, dest="u_inf",
                   help="at-infinity potential, J/kg")

    p = sub.add_parser("profile", help="profile CSV -> mass, mean density, "
                                       "grad-P, diagnostics")
    common(p)
    p.add_argument("--profile", required=True, help="profile CSV path")

    p = sub.add_parser("anomaly", help="buried sphere -> detectability table")
    common(p)
    p.add_argument("--depth", type=float, required=True,
                   help="source center depth, m")
    p.add_argument("--radius", type=float, required=True,
                   help="source radius, m")
    p.add_argument("--density-contrast", type=float, required=True,
                   dest="density_contrast",
                   help="signed density contrast, kg/m^3")
    p.add_argument("--offsets", required=True,
                   help="comma-separated observation distances, m")
    p.add_argument("--u0", type=float, default=None,
                   help="background potential at the observer, J/kg")
    p.add_argument("--g0", type=float, default=None,
                   help="background gravity at the observer, m/s^2")
    p.add_argument("--u-inf", type=float, default=None, dest="u_inf",
                   help="background at-infinity potential, J/kg")

    p = sub.add_parser("pulse", help="cavity schedule -> precursor time series")
    common(p)
    p.add_argument("--schedule", required=True, help="schedule JSON path")
    p.add_argument("--times", default=None,
                   help="comma-separated sample times, s")
    p.add_argument("--num-samples", type=int, default=25, dest="num_samples",
                   help="uniform sample count when --times is absent")

    return parser


_COMMANDS = {
    "direct": cmd_direct,
    "inverse": cmd_inverse,
    "profile": cmd_profile,
    "anomaly": cmd_anomaly,
    "pulse": cmd_pulse,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        cfg = resolve_config(args.config)
        report = _COMMANDS[args.command](cfg, args)
        fmt = args.format or cfg.output_format
        out_path = args.out or cfg.output_path
        emit(report, fmt, out_path)
        return EXIT_OK
    except (_CliInputError, *_INPUT_ERRORS) as exc:
        print(f"geopotent: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _DOMAIN_ERRORS as exc:
        print(f"geopotent: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry():
    sys.exit(main())
