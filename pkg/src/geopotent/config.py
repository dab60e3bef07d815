"""Run configuration: defaults, JSON loading, strict validation.

Config files are JSON with the following optional keys (unknown keys are
rejected so typos fail loudly):

    constants      {"gamma": float}
    earth          {"mean_radius", "mass", "mean_density",
                    "surface_first_cosmic_velocity", "gm"} (all optional;
                    gm defaults to gamma * mass)
    p_g_override   float, Pa; used by the direct problem instead of a
                   profile-derived pressure
    boundaries     [{"name", "radius", "layer_half_thickness"}, ...]
    output_format  "csv" | "json"
    output_path    path, or "-" for stdout

The default boundary set ships the core-mantle boundary at 3.48e6 m and
the inner-core boundary at 1.2215e6 m (standard reference Earth values);
override via config when working with another body.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

from .core import DEFAULT_CONSTANTS, EarthParameters, PhysicalConstants
from .errors import ConfigError, NonPhysicalValueError
from .solver import BoundaryReference

ENV_CONFIG = "GEOPOTENT_CONFIG"

DEFAULT_BOUNDARIES = (
    BoundaryReference("CMB", 3.48e6, 1.5e5),
    BoundaryReference("ICB", 1.2215e6, 1.0e5),
)


@dataclass(frozen=True)
class RunConfig:
    constants: PhysicalConstants = DEFAULT_CONSTANTS
    earth: EarthParameters = EarthParameters()
    p_g_override: float | None = None
    boundaries: tuple = DEFAULT_BOUNDARIES
    output_format: str = "csv"
    output_path: str | None = None  # None = stdout


def default_config() -> RunConfig:
    return RunConfig()


def _check_keys(obj, allowed, where):
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ConfigError(
            f"unknown key(s) in {where}: {', '.join(sorted(unknown))}; "
            f"allowed: {', '.join(sorted(allowed))}")


def _number(obj, key, where):
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    return float(value)


def parse_config(data, source="config") -> RunConfig:
    """Build a RunConfig from a parsed JSON object."""
    if not isinstance(data, dict):
        raise ConfigError(f"{source} must be a JSON object")
    _check_keys(data, ("constants", "earth", "p_g_override", "boundaries",
                       "output_format", "output_path"), source)

    constants = DEFAULT_CONSTANTS
    if "constants" in data:
        block = data["constants"]
        if not isinstance(block, dict):
            raise ConfigError(f"{source}.constants must be an object")
        _check_keys(block, ("gamma",), f"{source}.constants")
        if "gamma" in block:
            constants = PhysicalConstants(_number(block, "gamma", f"{source}.constants"))

    earth_fields = {}
    if "earth" in data:
        block = data["earth"]
        if not isinstance(block, dict):
            raise ConfigError(f"{source}.earth must be an object")
        allowed = ("mean_radius", "mass", "mean_density",
                   "surface_first_cosmic_velocity", "gm")
        _check_keys(block, allowed, f"{source}.earth")
        earth_fields = {k: _number(block, k, f"{source}.earth") for k in block}
    try:
        earth = EarthParameters.with_constants(constants, **earth_fields)
    except NonPhysicalValueError as exc:
        raise ConfigError(f"{source}.earth: {exc}") from exc

    p_g_override = None
    if data.get("p_g_override") is not None:
        p_g_override = _number(data, "p_g_override", source)
        if p_g_override <= 0.0:
            raise ConfigError(f"{source}.p_g_override must be positive")

    boundaries = DEFAULT_BOUNDARIES
    if "boundaries" in data:
        block = data["boundaries"]
        if not isinstance(block, list):
            raise ConfigError(f"{source}.boundaries must be an array")
        parsed = []
        for i, item in enumerate(block):
            where = f"{source}.boundaries[{i}]"
            if not isinstance(item, dict):
                raise ConfigError(f"{where} must be an object")
            _check_keys(item, ("name", "radius", "layer_half_thickness"), where)
            try:
                name = str(item["name"])
                radius = _number(item, "radius", where)
                half = _number(item, "layer_half_thickness", where)
            except KeyError as exc:
                raise ConfigError(f"{where} is missing key {exc}") from exc
            try:
                parsed.append(BoundaryReference(name, radius, half))
            except NonPhysicalValueError as exc:
                raise ConfigError(f"{where}: {exc}") from exc
        boundaries = tuple(parsed)

    output_format = data.get("output_format", "csv")
    if output_format not in ("csv", "json"):
        raise ConfigError(
            f"{source}.output_format must be 'csv' or 'json', got "
            f"{output_format!r}")

    output_path = data.get("output_path")
    if output_path is not None:
        if not isinstance(output_path, str):
            raise ConfigError(f"{source}.output_path must be a string")
        if output_path == "-":
            output_path = None

    return RunConfig(constants=constants, earth=earth,
                     p_g_override=p_g_override, boundaries=boundaries,
                     output_format=output_format, output_path=output_path)


def load_config(path) -> RunConfig:
    """Load and validate a JSON config file."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return parse_config(data, source=path)


def resolve_config(path_flag) -> RunConfig:
    """Config from the --config flag, the environment, or defaults (in that order)."""
    path = path_flag or os.environ.get(ENV_CONFIG)
    if path:
        return load_config(path)
    return default_config()
