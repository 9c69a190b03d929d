"""Experiment configuration: JSON parsing, validation and canonical echo.

Configs are plain JSON with five blocks (protocol, system, grid, integrator,
ensemble) plus an output block. Validation rejects unknown keys and checks
every module-level precondition before any computation; errors carry the
dotted path of the offending field. A parsed config can be serialized back to
a canonical dict that reparses to an equal config, which is how the CSV
preamble echo round-trips.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .core import SystemParams
from .dynamics import IntegratorConfig
from .protocols import ProtocolSpec, SQRT2
from .sweep import EnsembleDistribution, SweepGrid


class ConfigError(ValueError):
    """Configuration validation failure, tagged with the field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _require_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected an object, got {type(obj).__name__}")
    return obj


def _reject_unknown(obj: dict, allowed: tuple[str, ...], path: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}.{unknown[0]}" if path else unknown[0],
                          "unknown key")


def _get_number(obj: dict, key: str, path: str, default=None,
                allow_none: bool = False):
    if key not in obj:
        if default is None and not allow_none:
            raise ConfigError(f"{path}.{key}", "missing required value")
        return default
    value = obj[key]
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}", f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{path}.{key}", "value must be finite")
    return float(value)


def _get_bool(obj: dict, key: str, path: str, default: bool) -> bool:
    value = obj.get(key, default)
    if not isinstance(value, bool):
        raise ConfigError(f"{path}.{key}", f"expected true/false, got {value!r}")
    return value


@dataclass(frozen=True)
class OutputSpec:
    """Output paths; the CSV is required, the JSON mirror optional."""

    csv: str
    json: str | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    protocol: ProtocolSpec
    system: SystemParams
    grid: SweepGrid
    integrator: IntegratorConfig
    ensemble: EnsembleDistribution | None
    output: OutputSpec

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = _require_mapping(data, "config")
        _reject_unknown(data, ("protocol", "system", "grid", "integrator",
                               "ensemble", "output"), "")
        protocol = _parse_protocol(data.get("protocol"))
        system = _parse_system(data.get("system", {}))
        grid = _parse_grid(data.get("grid"))
        integrator = _parse_integrator(data.get("integrator", {}))
        ensemble = _parse_ensemble(data.get("ensemble"))
        output = _parse_output(data.get("output"))
        return cls(protocol=protocol, system=system, grid=grid,
                   integrator=integrator, ensemble=ensemble, output=output)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError("config", f"invalid JSON: {err}") from err
        return cls.from_dict(data)

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_dict(self) -> dict:
        """Canonical JSON-ready dict; from_dict(to_dict()) == self."""
        grid: dict = {"delta": {"values": list(self.grid.delta_values)}}
        if self.grid.secondary_name is not None:
            grid["secondary"] = {"name": self.grid.secondary_name,
                                 "values": list(self.grid.secondary_values)}
        out: dict = {
            "protocol": {
                "burn": {"omega_max": self.protocol.burn_omega_max,
                         "tau": self.protocol.burn_tau},
                "unburn": [{"omega_max": o, "offset": d}
                           for o, d in self.protocol.unburn],
                "unburn_tau": self.protocol.unburn_tau,
                "sigma": self.protocol.sigma,
            },
            "system": {
                "gamma21": self.system.gamma21,
                "gamma23": self.system.gamma23,
                "Gamma": self.system.Gamma,
                "omega13": self.system.omega13,
                "cross_coupling": self.system.cross_coupling,
            },
            "grid": grid,
            "integrator": {
                "base_step": self.integrator.base_step,
                "tolerance": self.integrator.tolerance,
                "max_refinements": self.integrator.max_refinements,
            },
            "ensemble": None if self.ensemble is None else {
                "shape": self.ensemble.shape,
                "center": self.ensemble.center,
                "width": self.ensemble.width,
            },
            "output": {"csv": self.output.csv, "json": self.output.json},
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _parse_protocol(obj) -> ProtocolSpec:
    if obj is None:
        raise ConfigError("protocol", "missing required block")
    obj = _require_mapping(obj, "protocol")
    _reject_unknown(obj, ("burn", "unburn", "unburn_tau", "sigma"), "protocol")
    burn = _require_mapping(obj.get("burn") or {}, "protocol.burn")
    if not burn:
        raise ConfigError("protocol.burn", "missing required block")
    _reject_unknown(burn, ("omega_max", "tau"), "protocol.burn")
    sigma = _get_number(obj, "sigma", "protocol", default=1.0)
    burn_omega = _get_number(burn, "omega_max", "protocol.burn")
    burn_tau = _get_number(burn, "tau", "protocol.burn", default=SQRT2 * sigma)
    unburn_tau = _get_number(obj, "unburn_tau", "protocol", default=-SQRT2 * sigma)
    unburn_raw = obj.get("unburn", [])
    if not isinstance(unburn_raw, list):
        raise ConfigError("protocol.unburn", "expected a list")
    unburn = []
    for k, entry in enumerate(unburn_raw):
        path = f"protocol.unburn[{k}]"
        entry = _require_mapping(entry, path)
        _reject_unknown(entry, ("omega_max", "offset"), path)
        omega_r = _get_number(entry, "omega_max", path)
        offset = _get_number(entry, "offset", path, default=0.0)
        if omega_r >= burn_omega:
            raise ConfigError(f"{path}.omega_max",
                              f"unburn amplitude {omega_r} must be below the "
                              f"burn amplitude {burn_omega}")
        unburn.append((omega_r, offset))
    try:
        return ProtocolSpec(burn_omega_max=burn_omega, burn_tau=burn_tau,
                            unburn=tuple(unburn), unburn_tau=unburn_tau,
                            sigma=sigma)
    except ValueError as err:
        raise ConfigError("protocol", str(err)) from err


def _parse_system(obj) -> SystemParams:
    obj = _require_mapping(obj, "system")
    _reject_unknown(obj, ("gamma21", "gamma23", "Gamma", "omega13",
                          "cross_coupling"), "system")
    values = {}
    for key in ("gamma21", "gamma23", "Gamma", "omega13"):
        values[key] = _get_number(obj, key, "system", default=0.0)
        if values[key] < 0:
            raise ConfigError(f"system.{key}", "must be nonnegative")
    cross = _get_bool(obj, "cross_coupling", "system", default=False)
    if cross and values["omega13"] <= 0:
        raise ConfigError("system.omega13",
                          "must be positive when cross_coupling is enabled")
    try:
        return SystemParams(delta=0.0, cross_coupling=cross, **values)
    except ValueError as err:
        raise ConfigError("system", str(err)) from err


def _parse_axis_values(obj, path: str) -> tuple[float, ...]:
    if isinstance(obj, list):
        values = obj
    else:
        obj = _require_mapping(obj, path)
        if "values" in obj:
            _reject_unknown(obj, ("values",), path)
            values = obj["values"]
            if not isinstance(values, list):
                raise ConfigError(f"{path}.values", "expected a list")
        else:
            _reject_unknown(obj, ("start", "stop", "step"), path)
            start = _get_number(obj, "start", path)
            stop = _get_number(obj, "stop", path)
            step = _get_number(obj, "step", path)
            if step <= 0:
                raise ConfigError(f"{path}.step", "must be positive")
            if stop < start:
                raise ConfigError(f"{path}.stop", "must not precede start")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            values = [start + k * step for k in range(count)]
    out = []
    for k, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{path}[{k}]", f"expected a number, got {v!r}")
        out.append(float(v))
    if not out:
        raise ConfigError(path, "axis is empty")
    return tuple(out)


def _parse_grid(obj) -> SweepGrid:
    if obj is None:
        raise ConfigError("grid", "missing required block")
    obj = _require_mapping(obj, "grid")
    _reject_unknown(obj, ("delta", "secondary"), "grid")
    if "delta" not in obj:
        raise ConfigError("grid.delta", "missing required value")
    delta = _parse_axis_values(obj["delta"], "grid.delta")
    name = None
    values = None
    if obj.get("secondary") is not None:
        sec = _require_mapping(obj["secondary"], "grid.secondary")
        _reject_unknown(sec, ("name", "values", "start", "stop", "step"),
                        "grid.secondary")
        name = sec.get("name")
        if not isinstance(name, str):
            raise ConfigError("grid.secondary.name", "expected a string")
        axis = {k: v for k, v in sec.items() if k != "name"}
        values = _parse_axis_values(axis, "grid.secondary")
    try:
        return SweepGrid(delta_values=delta, secondary_name=name,
                         secondary_values=values)
    except ValueError as err:
        raise ConfigError("grid", str(err)) from err


def _parse_integrator(obj) -> IntegratorConfig:
    obj = _require_mapping(obj, "integrator")
    _reject_unknown(obj, ("base_step", "tolerance", "max_refinements"), "integrator")
    base_step = _get_number(obj, "base_step", "integrator", allow_none=True)
    tolerance = _get_number(obj, "tolerance", "integrator", default=1e-8)
    max_ref = obj.get("max_refinements", 4)
    if isinstance(max_ref, bool) or not isinstance(max_ref, int):
        raise ConfigError("integrator.max_refinements", "expected an integer")
    try:
        return IntegratorConfig(base_step=base_step, tolerance=tolerance,
                                max_refinements=max_ref)
    except ValueError as err:
        raise ConfigError("integrator", str(err)) from err


def _parse_ensemble(obj) -> EnsembleDistribution | None:
    if obj is None:
        return None
    obj = _require_mapping(obj, "ensemble")
    _reject_unknown(obj, ("shape", "center", "width"), "ensemble")
    shape = obj.get("shape", "uniform")
    if not isinstance(shape, str):
        raise ConfigError("ensemble.shape", "expected a string")
    center = _get_number(obj, "center", "ensemble", default=0.0)
    width = _get_number(obj, "width", "ensemble", default=1.0)
    try:
        return EnsembleDistribution(shape=shape, center=center, width=width)
    except ValueError as err:
        raise ConfigError("ensemble", str(err)) from err


def _parse_output(obj) -> OutputSpec:
    if obj is None:
        raise ConfigError("output", "missing required block")
    obj = _require_mapping(obj, "output")
    _reject_unknown(obj, ("csv", "json"), "output")
    csv = obj.get("csv")
    if not isinstance(csv, str) or not csv:
        raise ConfigError("output.csv", "expected a nonempty path string")
    jsn = obj.get("json")
    if jsn is not None and not isinstance(jsn, str):
        raise ConfigError("output.json", "expected a path string or null")
    return OutputSpec(csv=csv, json=jsn)
