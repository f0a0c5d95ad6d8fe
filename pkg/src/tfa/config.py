"""Run configuration: YAML document, typed schema and validation with line diagnostics.

Example::

    defaults: water-air-25C
    state: {p: 101325, T: 298.15}
    fluids:
      plus:  {eos: acoustic, rho: 1000, c: 1500, mu: 1.0e-3}
      minus: {eos: ideal, gamma: 1.4, R: 287.0, mu: 1.8e-5, lam: 0.026}
    params: {kappa: 10, alpha_plus: 0.5}
    sweep: {variable: alpha, start: 0, stop: 1, num: 101, spacing: linear}
    outputs: {csv: out.csv, svg: out.svg}
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np
import yaml

from . import defaults
from .eos import (FluidCoeffs, IdealGas, InvalidStateError, StiffenedGas, acoustic_fluid,
                  coeffs_at)
from .mixture import MixtureState


class ConfigError(ValueError):
    def __init__(self, field_path: str, message: str, line: int | None = None):
        where = f"{field_path}" + (f" (line {line})" if line is not None else "")
        super().__init__(f"{where}: {message}")
        self.field_path = field_path
        self.line = line


SWEEP_VARIABLES = ("alpha", "k", "omega", "kappa", "Pr")
SPACINGS = ("linear", "log", "theta")
MODELS = ("one-fluid", "one-velocity", "two-velocity")


@dataclass(frozen=True)
class Sweep:
    variable: str
    start: float
    stop: float
    num: int
    spacing: str = "linear"

    def grid(self) -> np.ndarray:
        if self.spacing == "linear":
            return np.linspace(self.start, self.stop, self.num)
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.num)
        theta = np.linspace(self.start, self.stop, self.num)
        return 1.0 - 10.0 ** (-theta ** 2)


@dataclass(frozen=True)
class RunConfig:
    plus: FluidCoeffs
    minus: FluidCoeffs
    defaults_tag: str | None = None
    sweep: Sweep | None = None
    params: dict[str, Any] = field(default_factory=dict)
    csv: str | None = None
    svg: str | None = None

    def mixture(self, alpha_plus: float | None = None) -> MixtureState:
        a = self.params.get("alpha_plus", 0.5) if alpha_plus is None else alpha_plus
        return MixtureState(self.plus, self.minus, float(a))

    def param(self, name: str):
        return self.params.get(name, PARAM_DEFAULTS.get(name))


def _positive(x) -> bool:
    return x > 0


def _nonnegative(x) -> bool:
    return x >= 0


def _fraction(x) -> bool:
    return 0.0 <= x <= 1.0


PARAM_SCHEMA: dict[str, tuple[type, Callable[[Any], bool], str]] = {
    "alpha_plus": (float, _fraction, "must lie in [0, 1]"),
    "kappa": (float, _nonnegative, "must be >= 0"),
    "k": (float, _positive, "must be > 0"),
    "R": (float, _positive, "must be > 0"),
    "omega": (float, _positive, "must be > 0"),
    "Pr": (float, _positive, "must be > 0"),
    "lambda_plus": (float, _positive, "must be > 0"),
    "L": (float, _positive, "must be > 0"),
    "dPdT": (float, _positive, "must be > 0"),
    "Cp_plus": (float, _positive, "must be > 0"),
    "seed": (int, _nonnegative, "must be >= 0"),
    "tolerance": (float, _positive, "must be > 0"),
    "model": (str, lambda m: m in MODELS + ("all",), f"must be one of {MODELS + ('all',)}"),
}

PARAM_DEFAULTS: dict[str, Any] = {"alpha_plus": 0.5, "kappa": 10.0, "R": 1.0e-3,
                                  "model": "all", "seed": 0}

FLUID_KEYS = {
    "stiffened": {"gamma", "p_inf", "C_v", "e_ref"},
    "ideal": {"gamma", "R"},
    "acoustic": {"rho", "c", "gamma", "C_v"},
}
TRANSPORT_KEYS = {"mu", "lam", "mu_bulk"}
TOP_KEYS = {"defaults", "state", "fluids", "params", "sweep", "outputs"}


def _line_map(text: str) -> dict[str, int]:
    """Dotted key path -> 1-based line number, from the YAML node tree."""
    lines: dict[str, int] = {}

    def walk(node, prefix):
        if isinstance(node, yaml.MappingNode):
            for key, value in node.value:
                path = f"{prefix}.{key.value}" if prefix else str(key.value)
                lines[path] = key.start_mark.line + 1
                walk(value, path)

    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return lines
    walk(root, "")
    return lines


class _Validator:
    def __init__(self, lines: dict[str, int]):
        self.lines = lines

    def fail(self, path: str, message: str):
        line = self.lines.get(path)
        if line is None and "." in path:
            line = self.lines.get(path.rsplit(".", 1)[0])
        raise ConfigError(path, message, line)

    def mapping(self, value, path: str) -> dict:
        if value is None:
            return {}
        if not isinstance(value, dict):
            self.fail(path, "expected a mapping")
        return value

    def number(self, value, path: str, kind: type = float):
        if isinstance(value, str):
            # YAML 1.1 reads exponents without a dot, such as 4.9e8, as strings
            try:
                value = float(value)
            except ValueError:
                self.fail(path, f"expected a number, got {value!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(path, f"expected a number, got {value!r}")
        if kind is int:
            if isinstance(value, float) and not value.is_integer():
                self.fail(path, f"expected an integer, got {value!r}")
            return int(value)
        value = float(value)
        if not math.isfinite(value):
            self.fail(path, "must be finite")
        return value

    def unknown(self, data: dict, allowed: set, path: str):
        for key in data:
            if key not in allowed:
                sub = f"{path}.{key}" if path else str(key)
                self.fail(sub, f"unknown key; allowed: {sorted(allowed)}")


def _fluid(v: _Validator, data, path: str, p: float, T: float) -> FluidCoeffs:
    data = v.mapping(data, path)
    kind = data.get("eos")
    if kind not in FLUID_KEYS:
        v.fail(f"{path}.eos", f"must be one of {sorted(FLUID_KEYS)}")
    v.unknown(data, FLUID_KEYS[kind] | TRANSPORT_KEYS | {"eos"}, path)
    nums = {key: v.number(val, f"{path}.{key}") for key, val in data.items() if key != "eos"}
    transport = {key: nums.pop(key) for key in list(nums) if key in TRANSPORT_KEYS}
    for key, val in transport.items():
        if val < 0:
            v.fail(f"{path}.{key}", "must be >= 0")
    required = {"stiffened": {"gamma", "p_inf", "C_v"}, "ideal": {"gamma", "R"},
                "acoustic": {"rho", "c"}}[kind]
    missing = required - nums.keys()
    if missing:
        v.fail(path, f"missing keys {sorted(missing)} for eos '{kind}'")
    try:
        if kind == "acoustic":
            return acoustic_fluid(T=T, p=p, **nums, **transport)
        spec = StiffenedGas(**nums) if kind == "stiffened" else IdealGas(**nums)
        return coeffs_at(spec, p, T, **transport)
    except InvalidStateError as exc:
        v.fail(path, str(exc))


def _preset_fluids(tag: str, p: float, T: float) -> tuple[FluidCoeffs, FluidCoeffs]:
    plus_spec, minus_spec, plus_tr, minus_tr = defaults.PRESETS[tag]
    return coeffs_at(plus_spec, p, T, **plus_tr), coeffs_at(minus_spec, p, T, **minus_tr)


def config_from_mapping(data, lines: dict[str, int] | None = None) -> RunConfig:
    """Validate a parsed document and build the run configuration."""
    v = _Validator(lines or {})
    data = v.mapping(data, "<root>")
    v.unknown(data, TOP_KEYS, "")

    tag = data.get("defaults")
    if tag is not None and tag not in defaults.PRESETS:
        v.fail("defaults", f"unknown preset; available: {sorted(defaults.PRESETS)}")

    state = v.mapping(data.get("state"), "state")
    v.unknown(state, {"p", "T"}, "state")
    p = v.number(state.get("p", defaults.PRESSURE), "state.p")
    T = v.number(state.get("T", defaults.TEMPERATURE), "state.T")
    if T <= 0:
        v.fail("state.T", "must be > 0")

    fluids = v.mapping(data.get("fluids"), "fluids")
    v.unknown(fluids, {"plus", "minus"}, "fluids")
    preset = _preset_fluids(tag or "water-air-25C", p, T) if len(fluids) < 2 else (None, None)
    if tag is None and len(fluids) < 2 and fluids:
        v.fail("fluids", "give both 'plus' and 'minus', or name a 'defaults' preset")
    plus = _fluid(v, fluids["plus"], "fluids.plus", p, T) if "plus" in fluids else preset[0]
    minus = _fluid(v, fluids["minus"], "fluids.minus", p, T) if "minus" in fluids else preset[1]

    params_in = v.mapping(data.get("params"), "params")
    v.unknown(params_in, set(PARAM_SCHEMA), "params")
    params = {}
    for key, raw in params_in.items():
        kind, ok, msg = PARAM_SCHEMA[key]
        path = f"params.{key}"
        value = raw if kind is str else v.number(raw, path, kind)
        if kind is str and not isinstance(raw, str):
            v.fail(path, "expected a string")
        if not ok(value):
            v.fail(path, msg)
        params[key] = value

    sweep = None
    if data.get("sweep") is not None:
        s = v.mapping(data["sweep"], "sweep")
        v.unknown(s, {"variable", "start", "stop", "num", "spacing"}, "sweep")
        for key in ("variable", "start", "stop", "num"):
            if key not in s:
                v.fail(f"sweep.{key}", "required")
        if s["variable"] not in SWEEP_VARIABLES:
            v.fail("sweep.variable", f"must be one of {SWEEP_VARIABLES}")
        spacing = s.get("spacing", "linear")
        if spacing not in SPACINGS:
            v.fail("sweep.spacing", f"must be one of {SPACINGS}")
        start, stop = v.number(s["start"], "sweep.start"), v.number(s["stop"], "sweep.stop")
        num = v.number(s["num"], "sweep.num", int)
        if num < 1:
            v.fail("sweep.num", "must be >= 1")
        if num > 1 and start == stop:
            v.fail("sweep.stop", "range is empty (start == stop)")
        if spacing == "log" and (start <= 0 or stop <= 0):
            v.fail("sweep.start", "log spacing needs positive bounds")
        if spacing == "theta" and (start < 0 or stop < 0):
            v.fail("sweep.start", "theta bounds must be >= 0")
        sweep = Sweep(s["variable"], start, stop, num, spacing)
        if sweep.variable == "alpha" and spacing != "theta":
            if not (0 <= start <= 1 and 0 <= stop <= 1):
                v.fail("sweep.start", "alpha bounds must lie in [0, 1]")
        if sweep.variable in ("k", "omega", "Pr") and min(start, stop) <= 0:
            v.fail("sweep.start", f"{sweep.variable} must be > 0")
        if sweep.variable == "kappa" and min(start, stop) < 0:
            v.fail("sweep.start", "kappa must be >= 0")

    outputs = v.mapping(data.get("outputs"), "outputs")
    v.unknown(outputs, {"csv", "svg"}, "outputs")
    for key, val in outputs.items():
        if not isinstance(val, str) or not val:
            v.fail(f"outputs.{key}", "expected a path string")
    return RunConfig(plus, minus, tag, sweep, params, outputs.get("csv"), outputs.get("svg"))


def parse_config(text: str) -> RunConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError("<document>", f"invalid YAML: {getattr(exc, 'problem', exc)}",
                          mark.line + 1 if mark is not None else None) from exc
    return config_from_mapping(data, _line_map(text))


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a YAML configuration file (OSError propagates)."""
    return parse_config(Path(path).read_text(encoding="utf-8"))


def default_config(tag: str = "water-air-25C") -> RunConfig:
    return config_from_mapping({"defaults": tag})
