"""Scenario configuration: INI sections per module, every key validated.

Schema (all sections optional unless a command needs them)::

    [scenario]     name, state = step | sine | gaussian, k0, sigma
    [barrier]      strength, kind = real | imaginary | absent, position
    [grid]         x_min, x_max, n_x, t_min, t_max, n_t, t_spacing = linear | log
    [expand]       kind = transmitted | reflected | sine | imaginary, x, order
    [interferometer] c1, x, model = exact | expansion | shorttime
    [oracle]       dx, dt, x_min, x_max, sigma, k0, spectral_tolerance, cn_tolerance
    [classifier]   source = interferometer | direct, x, real_band, imaginary_band,
                   r2_min, noise_floor, t_window_min, t_window_max
    [output]       format = csv | json, safety_factor

Unknown sections or keys raise :class:`~deltabarrier.errors.ConfigurationError`
naming the offending entry.
"""

from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigurationError
from .model import BarrierSpec, Gaussian, SineFront, StepPlane
from .short_time import DEFAULT_SAFETY_FACTOR

__all__ = [
    "ScenarioConfig",
    "load_config",
    "parse_config",
    "preset_names",
    "load_preset",
]


@dataclass
class ScenarioSection:
    name: str = "scenario"
    state: str = "step"
    k0: float = 30.0
    sigma: float = 0.2


@dataclass
class BarrierSection:
    strength: float = 3.0
    kind: str = "real"
    position: float = 1.0


@dataclass
class GridSection:
    x_min: float = -1.0
    x_max: float = 3.0
    n_x: int = 401
    t_min: float = 0.04
    t_max: float = 0.04
    n_t: int = 1
    t_spacing: str = "linear"


@dataclass
class ExpandSection:
    kind: str = "transmitted"
    x: float = 2.0
    order: int = 3


@dataclass
class InterferometerSection:
    c1: float = 0.7
    x: float = 10.0
    model: str = "exact"


@dataclass
class OracleSection:
    dx: float = 1e-3
    dt: float = 1e-4
    x_min: float = -4.0
    x_max: float = 8.0
    sigma: float = 0.2
    k0: float = 5.0
    spectral_tolerance: float = 1e-6
    cn_tolerance: float = 1e-3


@dataclass
class ClassifierSection:
    source: str = "interferometer"
    x: float = 10.0
    real_band: float = 0.25
    imaginary_band: float = 0.25
    r2_min: float = 0.995
    noise_floor: float = 1e-12
    t_window_min: float = 0.0
    t_window_max: float = 0.0


@dataclass
class OutputSection:
    format: str = "csv"
    safety_factor: float = DEFAULT_SAFETY_FACTOR


_CHOICES = {
    ("scenario", "state"): ("step", "sine", "gaussian"),
    ("barrier", "kind"): ("real", "imaginary", "absent"),
    ("grid", "t_spacing"): ("linear", "log"),
    ("expand", "kind"): ("transmitted", "reflected", "sine", "imaginary"),
    ("interferometer", "model"): ("exact", "expansion", "shorttime"),
    ("classifier", "source"): ("interferometer", "direct"),
    ("output", "format"): ("csv", "json"),
}


@dataclass
class ScenarioConfig:
    scenario: ScenarioSection = field(default_factory=ScenarioSection)
    barrier: BarrierSection = field(default_factory=BarrierSection)
    grid: GridSection = field(default_factory=GridSection)
    expand: ExpandSection = field(default_factory=ExpandSection)
    interferometer: InterferometerSection = field(default_factory=InterferometerSection)
    oracle: OracleSection = field(default_factory=OracleSection)
    classifier: ClassifierSection = field(default_factory=ClassifierSection)
    output: OutputSection = field(default_factory=OutputSection)

    def as_dict(self):
        return asdict(self)

    # derived objects; ValueError from the model types is re-raised with the field name
    def barrier_spec(self) -> BarrierSpec:
        b = self.barrier
        return _checked("barrier", lambda: BarrierSpec(b.strength, b.kind, b.position))

    def initial_state(self):
        s = self.scenario
        if s.state == "step":
            return _checked("scenario.k0", lambda: StepPlane(s.k0))
        if s.state == "sine":
            return _checked("scenario.k0", lambda: SineFront(s.k0))
        return _checked("scenario", lambda: Gaussian(s.sigma, s.k0))

    def t_grid(self):
        g = self.grid
        if g.t_spacing == "log":
            return np.logspace(np.log10(g.t_min), np.log10(g.t_max), g.n_t)
        return np.linspace(g.t_min, g.t_max, g.n_t)

    def x_grid(self):
        return np.linspace(self.grid.x_min, self.grid.x_max, self.grid.n_x)

    def validate(self):
        self.barrier_spec()
        self.initial_state()
        g = self.grid
        if g.n_x < 1 or g.n_t < 1:
            raise ConfigurationError("[grid] n_x and n_t must be >= 1")
        if g.x_max < g.x_min or (g.n_x > 1 and g.x_max == g.x_min):
            raise ConfigurationError("[grid] x_max must exceed x_min")
        if not g.t_min > 0 or g.t_max < g.t_min or (g.n_t > 1 and g.t_max == g.t_min):
            raise ConfigurationError("[grid] t_min must be > 0 and below t_max")
        if not 0 <= self.interferometer.c1 <= 1:
            raise ConfigurationError("[interferometer] c1 must lie in [0, 1]")
        if self.expand.order not in (1, 2, 3):
            raise ConfigurationError("[expand] order must be 1, 2 or 3")
        o = self.oracle
        if not (o.dx > 0 and o.dt > 0 and o.x_max > o.x_min):
            raise ConfigurationError("[oracle] dx, dt must be > 0 and x_max > x_min")
        c = self.classifier
        if (c.t_window_min, c.t_window_max) != (0.0, 0.0) and not 0 < c.t_window_min < c.t_window_max:
            raise ConfigurationError("[classifier] t_window_min/t_window_max must satisfy 0 < min < max")
        if not self.output.safety_factor >= 1:
            raise ConfigurationError("[output] safety_factor must be >= 1")
        return self


def _checked(name, build):
    try:
        return build()
    except ValueError as exc:
        raise ConfigurationError(f"[{name}] {exc}") from exc


def parse_config(text: str, source="<string>") -> ScenarioConfig:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigurationError(f"{source}: {exc}") from exc
    cfg = ScenarioConfig()
    sections = {f.name: f for f in fields(ScenarioConfig)}
    for section in parser.sections():
        if section not in sections:
            raise ConfigurationError(f"{source}: unknown section [{section}]")
        target = getattr(cfg, section)
        known = {f.name: f for f in fields(target)}
        for key, raw in parser.items(section):
            if key not in known:
                raise ConfigurationError(f"{source}: unknown key '{key}' in [{section}]")
            setattr(target, key, _convert(section, key, raw, getattr(target, key)))
    return cfg.validate()


def _convert(section, key, raw, default):
    raw = raw.strip()
    try:
        if isinstance(default, bool):
            return raw.lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            value = float(raw)
            if not np.isfinite(value):
                raise ValueError("not finite")
            return value
    except ValueError:
        raise ConfigurationError(f"[{section}] {key}: cannot parse {raw!r} as {type(default).__name__}") from None
    choices = _CHOICES.get((section, key))
    if choices is not None and raw not in choices:
        raise ConfigurationError(f"[{section}] {key}: {raw!r} is not one of {', '.join(choices)}")
    return raw


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, source=str(path))


def _preset_dir():
    return resources.files("deltabarrier") / "presets"


def preset_names():
    return sorted(p.name[:-4] for p in _preset_dir().iterdir() if p.name.endswith(".ini"))


def load_preset(name) -> ScenarioConfig:
    entry = _preset_dir() / f"{name}.ini"
    if not entry.is_file():
        raise ConfigurationError(f"unknown preset '{name}'; available: {', '.join(preset_names())}")
    return parse_config(entry.read_text(), source=f"preset:{name}")
