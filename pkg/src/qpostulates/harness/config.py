"""Experiment configuration and its INI-style serialisation."""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from ..errors import ConfigError
from ..homodyne import CORRECTION_METHODS, MEAN_CORRECT, PHOTON_CORRECT, HomodyneModel
from ..interferometer import SourceBank
from ..quaternion import Quaternion

_CANONICAL = SourceBank.canonical()


@dataclass(frozen=True)
class ExperimentConfig:
    alpha_A: Quaternion = _CANONICAL.alpha_A
    alpha_B: Quaternion = _CANONICAL.alpha_B
    alpha_C: Quaternion = _CANONICAL.alpha_C

    lo_amplitude: float = 100.0
    lo_phase: float = math.pi / 2
    transmissivity: float = math.sqrt(0.5)
    gain_1: float = 1.0
    gain_2: float = 1.0

    samples_per_config: int = 10_000
    runs: int = 500
    seed: int | None = None
    noise_free: bool = False

    # kappa and the exported photon numbers use `correction`; F uses `peres_correction`
    correction: str = PHOTON_CORRECT
    peres_correction: str = MEAN_CORRECT

    offset_std: float = 0.0
    drift_std: float = 0.0
    lock_loss_probability: float = 0.0

    outlier_threshold: float = 5.0
    peres_outlier_threshold: float = 10.0
    histogram_bins: str = "fd"

    def __post_init__(self):
        for name in ("alpha_A", "alpha_B", "alpha_C"):
            object.__setattr__(self, name, Quaternion.coerce(getattr(self, name)))
        self.validate()

    def validate(self) -> None:
        if self.samples_per_config < 1 or self.runs < 1:
            raise ConfigError("samples_per_config and runs must be at least 1")
        if not 0.0 <= self.lock_loss_probability <= 1.0:
            raise ConfigError(f"lock_loss_probability must lie in [0, 1], got {self.lock_loss_probability}")
        for name in ("correction", "peres_correction"):
            if getattr(self, name) not in CORRECTION_METHODS:
                raise ConfigError(f"{name} must be one of {CORRECTION_METHODS}")
        if self.offset_std < 0 or self.drift_std < 0:
            raise ConfigError("noise scales must be non-negative")
        if not (self.outlier_threshold > 0 and self.peres_outlier_threshold > 0):
            raise ConfigError("outlier thresholds must be positive (use inf to disable)")
        if self.seed is not None and self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        try:
            self.homodyne_model()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def bank(self) -> SourceBank:
        return SourceBank(self.alpha_A, self.alpha_B, self.alpha_C)

    def homodyne_model(self) -> HomodyneModel:
        return HomodyneModel(self.lo_amplitude, self.lo_phase, self.transmissivity, self.gain_1, self.gain_2)

    def filter_policy(self):
        from .aggregate import FilterPolicy

        bins = int(self.histogram_bins) if self.histogram_bins.isdigit() else self.histogram_bins
        return FilterPolicy(self.outlier_threshold, self.peres_outlier_threshold, bins)

    def to_dict(self) -> dict:
        out = asdict(self)
        for name in ("alpha_A", "alpha_B", "alpha_C"):
            out[name] = list(getattr(self, name).as_tuple())
        return out


SECTIONS = {
    "sources": ("alpha_A", "alpha_B", "alpha_C"),
    "homodyne": ("lo_amplitude", "lo_phase", "transmissivity", "gain_1", "gain_2"),
    "campaign": ("samples_per_config", "runs", "seed", "noise_free"),
    "correction": ("correction", "peres_correction"),
    "noise": ("offset_std", "drift_std", "lock_loss_probability"),
    "filter": ("outlier_threshold", "peres_outlier_threshold", "histogram_bins"),
}
_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _format(value) -> str:
    if isinstance(value, Quaternion):
        return ", ".join(repr(float(x)) for x in value.as_tuple())
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse(name: str, text: str):
    kind = _FIELD_TYPES[name]
    text = text.strip()
    try:
        if kind == "Quaternion":
            parts = [float(p) for p in text.split(",")]
            if len(parts) == 2:
                parts += [0.0, 0.0]
            if len(parts) != 4:
                raise ValueError("expected 2 or 4 comma-separated components")
            return Quaternion(*parts)
        if kind == "float":
            return float(text)
        if kind == "int":
            return int(text)
        if kind == "int | None":
            return None if text.lower() in ("", "none") else int(text)
        if kind == "bool":
            lowered = text.lower()
            if lowered not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError("expected a boolean")
            return lowered in ("true", "1", "yes")
        return text
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {text!r} ({exc})") from None


def dumps(cfg: ExperimentConfig) -> str:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    for section, names in SECTIONS.items():
        parser[section] = {name: _format(getattr(cfg, name)) for name in names}
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def loads(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable config: {exc}") from None
    values = {}
    for section in parser.sections():
        if section not in SECTIONS:
            raise ConfigError(f"unknown section [{section}]")
        for key, raw in parser[section].items():
            if key not in SECTIONS[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            values[key] = _parse(key, raw)
    return with_overrides(base or ExperimentConfig(), values)


def load(path: str | Path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return loads(text, base)


def save(cfg: ExperimentConfig, path: str | Path) -> None:
    Path(path).write_text(dumps(cfg))


def with_overrides(cfg: ExperimentConfig, values: dict) -> ExperimentConfig:
    unknown = set(values) - set(_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    try:
        return replace(cfg, **values)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def parse_assignment(text: str) -> tuple[str, object]:
    """Parse a ``key=value`` or ``section.key=value`` command-line override."""
    if "=" not in text:
        raise ConfigError(f"override {text!r} is not of the form key=value")
    key, raw = text.split("=", 1)
    key = key.strip().split(".")[-1]
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown config field {key!r}")
    return key, _parse(key, raw)
