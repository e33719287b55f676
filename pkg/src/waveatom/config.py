"""Dataset configuration: schema, JSON round-trip, named presets.

A config file is a JSON object with the format-defining fields::

    {
      "format_version": 1,
      "classes": 1000,
      "instances": 1000,
      "master_seed": 42,
      "image_width": 512,
      "image_height": 512,
      "ranges": {
        "num_orbits": [1, 200],
        "radius_x": [1.0, 400.0],
        "radius_y": [1.0, 400.0],
        "orbit_interval": 1.0,
        "frequency": [0, 20],
        "amplitude": 0.5,
        "quantization": [200, 1000],
        "noise_level": [0.0, 1.0],
        "line_thickness": 1,
        "line_color": [0.0, 1.0],
        "nucleus": [-1.0, 1.0],
        "per_orbit_waves": false
      }
    }

Every range accepts either a [min, max] pair or a single fixed value.
Missing keys fall back to the baseline defaults above. Worker count and
output directory are execution details, not format: they never appear in
config echoes or manifests, because identical configs must produce
byte-identical datasets regardless of how they were scheduled.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .sampling import SamplingRanges

FORMAT_VERSION = 1

WORKERS_ENV_VAR = "WAVEATOM_WORKERS"


class ConfigError(ValueError):
    """Raised for malformed or out-of-contract configuration input."""


@dataclass(frozen=True)
class DatasetConfig:
    """Everything needed to regenerate a dataset, plus execution knobs."""

    classes: int
    instances: int
    master_seed: int = 0
    ranges: SamplingRanges = field(default_factory=SamplingRanges)
    image_width: int = 512
    image_height: int = 512
    workers: int = 0  # 0 = resolve from env var / CPU count
    output_root: Path | None = None

    def __post_init__(self) -> None:
        if self.classes < 1 or self.instances < 1:
            raise ConfigError(
                f"need at least 1 class and 1 instance, got C={self.classes}, N={self.instances}"
            )
        if self.image_width < 16 or self.image_height < 16:
            raise ConfigError("image size must be at least 16x16")
        if self.workers < 0:
            raise ConfigError("workers must be >= 0")
        if self.output_root is not None:
            object.__setattr__(self, "output_root", Path(self.output_root))

    @property
    def total_images(self) -> int:
        return self.classes * self.instances

    def resolve_workers(self) -> int:
        """Effective worker count: explicit > env var > CPU count."""
        if self.workers > 0:
            return self.workers
        env = os.environ.get(WORKERS_ENV_VAR, "").strip()
        if env:
            try:
                value = int(env)
            except ValueError:
                raise ConfigError(f"{WORKERS_ENV_VAR} must be an integer, got {env!r}") from None
            if value > 0:
                return value
        return os.cpu_count() or 1


def _pair(value, name: str, integer: bool):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"ranges.{name}: expected [min, max], got {value!r}")
        lo, hi = value
    else:
        lo = hi = value
    if integer:
        if not (isinstance(lo, int) and isinstance(hi, int)):
            raise ConfigError(f"ranges.{name}: bounds must be integers, got {value!r}")
        return (lo, hi)
    return (float(lo), float(hi))


def ranges_to_dict(ranges: SamplingRanges) -> dict:
    out = {}
    for f in dataclasses.fields(ranges):
        value = getattr(ranges, f.name)
        if f.name == "per_orbit_waves":
            out[f.name] = value
        else:
            out[f.name] = list(value)
    return out


def ranges_from_dict(data: dict) -> SamplingRanges:
    if not isinstance(data, dict):
        raise ConfigError(f"ranges: expected an object, got {type(data).__name__}")
    known = {f.name for f in dataclasses.fields(SamplingRanges)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"ranges: unknown keys {sorted(unknown)}")
    kwargs = {}
    for name, value in data.items():
        if name == "per_orbit_waves":
            kwargs[name] = bool(value)
        else:
            kwargs[name] = _pair(value, name, integer=name in SamplingRanges._INT_FIELDS)
    try:
        return SamplingRanges(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def config_to_dict(config: DatasetConfig) -> dict:
    """Format-defining fields only; see the module docstring."""
    return {
        "format_version": FORMAT_VERSION,
        "classes": config.classes,
        "instances": config.instances,
        "master_seed": config.master_seed,
        "image_width": config.image_width,
        "image_height": config.image_height,
        "ranges": ranges_to_dict(config.ranges),
    }


def config_from_dict(data: dict, **overrides) -> DatasetConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config: expected an object, got {type(data).__name__}")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ConfigError(f"unsupported config format_version {version}")
    known = {"format_version", "classes", "instances", "master_seed", "image_width", "image_height", "ranges"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"config: unknown keys {sorted(unknown)}")
    kwargs = {
        "classes": data.get("classes", 1),
        "instances": data.get("instances", 1),
        "master_seed": data.get("master_seed", 0),
        "image_width": data.get("image_width", 512),
        "image_height": data.get("image_height", 512),
        "ranges": ranges_from_dict(data.get("ranges", {})),
    }
    kwargs.update(overrides)
    try:
        return DatasetConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path, **overrides) -> DatasetConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return config_from_dict(data, **overrides)


def save_config(config: DatasetConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(config), indent=2) + "\n")


def _build_presets() -> dict[str, SamplingRanges]:
    base = SamplingRanges()
    presets = {"baseline": base}
    for lo, hi in [(0, 20), (0, 40), (0, 60), (2, 20), (10, 20), (20, 20)]:
        presets[f"freq-{lo}-{hi}"] = replace(base, frequency=(lo, hi))
    for lo, hi in [(1, 200), (20, 200), (100, 200), (200, 200)]:
        presets[f"orbits-{lo}-{hi}"] = replace(base, num_orbits=(lo, hi))
    for lo, hi in [(200, 1000), (800, 1000), (3, 200), (3, 500), (3, 1000)]:
        presets[f"quant-{lo}-{hi}"] = replace(base, quantization=(lo, hi))
    for lo, hi in [(0.5, 0.5), (0.0, 0.5), (1.0, 1.0), (0.5, 1.0), (0.0, 1.0)]:
        presets[f"amp-{lo:g}-{hi:g}"] = replace(base, amplitude=(lo, hi))
    return presets


PRESETS: dict[str, SamplingRanges] = _build_presets()


def preset_ranges(name: str) -> SamplingRanges:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None


def list_presets() -> list[str]:
    return sorted(PRESETS)
