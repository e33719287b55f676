"""Class-level and instance-level parameter sampling.

Parameters split into two groups. Group 1 is drawn once per class and
fixed -- it defines the category: orbit count and geometry, wave
frequencies and amplitudes, grid resolution, noise level. Group 2 is
re-drawn for every image to create intra-class variability: line
thickness, per-orbit gray levels, nucleus position, and fresh noise
realizations.

Both groups draw from seed-derived streams, so any (master_seed,
class_id, instance_id) triple regenerates identical values in any order
and on any worker. The draw order inside sample_class / sample_instance
is part of the dataset format; never reorder those calls.

Two classes may, with astronomically low probability, draw identical
group-1 tuples; no deduplication is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .geometry import NoiseRealization, WaveParams
from .rng import ParamStream, derive_seed, orbit_wave_seed


@dataclass(frozen=True)
class SamplingRanges:
    """Inclusive (min, max) range per sampled parameter.

    Defaults are the baseline configuration. A fixed value is expressed
    as min == max. Integer parameters need integer bounds.
    """

    num_orbits: tuple[int, int] = (1, 200)
    radius_x: tuple[float, float] = (1.0, 400.0)
    radius_y: tuple[float, float] = (1.0, 400.0)
    orbit_interval: tuple[float, float] = (1.0, 1.0)
    frequency: tuple[int, int] = (0, 20)
    amplitude: tuple[float, float] = (0.5, 0.5)
    quantization: tuple[int, int] = (200, 1000)
    noise_level: tuple[float, float] = (0.0, 1.0)
    line_thickness: tuple[int, int] = (1, 1)
    line_color: tuple[float, float] = (0.0, 1.0)
    nucleus: tuple[float, float] = (-1.0, 1.0)
    per_orbit_waves: bool = False

    _INT_FIELDS = ("num_orbits", "frequency", "quantization", "line_thickness")
    _POSITIVE = ("radius_x", "radius_y")
    _LOWER_BOUNDS = {
        "num_orbits": 1,
        "orbit_interval": 0.0,
        "frequency": 0,
        "amplitude": 0.0,
        "quantization": 3,
        "noise_level": 0.0,
        "line_thickness": 1,
        "line_color": 0.0,
        "nucleus": -1.0,
    }
    _UPPER_BOUNDS = {"line_color": 1.0, "nucleus": 1.0}

    def __post_init__(self) -> None:
        for f in fields(self):
            if f.name == "per_orbit_waves":
                continue
            pair = getattr(self, f.name)
            try:
                lo, hi = pair
            except (TypeError, ValueError):
                raise ValueError(f"{f.name}: expected a (min, max) pair, got {pair!r}") from None
            object.__setattr__(self, f.name, (lo, hi))
            if f.name in self._INT_FIELDS and not (
                isinstance(lo, (int, np.integer)) and isinstance(hi, (int, np.integer))
            ):
                raise ValueError(f"{f.name}: bounds must be integers, got {pair!r}")
            if lo > hi:
                raise ValueError(f"{f.name}: min {lo} > max {hi}")
            if f.name in self._POSITIVE and lo <= 0:
                raise ValueError(f"{f.name}: min must be positive, got {lo}")
            floor = self._LOWER_BOUNDS.get(f.name)
            if floor is not None and lo < floor:
                raise ValueError(f"{f.name}: min {lo} below the allowed minimum {floor}")
            ceil = self._UPPER_BOUNDS.get(f.name)
            if ceil is not None and hi > ceil:
                raise ValueError(f"{f.name}: max {hi} above the allowed maximum {ceil}")


@dataclass(frozen=True)
class ClassSpec:
    """Group-1 parameters, fixed per category."""

    class_id: int
    num_orbits: int
    radius_x: float
    radius_y: float
    orbit_interval: float
    freq1: int
    freq2: int
    amp1: float
    amp2: float
    num_points: int
    noise_level: float
    orbit_waves: tuple[WaveParams, ...] | None = None

    def wave_params(self, orbit_index: int) -> WaveParams:
        """Wave parameters for one orbit (shared unless per-orbit mode)."""
        if self.orbit_waves is not None:
            return self.orbit_waves[orbit_index]
        return WaveParams(self.freq1, self.freq2, self.amp1, self.amp2, self.noise_level)


@dataclass(frozen=True)
class InstanceSpec:
    """Group-2 parameters plus noise realizations, fresh per image."""

    instance_id: int
    line_thickness: int
    orbit_colors: tuple[float, ...]
    nucleus: tuple[float, float]
    noises: tuple[NoiseRealization, ...]


def sample_class(master_seed: int, class_id: int, ranges: SamplingRanges) -> ClassSpec:
    """Draw one class's group-1 parameters from its derived stream.

    Frozen draw order: num_orbits, radius_x, radius_y, orbit_interval,
    freq1, freq2, amp1, amp2, quantization, noise_level; then, in
    per-orbit mode, (freq1, freq2, amp1, amp2) for each orbit from an
    orbit-indexed sub-stream.
    """
    if class_id < 0:
        raise ValueError("class_id must be non-negative")
    stream = ParamStream(derive_seed(master_seed, class_id))
    num_orbits = stream.integer(*ranges.num_orbits)
    radius_x = stream.uniform(*ranges.radius_x)
    radius_y = stream.uniform(*ranges.radius_y)
    orbit_interval = stream.uniform(*ranges.orbit_interval)
    freq1 = stream.integer(*ranges.frequency)
    freq2 = stream.integer(*ranges.frequency)
    amp1 = stream.uniform(*ranges.amplitude)
    amp2 = stream.uniform(*ranges.amplitude)
    num_points = stream.integer(*ranges.quantization)
    noise_level = stream.uniform(*ranges.noise_level)

    orbit_waves = None
    if ranges.per_orbit_waves:
        class_seed = derive_seed(master_seed, class_id)
        waves = []
        for k in range(num_orbits):
            sub = ParamStream(orbit_wave_seed(class_seed, k))
            waves.append(
                WaveParams(
                    freq1=sub.integer(*ranges.frequency),
                    freq2=sub.integer(*ranges.frequency),
                    amp1=sub.uniform(*ranges.amplitude),
                    amp2=sub.uniform(*ranges.amplitude),
                    noise_level=noise_level,
                )
            )
        orbit_waves = tuple(waves)

    return ClassSpec(
        class_id=class_id,
        num_orbits=num_orbits,
        radius_x=radius_x,
        radius_y=radius_y,
        orbit_interval=orbit_interval,
        freq1=freq1,
        freq2=freq2,
        amp1=amp1,
        amp2=amp2,
        num_points=num_points,
        noise_level=noise_level,
        orbit_waves=orbit_waves,
    )


def sample_instance(
    master_seed: int, class_spec: ClassSpec, instance_id: int, ranges: SamplingRanges
) -> InstanceSpec:
    """Draw one image's group-2 parameters from its derived stream.

    Frozen draw order: line_thickness, one gray level per orbit, nucleus
    x then y, then one noise realization (num_points samples) per orbit.
    Noise is always drawn, even when the class noise level is zero, so
    streams stay aligned across configurations.
    """
    if instance_id < 0:
        raise ValueError("instance_id must be non-negative")
    stream = ParamStream(derive_seed(master_seed, class_spec.class_id, instance_id))
    thickness = stream.integer(*ranges.line_thickness)
    lo, hi = ranges.line_color
    colors = tuple(float(v) for v in stream.uniform_vec(lo, hi, class_spec.num_orbits))
    nucleus = (stream.uniform(*ranges.nucleus), stream.uniform(*ranges.nucleus))
    noises = tuple(
        NoiseRealization(2.0 * stream.unit(class_spec.num_points) - 1.0)
        for _ in range(class_spec.num_orbits)
    )
    return InstanceSpec(
        instance_id=instance_id,
        line_thickness=thickness,
        orbit_colors=colors,
        nucleus=nucleus,
        noises=noises,
    )


def class_spec_to_dict(spec: ClassSpec) -> dict:
    """Plain-JSON form of a class spec (used by manifest and CLI)."""
    out = {
        "class_id": spec.class_id,
        "num_orbits": spec.num_orbits,
        "radius_x": spec.radius_x,
        "radius_y": spec.radius_y,
        "orbit_interval": spec.orbit_interval,
        "freq1": spec.freq1,
        "freq2": spec.freq2,
        "amp1": spec.amp1,
        "amp2": spec.amp2,
        "num_points": spec.num_points,
        "noise_level": spec.noise_level,
    }
    if spec.orbit_waves is not None:
        out["orbit_waves"] = [
            {"freq1": w.freq1, "freq2": w.freq2, "amp1": w.amp1, "amp2": w.amp2}
            for w in spec.orbit_waves
        ]
    return out


def class_spec_from_dict(data: dict) -> ClassSpec:
    """Inverse of class_spec_to_dict."""
    waves = None
    if data.get("orbit_waves") is not None:
        waves = tuple(
            WaveParams(
                freq1=w["freq1"],
                freq2=w["freq2"],
                amp1=w["amp1"],
                amp2=w["amp2"],
                noise_level=data["noise_level"],
            )
            for w in data["orbit_waves"]
        )
    return ClassSpec(
        class_id=data["class_id"],
        num_orbits=data["num_orbits"],
        radius_x=data["radius_x"],
        radius_y=data["radius_y"],
        orbit_interval=data["orbit_interval"],
        freq1=data["freq1"],
        freq2=data["freq2"],
        amp1=data["amp1"],
        amp2=data["amp2"],
        num_points=data["num_points"],
        noise_level=data["noise_level"],
        orbit_waves=waves,
    )
