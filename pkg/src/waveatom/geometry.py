"""Orbit and wave mathematics behind every rendered contour.

A shape is a stack of concentric ellipses ("orbits"). Each orbit carries a
periodic radial wave -- two sinusoids plus scaled noise -- that displaces
the orbit outward or inward, and the displaced curve is sampled on a
regular angular grid to give a closed polyline. The union of all orbit
polylines is the atom shape handed to the rasterizer.

Everything here is a pure function of its inputs, computed in 64-bit
floats with trig evaluated per grid point (no incremental rotation
recurrences), so results are reproducible and safe to share across
workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from .sampling import ClassSpec

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OrbitParams:
    """Ellipse semi-axes in world units: `a` along x, `b` along y."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0.0 and self.b > 0.0):
            raise ValueError(f"orbit semi-axes must be positive, got a={self.a}, b={self.b}")


@dataclass(frozen=True)
class WaveParams:
    """Radial wave applied to one orbit.

    The wave value at angle t is

        amp1 * sin(freq1 * t) + amp2 * sin(freq2 * t) + noise_level * noise(t)

    with integer frequencies so the deterministic part is 2*pi-periodic.
    The noise term is supplied separately as a NoiseRealization sampled on
    the angular grid, which makes it periodic by construction.
    """

    freq1: int
    freq2: int
    amp1: float
    amp2: float
    noise_level: float = 0.0

    def __post_init__(self) -> None:
        if self.freq1 < 0 or self.freq2 < 0:
            raise ValueError("frequencies must be non-negative integers")
        if int(self.freq1) != self.freq1 or int(self.freq2) != self.freq2:
            raise ValueError("frequencies must be integers (periodicity requires it)")
        if self.amp1 < 0.0 or self.amp2 < 0.0 or self.noise_level < 0.0:
            raise ValueError("amplitudes and noise level must be non-negative")

    @property
    def bound(self) -> float:
        """Upper bound on |wave value|: amp1 + amp2 + noise_level."""
        return self.amp1 + self.amp2 + self.noise_level


@dataclass(frozen=True)
class NoiseRealization:
    """One period of an orbit's noise term, sampled on the angular grid.

    Holds one value in [-1, 1] per grid angle. Because the grid spans
    exactly one period, wrapping the samples reproduces a periodic noise
    function without ever defining it off-grid.
    """

    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("noise samples must be a 1-D sequence")
        if arr.size and (float(arr.min()) < -1.0 or float(arr.max()) > 1.0):
            raise ValueError("noise samples must lie in [-1, 1]")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return int(self.samples.size)


@dataclass(frozen=True)
class Polyline:
    """Closed polyline of grid-sampled wave points, in world units.

    Edge i joins points[i] to points[(i + 1) % len], so the final edge
    closes the curve back to the first point.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.points, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("polyline points must have shape (q, 2)")
        if arr.shape[0] < 3:
            raise ValueError("polyline needs at least 3 points")
        arr.flags.writeable = False
        object.__setattr__(self, "points", arr)

    def __len__(self) -> int:
        return int(self.points.shape[0])


@dataclass(frozen=True)
class AtomShape:
    """All orbit polylines of one shape, ascending orbit order."""

    polylines: tuple[Polyline, ...]

    def __post_init__(self) -> None:
        if len(self.polylines) < 1:
            raise ValueError("atom shape needs at least one orbit")

    def __len__(self) -> int:
        return len(self.polylines)


def orbit_point(orbit: OrbitParams, theta: float) -> tuple[float, float]:
    """Point on the orbit ellipse at angle theta: (a*cos t, b*sin t)."""
    return (orbit.a * math.cos(theta), orbit.b * math.sin(theta))


def orbit_sequence(radius_x: float, radius_y: float, interval: float, count: int) -> list[OrbitParams]:
    """Concentric orbit stack: orbit k has semi-axes grown by k * interval.

    The first orbit has semi-axes (radius_x, radius_y); each subsequent
    orbit adds `interval` to both.
    """
    if count < 1:
        raise ValueError(f"orbit count must be >= 1, got {count}")
    if radius_x <= 0.0 or radius_y <= 0.0:
        raise ValueError("first-orbit semi-axes must be positive")
    if interval < 0.0:
        raise ValueError("orbit interval must be non-negative")
    return [OrbitParams(radius_x + k * interval, radius_y + k * interval) for k in range(count)]


def wave_value(wave: WaveParams, noise_sample: float, theta: float) -> float:
    """Evaluate the radial wave at one angle, given its noise sample there."""
    return (
        wave.amp1 * math.sin(wave.freq1 * theta)
        + wave.amp2 * math.sin(wave.freq2 * theta)
        + wave.noise_level * noise_sample
    )


def wave_orbit_point(orbit: OrbitParams, offset: float, theta: float) -> tuple[float, float]:
    """Orbit point displaced radially by a wave value.

    `offset` is the precomputed wave value at theta; the radial factor is
    (offset + 1), so offset 0 reduces to the plain orbit point. The factor
    may reach zero or go negative for large noise levels; points are kept
    as-is (the curve may pass through or beyond the nucleus).
    """
    factor = offset + 1.0
    return (orbit.a * factor * math.cos(theta), orbit.b * factor * math.sin(theta))


def grid_angles(num_points: int) -> np.ndarray:
    """Angular grid theta_i = 2*pi*i/q for i = 0..q-1."""
    return TWO_PI * np.arange(num_points) / num_points


def quantize_wave(orbit: OrbitParams, wave: WaveParams, noise: NoiseRealization, num_points: int) -> Polyline:
    """Sample the displaced orbit on the angular grid as a closed polyline.

    Point i equals wave_orbit_point evaluated at theta_i with the wave
    value built from noise.samples[i]; closure is implicit via the
    (i + 1) % q edge rule of Polyline.
    """
    if num_points < 3:
        raise ValueError(f"need at least 3 grid points, got {num_points}")
    if len(noise) != num_points:
        raise ValueError(f"noise length {len(noise)} != grid size {num_points}")
    theta = grid_angles(num_points)
    offset = (
        wave.amp1 * np.sin(wave.freq1 * theta)
        + wave.amp2 * np.sin(wave.freq2 * theta)
        + wave.noise_level * noise.samples
    )
    factor = offset + 1.0
    points = np.empty((num_points, 2), dtype=np.float64)
    points[:, 0] = orbit.a * factor * np.cos(theta)
    points[:, 1] = orbit.b * factor * np.sin(theta)
    return Polyline(points)


def build_atom(spec: "ClassSpec", noises: Sequence[NoiseRealization]) -> AtomShape:
    """Build all orbit polylines of one class, one noise realization each."""
    if len(noises) != spec.num_orbits:
        raise ValueError(f"expected {spec.num_orbits} noise realizations, got {len(noises)}")
    orbits = orbit_sequence(spec.radius_x, spec.radius_y, spec.orbit_interval, spec.num_orbits)
    polylines = tuple(
        quantize_wave(orbits[k], spec.wave_params(k), noises[k], spec.num_points)
        for k in range(spec.num_orbits)
    )
    return AtomShape(polylines)


def bounding_radius(spec: "ClassSpec") -> float:
    """Analytic bound on the shape's extent along either axis.

    Equals max over orbits of max(a_k, b_k) * (1 + wave bound); no sampled
    point of the atom can exceed this in |x| or |y|.
    """
    radius = 0.0
    for k in range(spec.num_orbits):
        wave = spec.wave_params(k)
        a = spec.radius_x + k * spec.orbit_interval
        b = spec.radius_y + k * spec.orbit_interval
        radius = max(radius, max(a, b) * (1.0 + wave.bound))
    return radius
