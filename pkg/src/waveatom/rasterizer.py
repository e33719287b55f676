"""Rasterize orbit polylines onto an 8-bit grayscale canvas.

The choices here define the image format: per-class framing with a fixed
margin, nucleus offsets of up to a quarter of the short canvas side,
integer Bresenham segments with hard unantialiased writes, and orbits
drawn in ascending index order with later orbits overwriting earlier
pixels. Out-of-canvas fragments are clipped, never wrapped.

The edge loop is compiled with numba when available; the pure-Python
fallback runs the same source, so both produce identical pixels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import geometry
from .geometry import Polyline, build_atom
from .sampling import ClassSpec, InstanceSpec

MARGIN = 0.9  # fraction of the half-canvas the analytic extent may fill
NUCLEUS_SHIFT = 0.25  # nucleus offset per unit, in fractions of min(W, H)
MIN_CANVAS_SIDE = 16


class Canvas:
    """Pixel grid, black (0) everywhere until drawn on."""

    __slots__ = ("pixels",)

    def __init__(self, width: int, height: int) -> None:
        if width < 1 or height < 1:
            raise ValueError("canvas must be at least 1x1")
        self.pixels = np.zeros((height, width), dtype=np.uint8)

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


@dataclass(frozen=True)
class ViewTransform:
    """World-to-pixel map: uniform scale plus a pixel-space center."""

    scale: float
    center_x: float
    center_y: float

    def __post_init__(self) -> None:
        if not self.scale > 0.0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    def to_pixels(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Map (q, 2) world points to integer pixel coords (x right, y up)."""
        xs = np.floor(self.center_x + points[:, 0] * self.scale + 0.5).astype(np.int64)
        ys = np.floor(self.center_y - points[:, 1] * self.scale + 0.5).astype(np.int64)
        return xs, ys


def make_view(spec: ClassSpec, nucleus: tuple[float, float], width: int, height: int) -> ViewTransform:
    """Frame one class on the canvas.

    The scale normalizes the class's analytic bounding radius to MARGIN of
    the half-canvas, so every class appears at a consistent size; the
    nucleus shifts the center by up to NUCLEUS_SHIFT * min(W, H) per axis.
    """
    if width < MIN_CANVAS_SIDE or height < MIN_CANVAS_SIDE:
        raise ValueError(f"canvas must be at least {MIN_CANVAS_SIDE} pixels per side")
    radius = geometry.bounding_radius(spec)
    half = min(width, height) / 2.0
    shift = NUCLEUS_SHIFT * min(width, height)
    return ViewTransform(
        scale=MARGIN * half / radius,
        center_x=width / 2.0 + nucleus[0] * shift,
        center_y=height / 2.0 + nucleus[1] * shift,
    )


@lru_cache(maxsize=16)
def _disc_offsets(thickness: int) -> np.ndarray:
    """Pixel offsets of a stamped disc footprint of diameter `thickness`."""
    reach = thickness // 2
    offsets = [
        (dx, dy)
        for dy in range(-reach, reach + 1)
        for dx in range(-reach, reach + 1)
        if 4 * (dx * dx + dy * dy) <= thickness * thickness
    ]
    return np.array(offsets, dtype=np.int64)


def _draw_edges(xs, ys, offsets, pixels, value):  # pragma: no cover - exercised via dispatch
    """Stamp all closed-polyline edges: Bresenham steps, disc per step."""
    n = xs.shape[0]
    m = offsets.shape[0]
    h, w = pixels.shape
    for i in range(n):
        x0 = xs[i]
        y0 = ys[i]
        j = i + 1
        if j == n:
            j = 0
        x1 = xs[j]
        y1 = ys[j]
        dx = abs(x1 - x0)
        sx = 1 if x0 < x1 else -1
        dy = -abs(y1 - y0)
        sy = 1 if y0 < y1 else -1
        err = dx + dy
        while True:
            for k in range(m):
                px = x0 + offsets[k, 0]
                py = y0 + offsets[k, 1]
                if 0 <= px < w and 0 <= py < h:
                    pixels[py, px] = value
            if x0 == x1 and y0 == y1:
                break
            e2 = 2 * err
            if e2 >= dy:
                err += dy
                x0 += sx
            if e2 <= dx:
                err += dx
                y0 += sy


try:
    from numba import njit

    _draw_edges_fast = njit(cache=True)(_draw_edges)
except ImportError:  # pragma: no cover
    _draw_edges_fast = _draw_edges


def draw_polyline(
    canvas: Canvas,
    polyline: Polyline,
    view: ViewTransform,
    color: float,
    thickness: int,
) -> None:
    """Rasterize one closed polyline; gray value is round(color * 255)."""
    if thickness < 1:
        raise ValueError(f"thickness must be >= 1, got {thickness}")
    if not 0.0 <= color <= 1.0:
        raise ValueError(f"color must be in [0, 1], got {color}")
    value = np.uint8(math.floor(color * 255.0 + 0.5))
    xs, ys = view.to_pixels(polyline.points)
    _draw_edges_fast(xs, ys, _disc_offsets(thickness), canvas.pixels, value)


def render(spec: ClassSpec, instance: InstanceSpec, width: int, height: int) -> Canvas:
    """Render one (class, instance) pair onto a fresh black canvas.

    Orbits draw in ascending index order, each with its own gray level;
    contested pixels keep the color of the highest drawn orbit.
    """
    if len(instance.noises) != spec.num_orbits or len(instance.orbit_colors) != spec.num_orbits:
        raise ValueError(
            f"instance carries {len(instance.noises)} noises / "
            f"{len(instance.orbit_colors)} colors for {spec.num_orbits} orbits"
        )
    shape = build_atom(spec, instance.noises)
    view = make_view(spec, instance.nucleus, width, height)
    canvas = Canvas(width, height)
    for k, polyline in enumerate(shape.polylines):
        draw_polyline(canvas, polyline, view, instance.orbit_colors[k], instance.line_thickness)
    return canvas
