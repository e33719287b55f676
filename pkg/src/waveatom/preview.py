"""Contact-sheet previews: one row per class, one rendered sample per cell."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from .config import DatasetConfig
from .rasterizer import render
from .sampling import sample_class, sample_instance

CELL_GAP = 2  # pixels between cells
GAP_VALUE = 80  # mid gray so cell boundaries stay visible on black


def build_mosaic(config: DatasetConfig, class_ids: Sequence[int], samples_per_class: int) -> np.ndarray:
    """Tile renders into a (rows * H, cols * W) grid with thin separators.

    Row r shows class_ids[r]; column c shows instance c of that class.
    """
    if not class_ids:
        raise ValueError("need at least one class id")
    if samples_per_class < 1:
        raise ValueError("need at least one sample per class")
    if any(c < 0 for c in class_ids):
        raise ValueError("class ids must be non-negative")
    rows = len(class_ids)
    cols = samples_per_class
    w, h = config.image_width, config.image_height
    sheet = np.full(
        (rows * h + (rows - 1) * CELL_GAP, cols * w + (cols - 1) * CELL_GAP),
        GAP_VALUE,
        dtype=np.uint8,
    )
    for r, class_id in enumerate(class_ids):
        spec = sample_class(config.master_seed, class_id, config.ranges)
        for c in range(cols):
            instance = sample_instance(config.master_seed, spec, c, config.ranges)
            canvas = render(spec, instance, w, h)
            y = r * (h + CELL_GAP)
            x = c * (w + CELL_GAP)
            sheet[y:y + h, x:x + w] = canvas.pixels
    return sheet


def save_preview(
    config: DatasetConfig,
    class_ids: Sequence[int],
    samples_per_class: int,
    out_path: str | Path,
    dpi: int = 100,
) -> Path:
    """Write the contact sheet with class labels in a caption strip."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    mosaic = build_mosaic(config, class_ids, samples_per_class)
    out_path = Path(out_path)

    height_px, width_px = mosaic.shape
    fig_w = max(4.0, width_px / dpi)
    fig_h = max(4.0, height_px / dpi) + 0.6
    fig, ax = plt.subplots(figsize=(fig_w, fig_h), dpi=dpi)
    ax.imshow(mosaic, cmap="gray", vmin=0, vmax=255, interpolation="nearest")
    cell_h = config.image_height + CELL_GAP
    ax.set_yticks([r * cell_h + config.image_height / 2 for r in range(len(class_ids))])
    ax.set_yticklabels([f"class {cid}" for cid in class_ids])
    ax.set_xticks([])
    for spine in ax.spines.values():
        spine.set_visible(False)
    ax.set_xlabel(
        f"seed={config.master_seed}  {config.image_width}x{config.image_height}  "
        f"{samples_per_class} sample(s) per class"
    )
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
    return out_path
