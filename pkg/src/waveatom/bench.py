"""Throughput benchmark: timed compile runs, CSV report plus a figure."""

from __future__ import annotations

import csv
import math
import tempfile
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from .config import DatasetConfig
from .dataset import compile_dataset

CSV_NAME = "bench.csv"
FIGURE_NAME = "bench.png"


@dataclass
class BenchResult:
    workers: int
    images: int
    seconds: float
    images_per_sec: float

    def to_dict(self) -> dict:
        return vars(self)


def run_benchmark(
    config: DatasetConfig,
    images: int,
    worker_counts: Sequence[int],
) -> list[BenchResult]:
    """Compile `images` baseline-parameter images per worker count.

    Uses a handful of classes so the timing averages over cheap and
    expensive parameter draws; each run goes to a throwaway directory.
    """
    if images < 1:
        raise ValueError("need at least one image")
    classes = min(8, images)
    instances = math.ceil(images / classes)
    actual = classes * instances
    results = []
    for workers in worker_counts:
        with tempfile.TemporaryDirectory(prefix="waveatom-bench-") as tmp:
            run_cfg = replace(
                config,
                classes=classes,
                instances=instances,
                workers=workers,
                output_root=Path(tmp),
            )
            start = time.perf_counter()
            compile_dataset(run_cfg)
            elapsed = time.perf_counter() - start
        results.append(BenchResult(
            workers=workers,
            images=actual,
            seconds=elapsed,
            images_per_sec=actual / elapsed,
        ))
    return results


def write_report(results: Sequence[BenchResult], out_dir: str | Path) -> tuple[Path, Path]:
    """Write bench.csv and a throughput figure; returns both paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / CSV_NAME
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["workers", "images", "seconds", "images_per_sec"])
        for res in results:
            writer.writerow([res.workers, res.images, f"{res.seconds:.4f}", f"{res.images_per_sec:.2f}"])

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig_path = out_dir / FIGURE_NAME
    fig, ax = plt.subplots(figsize=(5, 3.2), dpi=120)
    xs = [res.workers for res in results]
    ys = [res.images_per_sec for res in results]
    ax.bar([str(x) for x in xs], ys, color="#4878cf")
    for x, y in zip(range(len(xs)), ys):
        ax.annotate(f"{y:.1f}", (x, y), ha="center", va="bottom", fontsize=8)
    ax.set_xlabel("workers")
    ax.set_ylabel("images / second")
    ax.set_title(f"compile throughput ({results[0].images} images)")
    fig.tight_layout()
    fig.savefig(fig_path)
    plt.close(fig)
    return csv_path, fig_path
