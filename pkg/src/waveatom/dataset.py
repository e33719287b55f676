"""Dataset compilation: folder-per-class layout, JSONL manifest, verification.

Layout under the output root::

    root/config.json            echo of the effective config
    root/manifest.jsonl         header, one record per class, digest footer
    root/class_00000/img_00000.png
    root/class_00000/img_00001.png
    ...

Every image is seed-addressed: its bytes depend only on (master_seed,
ranges, image size, class_id, instance_id), never on worker count or
scheduling. Files are written atomically (temp + rename), so the file
tree itself is the resume checkpoint: a re-run hashes existing images and
renders only the missing ones, converging on the same manifest an
uninterrupted run would have produced.

Content hashes are SHA-256 over the PNG file bytes; the dataset digest is
SHA-256 over all image hashes concatenated in (class, instance) order.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .config import FORMAT_VERSION, ConfigError, DatasetConfig, config_from_dict, config_to_dict, save_config
from .png import encode_gray8
from .rasterizer import render
from .sampling import ClassSpec, class_spec_from_dict, class_spec_to_dict, sample_class, sample_instance

MANIFEST_NAME = "manifest.jsonl"
CONFIG_ECHO_NAME = "config.json"

ProgressFn = Callable[[int, int], None]


class CompileInterrupted(RuntimeError):
    """Compilation aborted mid-run; finished images remain on disk.

    Re-running compile with the same config resumes from those files.
    """


def class_dir_name(class_id: int) -> str:
    return f"class_{class_id:05d}"


def image_file_name(instance_id: int) -> str:
    return f"img_{instance_id:05d}.png"


def image_path(root: Path, class_id: int, instance_id: int) -> Path:
    return root / class_dir_name(class_id) / image_file_name(instance_id)


def render_instance_bytes(config: DatasetConfig, class_spec: ClassSpec, instance_id: int) -> bytes:
    """Render one (class, instance) pair straight to PNG bytes."""
    instance = sample_instance(config.master_seed, class_spec, instance_id, config.ranges)
    canvas = render(class_spec, instance, config.image_width, config.image_height)
    return encode_gray8(canvas.pixels)


@dataclass
class ClassRecord:
    class_id: int
    spec: ClassSpec
    image_hashes: list[str]


@dataclass
class Manifest:
    format_version: int
    config: DatasetConfig
    classes: list[ClassRecord]
    dataset_digest: str

    def write(self, path: str | Path) -> None:
        path = Path(path)
        lines = [json.dumps({
            "record": "header",
            "format_version": self.format_version,
            "config": config_to_dict(self.config),
        })]
        for rec in self.classes:
            lines.append(json.dumps({
                "record": "class",
                "class_id": rec.class_id,
                "spec": class_spec_to_dict(rec.spec),
                "images": rec.image_hashes,
            }))
        lines.append(json.dumps({"record": "digest", "sha256": self.dataset_digest}))
        tmp = path.with_name(path.name + f".tmp{os.getpid()}")
        tmp.write_text("\n".join(lines) + "\n")
        os.replace(tmp, path)

    @classmethod
    def read(cls, path: str | Path) -> "Manifest":
        path = Path(path)
        header = None
        classes: list[ClassRecord] = []
        digest = None
        with path.open() as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ValueError(f"{path}:{lineno}: invalid JSON ({exc})") from None
                kind = record.get("record")
                if kind == "header":
                    header = record
                elif kind == "class":
                    classes.append(ClassRecord(
                        class_id=record["class_id"],
                        spec=class_spec_from_dict(record["spec"]),
                        image_hashes=list(record["images"]),
                    ))
                elif kind == "digest":
                    digest = record["sha256"]
                else:
                    raise ValueError(f"{path}:{lineno}: unknown record kind {kind!r}")
        if header is None or digest is None:
            raise ValueError(f"{path}: manifest is missing its header or digest record")
        return cls(
            format_version=header["format_version"],
            config=config_from_dict(header["config"]),
            classes=sorted(classes, key=lambda rec: rec.class_id),
            dataset_digest=digest,
        )


def _dataset_digest(records: Iterable[ClassRecord]) -> str:
    digest = hashlib.sha256()
    for rec in records:
        for image_hash in rec.image_hashes:
            digest.update(bytes.fromhex(image_hash))
    return digest.hexdigest()


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class _TaskRunner:
    """Per-process render context; caches the current class spec."""

    def __init__(self, config: DatasetConfig) -> None:
        self.config = config
        self._spec_id: int | None = None
        self._spec: ClassSpec | None = None

    def class_spec(self, class_id: int) -> ClassSpec:
        if class_id != self._spec_id:
            self._spec = sample_class(self.config.master_seed, class_id, self.config.ranges)
            self._spec_id = class_id
        return self._spec

    def run(self, class_id: int, instance_id: int) -> tuple[int, int, str]:
        path = image_path(self.config.output_root, class_id, instance_id)
        if path.exists():
            data = path.read_bytes()
        else:
            data = render_instance_bytes(self.config, self.class_spec(class_id), instance_id)
            _atomic_write(path, data)
        return class_id, instance_id, hashlib.sha256(data).hexdigest()


_worker_runner: _TaskRunner | None = None


def _worker_init(config_dict: dict, output_root: str) -> None:
    global _worker_runner
    config = config_from_dict(config_dict, output_root=Path(output_root))
    _worker_runner = _TaskRunner(config)


def _worker_task(task: tuple[int, int]) -> tuple[int, int, str]:
    return _worker_runner.run(*task)


def compile_dataset(config: DatasetConfig, progress: ProgressFn | None = None) -> Manifest:
    """Render all classes * instances images and write the manifest.

    Output bytes are identical for identical (master_seed, ranges, image
    size) regardless of worker count. Raises CompileInterrupted on I/O or
    render failure after some images were written; rerunning resumes.
    """
    if config.output_root is None:
        raise ConfigError("config.output_root is required to compile")
    root = Path(config.output_root)
    root.mkdir(parents=True, exist_ok=True)
    for class_id in range(config.classes):
        (root / class_dir_name(class_id)).mkdir(exist_ok=True)
    save_config(config, root / CONFIG_ECHO_NAME)

    tasks = [(c, i) for c in range(config.classes) for i in range(config.instances)]
    total = len(tasks)
    workers = min(config.resolve_workers(), total)
    hashes: dict[tuple[int, int], str] = {}
    done = 0
    try:
        if workers <= 1:
            runner = _TaskRunner(config)
            for task in tasks:
                class_id, instance_id, digest = runner.run(*task)
                hashes[(class_id, instance_id)] = digest
                done += 1
                if progress is not None:
                    progress(done, total)
        else:
            chunksize = max(1, total // (workers * 8))
            with ProcessPoolExecutor(
                max_workers=workers,
                initializer=_worker_init,
                initargs=(config_to_dict(config), str(root)),
            ) as pool:
                for class_id, instance_id, digest in pool.map(_worker_task, tasks, chunksize=chunksize):
                    hashes[(class_id, instance_id)] = digest
                    done += 1
                    if progress is not None:
                        progress(done, total)
    except (OSError, ValueError) as exc:
        raise CompileInterrupted(
            f"compile aborted after {done}/{total} images: {exc}; "
            f"finished files remain under {root}, rerun to resume"
        ) from exc

    records = []
    for class_id in range(config.classes):
        spec = sample_class(config.master_seed, class_id, config.ranges)
        records.append(ClassRecord(
            class_id=class_id,
            spec=spec,
            image_hashes=[hashes[(class_id, i)] for i in range(config.instances)],
        ))
    manifest = Manifest(
        format_version=FORMAT_VERSION,
        config=config,
        classes=records,
        dataset_digest=_dataset_digest(records),
    )
    manifest.write(root / MANIFEST_NAME)
    return manifest


@dataclass
class Mismatch:
    class_id: int
    instance_id: int
    path: str
    kind: str  # "missing" | "corrupt" | "regen"
    detail: str = ""


@dataclass
class VerifyReport:
    total_images: int
    checked: int
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "total_images": self.total_images,
            "checked": self.checked,
            "ok": self.ok,
            "mismatches": [vars(m) for m in self.mismatches],
        }


def _verify_indices(total: int, fraction: float) -> list[int]:
    """Evenly spaced flat indices; ceil(fraction * total) of them."""
    count = math.ceil(fraction * total)
    return [(i * total) // count for i in range(count)]


def verify_dataset(manifest_path: str | Path, fraction: float = 1.0) -> VerifyReport:
    """Check a sample of images against the manifest.

    Each sampled image is checked two ways: the on-disk bytes must hash to
    the manifest entry (detects corruption), and a fresh seed-based
    re-render must hash to it too (detects generator drift). Both failures
    are itemized per image.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    manifest_path = Path(manifest_path)
    manifest = Manifest.read(manifest_path)
    root = manifest_path.parent
    config = manifest.config
    total = config.total_images
    report = VerifyReport(total_images=total, checked=0)

    spec_cache: dict[int, ClassSpec] = {}
    for flat in _verify_indices(total, fraction):
        class_id, instance_id = divmod(flat, config.instances)
        expected = manifest.classes[class_id].image_hashes[instance_id]
        path = image_path(root, class_id, instance_id)
        report.checked += 1
        if not path.exists():
            report.mismatches.append(Mismatch(class_id, instance_id, str(path), "missing"))
        else:
            actual = hashlib.sha256(path.read_bytes()).hexdigest()
            if actual != expected:
                report.mismatches.append(Mismatch(
                    class_id, instance_id, str(path), "corrupt",
                    f"file hash {actual[:12]}.. != manifest {expected[:12]}..",
                ))
        if class_id not in spec_cache:
            spec_cache[class_id] = sample_class(config.master_seed, class_id, config.ranges)
        regen = hashlib.sha256(
            render_instance_bytes(config, spec_cache[class_id], instance_id)
        ).hexdigest()
        if regen != expected:
            report.mismatches.append(Mismatch(
                class_id, instance_id, str(path), "regen",
                f"re-render hash {regen[:12]}.. != manifest {expected[:12]}..",
            ))
    return report
