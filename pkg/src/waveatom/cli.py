"""Command-line interface.

Subcommands: generate, preview, inspect, verify, bench, plus a render
subcommand that writes one image (PNG or raw pixels) for in-memory
consumers. Flag overrides beat config-file values; the effective config
is echoed to stderr before execution and written next to the output.
Progress goes to stderr, machine-readable JSON summaries to stdout.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .bench import run_benchmark, write_report
from .config import (
    WORKERS_ENV_VAR,
    ConfigError,
    DatasetConfig,
    config_from_dict,
    config_to_dict,
    list_presets,
    preset_ranges,
    ranges_from_dict,
    ranges_to_dict,
)
from .dataset import (
    MANIFEST_NAME,
    CompileInterrupted,
    compile_dataset,
    render_instance_bytes,
    verify_dataset,
)
from .preview import build_mosaic, save_preview
from .sampling import class_spec_to_dict, sample_class


def _parse_size(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        if len(parts) == 1:
            side = int(parts[0])
            return side, side
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected WxH or a single side length, got {text!r}")


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _config_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("configuration source")
    src.add_argument("--config", metavar="FILE", help="JSON config file (see README for the schema)")
    src.add_argument("--preset", metavar="NAME", help="named range preset (see --help epilog)")
    src.add_argument("--seed", type=int, default=None, help="master seed (64-bit integer)")
    src.add_argument("--classes", "-C", type=int, default=None, help="number of classes")
    src.add_argument("--instances", "-N", type=int, default=None, help="images per class")
    src.add_argument("--size", type=_parse_size, default=None, metavar="WxH", help="image size, e.g. 512x512")
    src.add_argument(
        "--workers", type=int, default=None,
        help=f"worker processes (default: ${WORKERS_ENV_VAR} or CPU count)",
    )
    rng = p.add_argument_group("range overrides")
    rng.add_argument("--orbits-min", type=int, default=None)
    rng.add_argument("--orbits-max", type=int, default=None)
    rng.add_argument("--radius-min", type=float, default=None, help="min first-orbit semi-axis (both axes)")
    rng.add_argument("--radius-max", type=float, default=None, help="max first-orbit semi-axis (both axes)")
    rng.add_argument("--orbit-interval", type=float, default=None, help="fixed spacing between orbits")
    rng.add_argument("--freq-min", type=int, default=None)
    rng.add_argument("--freq-max", type=int, default=None)
    rng.add_argument("--amp-min", type=float, default=None)
    rng.add_argument("--amp-max", type=float, default=None)
    rng.add_argument("--quant-min", type=int, default=None)
    rng.add_argument("--quant-max", type=int, default=None)
    rng.add_argument("--noise-max", type=float, default=None, help="max per-class noise level")
    rng.add_argument("--line-thickness", type=int, default=None, help="fixed line thickness in pixels")
    rng.add_argument("--per-orbit-waves", action="store_true", default=None,
                     help="re-sample wave parameters per orbit instead of per class")
    p.add_argument("--quiet", "-q", action="store_true", help="suppress config echo and progress")
    return p


def _override_pair(current: tuple, low, high) -> tuple:
    return (current[0] if low is None else low, current[1] if high is None else high)


def effective_config(args, *, need_counts: bool) -> DatasetConfig:
    """Merge config file, preset, and flag overrides into one config."""
    base: dict = {}
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            base = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(base, dict):
            raise ConfigError(f"{path}: expected a JSON object")

    if args.preset:
        ranges = preset_ranges(args.preset)
    else:
        ranges = ranges_from_dict(base.get("ranges", {}))

    try:
        ranges = replace(
            ranges,
            num_orbits=_override_pair(ranges.num_orbits, args.orbits_min, args.orbits_max),
            radius_x=_override_pair(ranges.radius_x, args.radius_min, args.radius_max),
            radius_y=_override_pair(ranges.radius_y, args.radius_min, args.radius_max),
            orbit_interval=(
                ranges.orbit_interval
                if args.orbit_interval is None
                else (args.orbit_interval, args.orbit_interval)
            ),
            frequency=_override_pair(ranges.frequency, args.freq_min, args.freq_max),
            amplitude=_override_pair(ranges.amplitude, args.amp_min, args.amp_max),
            quantization=_override_pair(ranges.quantization, args.quant_min, args.quant_max),
            noise_level=(
                ranges.noise_level
                if args.noise_max is None
                else (min(ranges.noise_level[0], args.noise_max), args.noise_max)
            ),
            line_thickness=(
                ranges.line_thickness
                if args.line_thickness is None
                else (args.line_thickness, args.line_thickness)
            ),
            per_orbit_waves=(
                ranges.per_orbit_waves if args.per_orbit_waves is None else True
            ),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    classes = args.classes if args.classes is not None else base.get("classes")
    instances = args.instances if args.instances is not None else base.get("instances")
    if need_counts and (classes is None or instances is None):
        raise ConfigError("--classes and --instances are required (via flags or config file)")
    width, height = args.size if args.size is not None else (
        base.get("image_width", 512), base.get("image_height", 512)
    )
    seed = args.seed if args.seed is not None else base.get("master_seed", 0)
    data = {
        "format_version": base.get("format_version", 1),
        "classes": classes if classes is not None else 1,
        "instances": instances if instances is not None else 1,
        "master_seed": seed,
        "image_width": width,
        "image_height": height,
        "ranges": ranges_to_dict(ranges),
    }
    return config_from_dict(data, workers=args.workers if args.workers is not None else 0)


def _echo_config(config: DatasetConfig, quiet: bool) -> None:
    if not quiet:
        print("config: " + json.dumps(config_to_dict(config)), file=sys.stderr)


def _progress_printer(quiet: bool):
    if quiet:
        return None
    state = {"last": -1}

    def report(done: int, total: int) -> None:
        step = max(1, total // 20)
        if done == total or done // step != state["last"]:
            state["last"] = done // step
            print(f"rendered {done}/{total}", file=sys.stderr)

    return report


def _cmd_generate(args) -> int:
    config = effective_config(args, need_counts=True)
    config = replace(config, output_root=Path(args.out))
    _echo_config(config, args.quiet)
    manifest = compile_dataset(config, progress=_progress_printer(args.quiet))
    print(json.dumps({
        "command": "generate",
        "images": config.total_images,
        "classes": config.classes,
        "instances": config.instances,
        "output": str(config.output_root),
        "manifest": str(config.output_root / MANIFEST_NAME),
        "dataset_sha256": manifest.dataset_digest,
    }))
    return 0


def _cmd_inspect(args) -> int:
    config = effective_config(args, need_counts=False)
    if args.show_config:
        print(json.dumps(config_to_dict(config)))
        return 0
    if args.count is not None:
        for class_id in range(args.count):
            spec = sample_class(config.master_seed, class_id, config.ranges)
            print(json.dumps(class_spec_to_dict(spec)))
        return 0
    spec = sample_class(config.master_seed, args.class_id, config.ranges)
    print(json.dumps(class_spec_to_dict(spec)))
    return 0


def _cmd_preview(args) -> int:
    config = effective_config(args, need_counts=False)
    _echo_config(config, args.quiet)
    class_ids = args.class_ids
    out = save_preview(config, class_ids, args.samples, args.out)
    print(json.dumps({
        "command": "preview",
        "output": str(out),
        "rows": len(class_ids),
        "cols": args.samples,
    }))
    return 0


def _cmd_verify(args) -> int:
    target = Path(args.root)
    manifest_path = target / MANIFEST_NAME if target.is_dir() else target
    report = verify_dataset(manifest_path, args.fraction)
    print(json.dumps({"command": "verify", **report.to_dict()}))
    return 0 if report.ok else 1


def _cmd_bench(args) -> int:
    config = effective_config(args, need_counts=False)
    _echo_config(config, args.quiet)
    worker_counts = args.workers_list or sorted({1, DatasetConfig(1, 1).resolve_workers()})
    results = run_benchmark(config, args.images, worker_counts)
    summary = {"command": "bench", "results": [r.to_dict() for r in results]}
    if args.out:
        csv_path, fig_path = write_report(results, args.out)
        summary["csv"] = str(csv_path)
        summary["figure"] = str(fig_path)
    print(json.dumps(summary))
    return 0


def _cmd_render(args) -> int:
    config = effective_config(args, need_counts=False)
    if args.classes is not None and args.class_id >= args.classes:
        raise ConfigError(f"class {args.class_id} out of range (classes={args.classes})")
    if args.instances is not None and args.instance >= args.instances:
        raise ConfigError(f"instance {args.instance} out of range (instances={args.instances})")
    if args.class_id < 0 or args.instance < 0:
        raise ConfigError("class and instance must be non-negative")
    spec = sample_class(config.master_seed, args.class_id, config.ranges)
    if args.format == "png":
        data = render_instance_bytes(config, spec, args.instance)
    else:
        from .rasterizer import render
        from .sampling import sample_instance

        instance = sample_instance(config.master_seed, spec, args.instance, config.ranges)
        data = render(spec, instance, config.image_width, config.image_height).pixels.tobytes()
    if args.out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(args.out).write_bytes(data)
        if not args.quiet:
            print(f"wrote {args.out}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waveatom",
        description="Deterministic generator of labeled contour-image datasets.",
        epilog="presets: " + ", ".join(list_presets()),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _config_parent()

    p = sub.add_parser("generate", parents=[parent], help="compile a dataset to disk")
    p.add_argument("--out", required=True, metavar="DIR", help="output root directory")
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("inspect", parents=[parent], help="print sampled class parameters")
    p.add_argument("--class", dest="class_id", type=int, default=0, metavar="ID")
    p.add_argument("--count", type=int, default=None, metavar="M",
                   help="print the first M class specs, one JSON line each")
    p.add_argument("--show-config", action="store_true", help="print the effective config instead")
    p.set_defaults(handler=_cmd_inspect)

    p = sub.add_parser("preview", parents=[parent], help="save a labeled contact sheet")
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--class-ids", type=_parse_int_list, default=[0, 1, 2, 3], metavar="IDS",
                   help="comma-separated class ids, one row each (default 0,1,2,3)")
    p.add_argument("--samples", type=int, default=4, metavar="M", help="samples per class (default 4)")
    p.set_defaults(handler=_cmd_preview)

    p = sub.add_parser("verify", help="re-hash and re-render a sample of a compiled dataset")
    p.add_argument("root", help="dataset root directory or manifest path")
    p.add_argument("--fraction", type=float, default=1.0, help="fraction of images to check (default 1.0)")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("bench", parents=[parent], help="measure compile throughput")
    p.add_argument("--images", type=int, default=64, help="images per timed run (default 64)")
    p.add_argument("--workers-list", type=_parse_int_list, default=None, metavar="LIST",
                   help="comma-separated worker counts (default: 1 and CPU count)")
    p.add_argument("--out", default=None, metavar="DIR", help="write bench.csv and bench.png here")
    p.set_defaults(handler=_cmd_bench)

    p = sub.add_parser("render", parents=[parent], help="render one image to a file or stdout")
    p.add_argument("--class", dest="class_id", type=int, required=True, metavar="ID")
    p.add_argument("--instance", type=int, required=True, metavar="ID")
    p.add_argument("--out", required=True, metavar="FILE", help="output path, or - for stdout")
    p.add_argument("--format", choices=("png", "raw"), default="png",
                   help="png file bytes or raw row-major grayscale pixels")
    p.set_defaults(handler=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CompileInterrupted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
