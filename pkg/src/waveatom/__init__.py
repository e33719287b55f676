"""waveatom: deterministic contour-image dataset generator.

Shapes are superpositions of sinusoidal waves on stacks of elliptical
orbits, rasterized to grayscale images; class labels derive from the
sampled shape parameters, so datasets of arbitrary size can be compiled
without any human annotation.
"""

__version__ = "0.1.0"

from .bench import BenchResult, run_benchmark
from .config import (
    FORMAT_VERSION,
    ConfigError,
    DatasetConfig,
    config_from_dict,
    config_to_dict,
    list_presets,
    load_config,
    preset_ranges,
    save_config,
)
from .dataset import (
    CompileInterrupted,
    Manifest,
    VerifyReport,
    compile_dataset,
    image_path,
    render_instance_bytes,
    verify_dataset,
)
from .geometry import (
    AtomShape,
    NoiseRealization,
    OrbitParams,
    Polyline,
    WaveParams,
    bounding_radius,
    build_atom,
    grid_angles,
    orbit_point,
    orbit_sequence,
    quantize_wave,
    wave_orbit_point,
    wave_value,
)
from .png import encode_gray8
from .preview import build_mosaic, save_preview
from .rasterizer import Canvas, ViewTransform, draw_polyline, make_view, render
from .rng import ParamStream, derive_seed
from .sampling import (
    ClassSpec,
    InstanceSpec,
    SamplingRanges,
    sample_class,
    sample_instance,
)

__all__ = [
    "AtomShape",
    "BenchResult",
    "Canvas",
    "ClassSpec",
    "CompileInterrupted",
    "ConfigError",
    "DatasetConfig",
    "FORMAT_VERSION",
    "InstanceSpec",
    "Manifest",
    "NoiseRealization",
    "OrbitParams",
    "ParamStream",
    "Polyline",
    "SamplingRanges",
    "VerifyReport",
    "ViewTransform",
    "WaveParams",
    "bounding_radius",
    "build_atom",
    "build_mosaic",
    "compile_dataset",
    "config_from_dict",
    "config_to_dict",
    "derive_seed",
    "draw_polyline",
    "encode_gray8",
    "grid_angles",
    "image_path",
    "list_presets",
    "load_config",
    "make_view",
    "orbit_point",
    "orbit_sequence",
    "preset_ranges",
    "quantize_wave",
    "render",
    "render_instance_bytes",
    "run_benchmark",
    "sample_class",
    "sample_instance",
    "save_config",
    "save_preview",
    "verify_dataset",
    "wave_orbit_point",
    "wave_value",
]
