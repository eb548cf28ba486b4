"""Multiscale MOSUM solution paths with steepest-drop model selection."""

from ._core import (
    BandwidthGrid,
    NoiseSpec,
    PiecewiseSignal,
    aggregate,
    build_grid,
    calibrate_threshold,
    compute_fields,
    detect_baseline,
    detect_mosum_sdll,
    detectability_index,
    fit_means,
    generate_path,
    local_maximizers,
    mad_sigma,
    make_teeth,
    mask,
    mosum_stat,
    prefix_sums,
    preset,
    preset_names,
    run_benchmark,
    sample_series,
    sdll_select,
    sdll_threshold,
    solution_path,
)

__all__ = [
    "BandwidthGrid",
    "NoiseSpec",
    "PiecewiseSignal",
    "aggregate",
    "build_grid",
    "calibrate_threshold",
    "compute_fields",
    "detect_baseline",
    "detect_mosum_sdll",
    "detectability_index",
    "fit_means",
    "generate_path",
    "local_maximizers",
    "mad_sigma",
    "make_teeth",
    "mask",
    "mosum_stat",
    "prefix_sums",
    "preset",
    "preset_names",
    "run_benchmark",
    "sample_series",
    "sdll_select",
    "sdll_threshold",
    "solution_path",
]
