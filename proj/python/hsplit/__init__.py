"""Histogram split-and-stretch segmentation: numpy front end to the C++ core."""

import json

from ._hsplit import (
    IoError,
    StageError,
    apply_split,
    canny,
    classify,
    dsc,
    fill_holes,
    histogram,
    load_gray,
    load_mask,
    morph_close,
    phantom,
    pir,
    place_pointers,
    save_gray,
    save_mask,
    washup,
)
from . import _hsplit


def run_pipeline(image, seed, ground_truth=None, **params):
    """Run the full pipeline. `seed` is (cx, cy, px, py); keyword arguments
    override PipelineConfig fields by their service names (rsf, canny_low,
    iterations, ...)."""
    return _hsplit._run_pipeline(image, tuple(seed), json.dumps(params), ground_truth)


def sweep(image, seed, ground_truth, threads=0, **params):
    """Exhaustive pointer-pair search. The grid holds one PIR per xl < xr pair,
    ordered by xl then xr."""
    return _hsplit._sweep(image, tuple(seed), ground_truth, json.dumps(params), threads)


__all__ = [
    "IoError", "StageError", "apply_split", "canny", "classify", "dsc", "fill_holes",
    "histogram", "load_gray", "load_mask", "morph_close", "phantom", "pir",
    "place_pointers", "run_pipeline", "save_gray", "save_mask", "sweep", "washup",
]
