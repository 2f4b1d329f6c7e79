"""Applications built on SG-WLS smoothing."""

import lib_common
from lib_apps.colorize import colorize, scribble_mask
from lib_apps.enhance import detail_enhance
from lib_apps.metrics import mean_absolute_difference
from lib_apps.presets import (
    DEFAULT_PRESET,
    DETAIL_BOOST,
    PRESETS,
    TONEMAP_LAMBDAS,
    UPSAMPLE_LAMBDAS,
    build_config,
    get_preset,
    upsample_preset,
    upsample_preset_name,
)
from lib_apps.tonemap import ToneMapParams, compress_log_range, tone_map
from lib_apps.upsample import depth_upsample, project_samples

# Re-export common logger
logger = lib_common.logger

__all__ = [
    "DEFAULT_PRESET",
    "DETAIL_BOOST",
    "PRESETS",
    "TONEMAP_LAMBDAS",
    "UPSAMPLE_LAMBDAS",
    "ToneMapParams",
    "build_config",
    "colorize",
    "compress_log_range",
    "depth_upsample",
    "detail_enhance",
    "get_preset",
    "mean_absolute_difference",
    "project_samples",
    "scribble_mask",
    "tone_map",
    "upsample_preset",
    "upsample_preset_name",
]
