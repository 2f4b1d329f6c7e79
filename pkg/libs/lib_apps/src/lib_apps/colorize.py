"""Scribble-based colorization by chrominance propagation."""

from typing import Optional

import numpy as np

from lib_common import ConfigError, logger
from lib_imagebuf import Image, luma, rgb_to_yuv, yuv_to_rgb
from lib_sgwls import SmoothConfig, interpolate_raster

from lib_apps.presets import get_preset

# Largest per-channel difference still counted as uncoloured gray
SCRIBBLE_TOLERANCE = 1e-3


def scribble_mask(gray: Image, scribbles: Image, tolerance: float = SCRIBBLE_TOLERANCE) -> Image:
    """Mark pixels where the scribble image departs from the gray image."""
    if gray.shape != scribbles.shape:
        raise ConfigError(
            f"Gray {gray.shape} and scribbles {scribbles.shape} differ in size"
        )
    y = luma(gray).data
    diff = np.abs(scribbles.data - y).max(axis=2)
    return Image((diff > tolerance).astype(np.float64))


def colorize(
    gray: Image,
    scribbles: Image,
    mask: Image,
    cfg: Optional[SmoothConfig] = None,
    threads: int = 1,
) -> Image:
    """Propagate scribble chrominance over a gray image.

    U and V of the scribbles are interpolated from the masked pixels with
    the gray image as guidance, then recombined with Y = gray.

    Args:
        gray: Gray image; RGB input is reduced to its luma
        scribbles: RGB image holding the scribble colours
        mask: Single-channel 0/1 image marking scribbled pixels
        cfg: Smoothing parameters, the colorize preset by default
        threads: Worker count

    Returns:
        RGB image clamped to [0, 1]
    """
    scribbles.require_channels(3, "Scribble image")
    mask.require_channels(1, "Scribble mask")
    y = luma(gray)
    if not (y.shape == scribbles.shape == mask.shape):
        raise ConfigError("Gray image, scribbles and mask must share dimensions")
    if not np.any(mask.data):
        raise ConfigError("No scribbles to propagate")
    cfg = cfg or get_preset("colorize")
    logger.info(f"Colorization, config={cfg.model_dump_json()}")

    defined = (mask.data != 0).astype(np.float64)
    chroma = rgb_to_yuv(scribbles).data[:, :, 1:] * defined
    uv, _ = interpolate_raster(chroma, defined, y.data, cfg, threads)

    yuv = np.concatenate([y.data, uv], axis=2)
    return Image(np.clip(yuv_to_rgb(Image(yuv)).data, 0.0, 1.0))
