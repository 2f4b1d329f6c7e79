"""Guided depth upsampling."""

from typing import Optional

import numpy as np

from lib_common import ConfigError, logger
from lib_imagebuf import Image, luma
from lib_sgwls import SmoothConfig, SparseField, interpolate_sparse

from lib_apps.presets import upsample_preset


def project_samples(lowres: Image, factor: int, height: int, width: int) -> SparseField:
    """Place low-res sample (i, j) at high-res pixel (i * factor, j * factor)."""
    values = np.zeros((height, width, lowres.channels))
    mask = np.zeros((height, width))
    values[::factor, ::factor] = lowres.data
    mask[::factor, ::factor] = 1.0
    return SparseField(values=Image(values), mask=Image(mask))


def depth_upsample(
    lowres_depth: Image,
    guidance: Image,
    factor: int,
    cfg: Optional[SmoothConfig] = None,
    threads: int = 1,
) -> Image:
    """Upsample a depth map by ``factor`` using a high-res guidance image.

    Colour guidance is reduced to its luma. Without ``cfg`` the preset for
    the factor is used; factors other than 2, 4 and 8 use the 4x preset.
    """
    if factor < 1:
        raise ConfigError(f"Upsampling factor must be >= 1, got {factor}")
    expected = (lowres_depth.height * factor, lowres_depth.width * factor)
    if guidance.shape != expected:
        raise ConfigError(
            f"Guidance is {guidance.height}x{guidance.width}, expected "
            f"{expected[0]}x{expected[1]} for factor {factor}"
        )
    cfg = cfg or upsample_preset(factor)
    logger.info(f"Depth upsampling x{factor}, config={cfg.model_dump_json()}")

    field = project_samples(lowres_depth, factor, *expected)
    return interpolate_sparse(field, luma(guidance), cfg, threads)
