"""Multi-scale HDR tone mapping in the log10 luminance domain.

Log luminance L0 is smoothed progressively, each level guided by L0 with a
larger lambda. The coarsest level is the base layer and the differences
between consecutive levels are the detail layers, so base plus all detail
layers gives L0 back exactly. The base is compressed linearly about its
maximum before the layers are recombined, and the recombined image is
compressed the same way so it never spans more than the target range.
"""

from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from lib_common import ConfigError, logger
from lib_imagebuf import Image, luma
from lib_sgwls import SmoothConfig, smooth_raster

from lib_apps.presets import TONEMAP_LAMBDAS, get_preset

# Bases spanning less than this many decades are treated as flat
FLAT_RANGE = 1e-9


class ToneMapParams(BaseModel):
    """Layer decomposition and base compression settings.

    ``target_range`` is the largest log10 range of the base layer and of the
    output; None keeps both unchanged. With ``normalize`` the brightest
    output value lands at luminance 1.
    """

    model_config = ConfigDict(frozen=True)

    lambdas: Tuple[float, ...] = TONEMAP_LAMBDAS
    detail_weights: Tuple[float, ...] = (1.0, 1.0, 1.0)
    target_range: Optional[float] = Field(None, gt=0)
    normalize: bool = False

    @model_validator(mode="after")
    def _check_layers(self) -> "ToneMapParams":
        if not self.lambdas:
            raise ValueError("At least one smoothing level is required")
        if len(self.detail_weights) != len(self.lambdas):
            raise ValueError(
                f"{len(self.lambdas)} levels need as many detail weights, "
                f"got {len(self.detail_weights)}"
            )
        if any(lam < 0 for lam in self.lambdas):
            raise ValueError("lambdas must be >= 0")
        return self


def compress_log_range(log_base: np.ndarray, target_range: Optional[float]) -> np.ndarray:
    """Compress values linearly to at most ``target_range`` decades, keeping the maximum.

    Spans already within the target are returned unchanged.
    """
    log_base = np.asarray(log_base, dtype=np.float64)
    if target_range is None:
        return log_base.copy()
    top, bottom = log_base.max(), log_base.min()
    if top - bottom <= max(FLAT_RANGE, target_range):
        return log_base.copy()
    return top + (log_base - top) * (target_range / (top - bottom))


def tone_map(
    hdr: Image,
    params: Optional[ToneMapParams] = None,
    cfg: Optional[SmoothConfig] = None,
    threads: int = 1,
) -> Image:
    """Tone map an HDR image.

    Args:
        hdr: Gray or RGB radiance image with positive luminance
        params: Decomposition and compression settings
        cfg: Smoothing template; lambda is replaced per level
        threads: Worker count

    Returns:
        Tone-mapped image, not clamped
    """
    params = params or ToneMapParams()
    cfg = cfg or get_preset("tonemap")

    lum = luma(hdr).plane()
    if np.any(lum <= 0):
        raise ConfigError("HDR luminance must be positive everywhere")
    log_lum = np.log10(lum)

    levels = [log_lum]
    for lam in params.lambdas:
        level_cfg = cfg.model_copy(update={"lam": lam})
        logger.debug(f"Tone map level lambda={lam}")
        levels.append(smooth_raster(levels[-1], log_lum, level_cfg, threads)[:, :, 0])

    base = compress_log_range(levels[-1], params.target_range)
    out = base.copy()
    for weight, finer, coarser in zip(params.detail_weights, levels[:-1], levels[1:]):
        out += weight * (finer - coarser)
    out = compress_log_range(out, params.target_range)
    if params.normalize:
        out -= out.max()
    logger.info(
        f"Tone mapped log range {np.ptp(log_lum):.3f} -> {np.ptp(out):.3f} decades"
    )

    ratio = np.power(10.0, out) / lum
    return Image(hdr.data * ratio[:, :, None])
