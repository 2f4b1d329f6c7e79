"""SG-WLS smoothing and sparse guided interpolation."""

from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from lib_common import ConfigError, logger
from lib_imagebuf import Image
from lib_sgwls.banded import solve_subsystem
from lib_sgwls.config import Axis, SmoothConfig
from lib_sgwls.snake import band_centers, band_from_raster, scatter_band
from lib_sgwls.weights import pair_weights

# Smoothed-mask values below this are treated as unsupported
SUPPORT_FLOOR = 1e-8


@dataclass(frozen=True)
class SparseField:
    """Samples F defined where the single-channel mask H is 1."""

    values: Image
    mask: Image

    def __post_init__(self):
        if self.mask.channels != 1:
            raise ConfigError(f"Mask must have 1 channel, got {self.mask.channels}")
        if self.values.shape[:2] != self.mask.shape[:2]:
            raise ConfigError(
                f"Values {self.values.shape[:2]} and mask {self.mask.shape[:2]} differ in size"
            )
        mask = self.mask.data
        if not np.all((mask == 0.0) | (mask == 1.0)):
            raise ConfigError("Mask entries must be 0 or 1")
        if np.any(self.values.data[np.broadcast_to(mask == 0.0, self.values.data.shape)] != 0.0):
            raise ConfigError("Values must be zero where the mask is 0")

    @classmethod
    def from_samples(cls, values: np.ndarray, mask: np.ndarray) -> "SparseField":
        """Build a field, zeroing values outside the mask."""
        mask_img = Image((np.asarray(mask) != 0).astype(np.float64))
        raw = np.asarray(values, dtype=np.float64)
        if raw.ndim == 2:
            raw = raw[:, :, None]
        return cls(values=Image(raw * mask_img.data), mask=mask_img)


def _as_raster(data: np.ndarray) -> np.ndarray:
    raster = np.asarray(data, dtype=np.float64)
    if raster.ndim == 2:
        raster = raster[:, :, None]
    if raster.ndim != 3:
        raise ConfigError(f"Expected an (H, W) or (H, W, C) raster, got {raster.shape}")
    return raster


def _directional_pass(
    current: np.ndarray,
    guidance: np.ndarray,
    axis: Axis,
    cfg: SmoothConfig,
    pool: Optional[ThreadPoolExecutor],
) -> np.ndarray:
    height, width, _ = current.shape
    extent = width if axis is Axis.COLUMN else height

    def solve(center: int):
        band = band_from_raster(current, center, cfg.r, axis)
        weights = pair_weights(band.coords, guidance[band.rows, band.cols], cfg.r, cfg.weight)
        return band, solve_subsystem(band.values, weights, cfg.lam, cfg.r)

    centers = band_centers(extent, cfg.r, cfg.tau)
    results = pool.map(solve, centers) if pool is not None else map(solve, centers)

    accum = np.zeros_like(current)
    counts = np.zeros((height, width))
    # Merge in center order regardless of worker count
    for band, solved in results:
        scatter_band(band, solved, accum, counts)
    return accum / counts[:, :, None]


def smooth_raster(
    target: np.ndarray, guidance: np.ndarray, cfg: SmoothConfig, threads: int = 1
) -> np.ndarray:
    """Smooth an (H, W, C) raster; see ``smooth``."""
    target = _as_raster(target)
    guidance = _as_raster(guidance)
    if target.shape[:2] != guidance.shape[:2]:
        raise ConfigError(
            f"Target {target.shape[:2]} and guidance {guidance.shape[:2]} differ in size"
        )
    if threads < 1:
        raise ConfigError(f"Thread count must be >= 1, got {threads}")

    current = target.copy()
    if cfg.lam == 0:
        return current

    axis = cfg.first_axis
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else nullcontext()
    with executor as pool:
        for index in range(cfg.iterations):
            logger.debug(f"Pass {index + 1}/{cfg.iterations} along {axis.value}")
            current = _directional_pass(current, guidance, axis, cfg, pool)
            axis = axis.other
    return current


def smooth(target: Image, guidance: Image, cfg: SmoothConfig, threads: int = 1) -> Image:
    """Edge-preserving smoothing of ``target`` steered by ``guidance``.

    Every channel of the target is filtered with the weights of the guidance;
    the guidance is never updated between passes.

    Args:
        target: Image to smooth
        guidance: Image the weights are computed from, same size as target
        cfg: Smoothing parameters
        threads: Worker count for band solves; output does not depend on it

    Returns:
        Smoothed image with the target's shape
    """
    return Image(smooth_raster(target.data, guidance.data, cfg, threads))


def interpolate_raster(
    values: np.ndarray,
    mask: np.ndarray,
    guidance: np.ndarray,
    cfg: SmoothConfig,
    threads: int = 1,
) -> Tuple[np.ndarray, np.ndarray]:
    """Guided interpolation of sparse samples.

    Smooths the samples and the mask in one run and divides them.

    Args:
        values: (H, W, C) samples, zero outside the mask
        mask: (H, W) or (H, W, 1) indicator of defined samples
        guidance: Guidance raster
        cfg: Smoothing parameters
        threads: Worker count

    Returns:
        (H, W, C) interpolated raster and the (H, W) boolean support map;
        unsupported pixels are 0
    """
    values = _as_raster(values)
    mask = _as_raster(mask)
    if not np.any(mask):
        raise ConfigError("Sparse mask has no samples")

    stacked = np.concatenate([values, mask[:, :, :1]], axis=2)
    smoothed = smooth_raster(stacked, guidance, cfg, threads)
    numerator, denominator = smoothed[:, :, :-1], smoothed[:, :, -1:]

    supported = denominator >= SUPPORT_FLOOR
    out = np.where(supported, numerator / np.where(supported, denominator, 1.0), 0.0)
    unsupported = int(np.count_nonzero(~supported))
    if unsupported:
        logger.warning(f"{unsupported} pixels have no sample support; set to 0")
    return out, supported[:, :, 0]


def interpolate_sparse(
    field: SparseField, guidance: Image, cfg: SmoothConfig, threads: int = 1
) -> Image:
    """Fill the undefined pixels of ``field`` by guided interpolation."""
    out, _ = interpolate_raster(field.values.data, field.mask.data, guidance.data, cfg, threads)
    return Image(out)
