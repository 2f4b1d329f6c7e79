"""Serpentine bands: 2r+1 adjacent columns (or rows) flattened into 1D.

Column mode walks the image rows top to bottom, taking the window columns of
each row and reversing them on rows with an odd index, so consecutive band
positions stay neighbours in the image. Row mode is the same walk on the
transposed image.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from lib_common import ConfigError
from lib_imagebuf import Image
from lib_sgwls.config import Axis


@dataclass(frozen=True)
class Band:
    values: np.ndarray
    coords: np.ndarray
    axis: Axis
    center: int

    @property
    def rows(self) -> np.ndarray:
        return self.coords[:, 0]

    @property
    def cols(self) -> np.ndarray:
        return self.coords[:, 1]

    def __len__(self) -> int:
        return self.coords.shape[0]


def window_bounds(extent: int, center: int, r: int) -> Tuple[int, int]:
    """First index and width of the window around ``center``, clipped to the image."""
    width = min(2 * r + 1, extent)
    lo = min(max(center - r, 0), extent - width)
    return lo, width


def _serpentine(lines: int, extent: int, center: int, r: int) -> Tuple[np.ndarray, np.ndarray]:
    lo, width = window_bounds(extent, center, r)
    across = np.tile(np.arange(lo, lo + width), (lines, 1))
    across[1::2] = across[1::2, ::-1]
    along = np.repeat(np.arange(lines), width)
    return along, across.ravel()


def band_coords(height: int, width: int, center: int, r: int, axis: Axis) -> np.ndarray:
    """(s, 2) original (row, col) of every band position.

    Args:
        height: Image height
        width: Image width
        center: Index of the central column (column mode) or row (row mode)
        r: Band half-width, >= 0
        axis: Sweep direction
    """
    if r < 0:
        raise ConfigError(f"Band radius must be >= 0, got {r}")
    extent = width if axis is Axis.COLUMN else height
    if not 0 <= center < extent:
        raise ConfigError(f"Band center {center} outside [0, {extent})")

    if axis is Axis.COLUMN:
        rows, cols = _serpentine(height, width, center, r)
    else:
        cols, rows = _serpentine(width, height, center, r)
    return np.stack([rows, cols], axis=1)


def band_from_raster(raster: np.ndarray, center: int, r: int, axis: Axis) -> Band:
    """Extract a band from an (H, W, C) raster.

    Values are (s,) for one channel and (s, C) otherwise.
    """
    height, width, channels = raster.shape
    coords = band_coords(height, width, center, r, axis)
    values = raster[coords[:, 0], coords[:, 1]]
    if channels == 1:
        values = values[:, 0]
    return Band(values=values, coords=coords, axis=axis, center=center)


def extract_band(img: Image, center: int, r: int, axis: Axis) -> Band:
    return band_from_raster(img.data, center, r, axis)


def scatter_band(band: Band, solved: np.ndarray, accum: np.ndarray, counts: np.ndarray) -> None:
    """Add solved values into ``accum`` at the band's coordinates.

    Args:
        band: Band the values were solved on
        solved: Values parallel to ``band.values``
        accum: (H, W) or (H, W, C) accumulation raster, updated in place
        counts: (H, W) contribution counter, updated in place
    """
    solved = np.asarray(solved)
    if solved.shape[0] != len(band):
        raise ConfigError(
            f"Solved length {solved.shape[0]} does not match band length {len(band)}"
        )
    rows, cols = band.rows, band.cols
    height, width = counts.shape
    if rows.min() < 0 or cols.min() < 0 or rows.max() >= height or cols.max() >= width:
        raise ConfigError(
            f"Band coordinates fall outside the {height}x{width} raster"
        )

    if accum.ndim == 3 and solved.ndim == 1:
        solved = solved[:, None]
    accum[rows, cols] += solved
    counts[rows, cols] += 1


def band_centers(extent: int, r: int, tau: int) -> List[int]:
    """Centers r, r+tau, ... up to extent-1-r, the last one always included.

    An extent narrower than 2r+1 gets a single center whose window spans it.
    """
    if extent < 1:
        raise ConfigError(f"Extent must be >= 1, got {extent}")
    if tau < 1 or tau > 2 * r + 1:
        raise ConfigError(f"tau must be in [1, {2 * r + 1}], got {tau}")
    if extent <= 2 * r + 1:
        return [(extent - 1) // 2]

    last = extent - 1 - r
    centers = list(range(r, last + 1, tau))
    if centers[-1] != last:
        centers.append(last)
    return centers
