"""Guidance weights between pixel pairs.

Both weight kinds accept scalars or numpy arrays. Spatial distance is the
Euclidean distance between original image coordinates; range difference is
the L2 norm of the guidance difference over channels, multiplied by
``WeightParams.range_scale``.
"""

from typing import Union

import numpy as np

from lib_common import ConfigError
from lib_sgwls.config import WeightKind, WeightParams

ArrayLike = Union[float, np.ndarray]

# Smallest positive normal double; exp weights never drop below it
EXP_FLOOR = np.finfo(np.float64).tiny


def _result(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def frac_weight(spatial_dist: ArrayLike, range_diff: ArrayLike, p: WeightParams) -> ArrayLike:
    """1 / (|i-j|^alpha_s + eps) * 1 / (|G_i-G_j|^alpha_r + eps)."""
    spatial = np.power(np.asarray(spatial_dist, dtype=np.float64), p.alpha_s)
    rng = np.power(np.asarray(range_diff, dtype=np.float64), p.alpha_r)
    return _result(1.0 / (spatial + p.epsilon) / (rng + p.epsilon))


def exp_weight(spatial_dist: ArrayLike, range_diff: ArrayLike, p: WeightParams) -> ArrayLike:
    """exp(-|i-j|^2 / 2 sigma_s^2) * exp(-|G_i-G_j|^2 / 2 sigma_r^2)."""
    spatial = np.asarray(spatial_dist, dtype=np.float64)
    rng = np.asarray(range_diff, dtype=np.float64)
    value = np.exp(-(spatial * spatial) / (2.0 * p.sigma_s**2)) * np.exp(
        -(rng * rng) / (2.0 * p.sigma_r**2)
    )
    return _result(np.maximum(value, EXP_FLOOR))


def guidance_weight(spatial_dist: ArrayLike, range_diff: ArrayLike, p: WeightParams) -> ArrayLike:
    """Evaluate the weight kind selected by ``p.kind``."""
    if p.kind is WeightKind.EXP:
        return exp_weight(spatial_dist, range_diff, p)
    return frac_weight(spatial_dist, range_diff, p)


def pair_weights(coords: np.ndarray, guidance: np.ndarray, r: int, p: WeightParams) -> np.ndarray:
    """Weight table for a 1D sequence of pixels.

    Args:
        coords: (s, 2) original (row, col) of each position
        guidance: (s,) or (s, C) guidance samples at those positions
        r: Band half-width
        p: Weight constants

    Returns:
        (s, r) table W with W[k, t-1] the weight between positions k and k+t;
        entries past the end of the sequence are 0
    """
    coords = np.asarray(coords)
    s = coords.shape[0]
    values = np.asarray(guidance, dtype=np.float64).reshape(s, -1)

    table = np.zeros((s, r))
    for t in range(1, min(r, s - 1) + 1):
        step = coords[t:] - coords[:-t]
        spatial = np.hypot(step[:, 0], step[:, 1])
        diff = values[t:] - values[:-t]
        rng = p.range_scale * np.sqrt(np.sum(diff * diff, axis=1))
        table[:-t, t - 1] = guidance_weight(spatial, rng, p)
    return table


def edge_weights_along_band(guidance_band, r: int, p: WeightParams) -> np.ndarray:
    """Weight table for a band extracted from the guidance image.

    Args:
        guidance_band: Band carrying guidance values and original coordinates
        r: Band half-width
        p: Weight constants

    Returns:
        (s, r) weight table, see ``pair_weights``
    """
    coords = getattr(guidance_band, "coords", None)
    if coords is None:
        raise ConfigError("Band has no coordinate metadata")
    coords = np.asarray(coords)
    if coords.ndim != 2 or coords.shape != (len(guidance_band.values), 2):
        raise ConfigError(
            f"Band coordinates must have shape (s, 2), got {coords.shape}"
        )
    if r < 1:
        raise ConfigError(f"Band radius must be >= 1, got {r}")
    return pair_weights(coords, guidance_band.values, r, p)
