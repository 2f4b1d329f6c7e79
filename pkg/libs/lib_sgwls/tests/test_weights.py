"""Tests for guidance weights."""

from types import SimpleNamespace

import numpy as np
import pytest
from lib_common import ConfigError
from lib_imagebuf import Image
from lib_sgwls import (
    Axis,
    SmoothConfig,
    WeightKind,
    WeightParams,
    edge_weights_along_band,
    exp_weight,
    extract_band,
    frac_weight,
)
from lib_sgwls.weights import guidance_weight
from pydantic import ValidationError

FRAC = WeightParams(kind=WeightKind.FRAC, alpha_s=1.2, alpha_r=1.2)
EXP = WeightParams(kind=WeightKind.EXP, sigma_s=2.0, sigma_r=0.5)


def test_frac_weight_values():
    """Test frac weight at known points."""
    assert frac_weight(1.0, 0.0, FRAC) == pytest.approx(1.0 / (1.0 + 1e-4) / 1e-4)
    assert frac_weight(1.0, 0.0, FRAC) == pytest.approx(9999.0, rel=1e-6)
    assert frac_weight(0.0, 0.0, FRAC) == pytest.approx(1e8)
    assert frac_weight(1.0, 0.5, FRAC) > frac_weight(1.0, 0.9, FRAC)
    assert frac_weight(1.0, 0.5, FRAC) > frac_weight(2.0, 0.5, FRAC)


def test_exp_weight_values():
    """Test exp weight at known points."""
    assert exp_weight(0.0, 0.0, EXP) == 1.0
    assert exp_weight(EXP.sigma_s * np.sqrt(2.0), 0.0, EXP) == pytest.approx(np.exp(-1.0))
    assert 0.0 < exp_weight(1.0, 0.3, EXP) < 1.0

    # Far-apart values underflow to the floor, never to 0
    assert exp_weight(1.0, 1e6, EXP) > 0.0


def test_weights_accept_arrays():
    """Test vectorised evaluation matches scalar evaluation."""
    spatial = np.array([1.0, np.sqrt(2.0), 2.0])
    rng = np.array([0.0, 0.1, 0.7])
    for p in (FRAC, EXP):
        values = guidance_weight(spatial, rng, p)
        assert values.shape == (3,)
        for k in range(3):
            assert values[k] == pytest.approx(guidance_weight(spatial[k], rng[k], p))


def test_weight_params_validation():
    """Test parameter constraints."""
    with pytest.raises(ValidationError):
        WeightParams(epsilon=0.0)
    with pytest.raises(ValidationError):
        WeightParams(sigma_s=-1.0)
    with pytest.raises(ValidationError):
        SmoothConfig(r=1, tau=4)
    with pytest.raises(ValidationError):
        SmoothConfig(lam=-1.0)
    with pytest.raises(ValidationError):
        SmoothConfig(iterations=0)
    assert SmoothConfig(r=2, tau=5).tau == 5
    assert Axis.COLUMN.other is Axis.ROW


def test_edge_weights_constant_guidance():
    """Test constant guidance with a very wide spatial kernel gives unit weights."""
    guidance = Image.constant(4, 5, 0.4)
    p = WeightParams(kind=WeightKind.EXP, sigma_s=1e9, sigma_r=1.0)
    band = extract_band(guidance, 2, 1, Axis.COLUMN)
    table = edge_weights_along_band(band, 1, p)
    assert table.shape == (len(band), 1)
    assert np.allclose(table[:-1], 1.0)
    assert table[-1, 0] == 0.0


def test_edge_weights_brute_force():
    """Test the table against per-pair evaluation in original coordinates."""
    rng = np.random.default_rng(0)
    guidance = Image(rng.random((5, 6, 3)))
    r = 2
    for axis in (Axis.COLUMN, Axis.ROW):
        band = extract_band(guidance, 2, r, axis)
        table = edge_weights_along_band(band, r, FRAC)
        s = len(band)
        for k in range(s):
            for t in range(1, r + 1):
                if k + t >= s:
                    assert table[k, t - 1] == 0.0
                    continue
                (y0, x0), (y1, x1) = band.coords[k], band.coords[k + t]
                spatial = np.hypot(y1 - y0, x1 - x0)
                diff = np.linalg.norm(guidance.data[y0, x0] - guidance.data[y1, x1])
                assert table[k, t - 1] == pytest.approx(frac_weight(spatial, diff, FRAC))


def test_edge_weights_spatial_distance_across_rows():
    """Test the serpentine turn is a unit step in the image."""
    guidance = Image(np.arange(9, dtype=float).reshape(3, 3) / 9)
    p = WeightParams(kind=WeightKind.EXP, sigma_s=1.0, sigma_r=1e9)
    band = extract_band(guidance, 1, 1, Axis.COLUMN)
    table = edge_weights_along_band(band, 1, p)
    # Positions 2 -> 3 are pixels (0, 2) and (1, 2)
    assert table[2, 0] == pytest.approx(np.exp(-0.5))


def test_edge_weights_range_scale():
    """Test range_scale multiplies guidance differences."""
    guidance = Image(np.array([[0.0, 1.0 / 255]]))
    band = extract_band(guidance, 0, 1, Axis.ROW)
    scaled = WeightParams(kind=WeightKind.EXP, sigma_s=1.0, sigma_r=1.0, range_scale=255.0)
    table = edge_weights_along_band(band, 1, scaled)
    assert table[0, 0] == pytest.approx(np.exp(-0.5) * np.exp(-0.5))


def test_edge_weights_requires_coords():
    """Test missing coordinate metadata is rejected."""
    with pytest.raises(ConfigError):
        edge_weights_along_band(SimpleNamespace(values=np.zeros(3), coords=None), 1, FRAC)
    with pytest.raises(ConfigError):
        edge_weights_along_band(
            SimpleNamespace(values=np.zeros(3), coords=np.zeros((2, 2))), 1, FRAC
        )
