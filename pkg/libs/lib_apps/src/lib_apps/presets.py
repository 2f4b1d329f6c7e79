"""Published parameter presets of the four applications.

The lambda values of the colour-guided presets assume 8-bit guidance, so
those presets set ``range_scale=255`` for guidance stored in [0, 1]. Tone
mapping filters log10 luminance directly.
"""

from typing import Any, Dict, Optional

from lib_common import ConfigError
from lib_sgwls import SmoothConfig, WeightKind, WeightParams

DETAIL_BOOST = 3.0
TONEMAP_LAMBDAS = (5.0, 40.0, 320.0)
UPSAMPLE_LAMBDAS = {2: 100.0, 4: 200.0, 8: 400.0}
PASSES = 4
DEFAULT_PRESET = "enhance"

_FRAC_8BIT = WeightParams(kind=WeightKind.FRAC, alpha_s=1.2, alpha_r=1.2, range_scale=255.0)


def _upsample(lam: float) -> SmoothConfig:
    return SmoothConfig(
        lam=lam,
        r=4,
        tau=4,
        iterations=PASSES,
        weight=WeightParams(kind=WeightKind.EXP, sigma_s=4.0, sigma_r=3.0, range_scale=255.0),
    )


PRESETS: Dict[str, SmoothConfig] = {
    "enhance": SmoothConfig(lam=900.0, r=1, tau=1, iterations=PASSES, weight=_FRAC_8BIT),
    "tonemap": SmoothConfig(
        lam=TONEMAP_LAMBDAS[0],
        r=1,
        tau=1,
        iterations=PASSES,
        weight=WeightParams(kind=WeightKind.FRAC, alpha_s=1.2, alpha_r=1.2),
    ),
    "upsample2x": _upsample(UPSAMPLE_LAMBDAS[2]),
    "upsample4x": _upsample(UPSAMPLE_LAMBDAS[4]),
    "upsample8x": _upsample(UPSAMPLE_LAMBDAS[8]),
    # Small-radius baseline for the depth experiments
    "upsample_r1": SmoothConfig(
        lam=900.0,
        r=1,
        tau=1,
        iterations=PASSES,
        weight=WeightParams(kind=WeightKind.EXP, sigma_s=1.0, sigma_r=3.0, range_scale=255.0),
    ),
    "colorize": SmoothConfig(
        lam=900.0,
        r=4,
        tau=2,
        iterations=PASSES,
        weight=WeightParams(kind=WeightKind.EXP, sigma_s=4.0, sigma_r=2.0, range_scale=255.0),
    ),
}

SMOOTH_FIELDS = ("lam", "r", "tau", "iterations", "first_axis")
WEIGHT_FIELDS = ("kind", "alpha_s", "alpha_r", "sigma_s", "sigma_r", "epsilon", "range_scale")


def get_preset(name: str) -> SmoothConfig:
    """Look up a preset by name."""
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"Unknown preset '{name}'. Available: {', '.join(sorted(PRESETS))}"
        )


def upsample_preset_name(factor: int) -> str:
    """Preset name for a depth upsampling factor; factors without one use 4x."""
    return f"upsample{factor}x" if factor in UPSAMPLE_LAMBDAS else "upsample4x"


def upsample_preset(factor: int) -> SmoothConfig:
    return get_preset(upsample_preset_name(factor))


def build_config(preset: Optional[str] = None, **overrides: Any) -> SmoothConfig:
    """Start from a preset (``DEFAULT_PRESET`` if none) and apply flat overrides.

    Keys are SmoothConfig fields or WeightParams fields; None values are
    ignored. Invalid values raise pydantic's ValidationError.
    """
    base = get_preset(preset or DEFAULT_PRESET)
    smooth_values: Dict[str, Any] = base.model_dump()
    weight_values: Dict[str, Any] = smooth_values.pop("weight")

    for key, value in overrides.items():
        if value is None:
            continue
        if key in SMOOTH_FIELDS:
            smooth_values[key] = value
        elif key in WEIGHT_FIELDS:
            weight_values[key] = value
        else:
            raise ConfigError(f"Unknown configuration field '{key}'")

    return SmoothConfig.model_validate({**smooth_values, "weight": weight_values})
