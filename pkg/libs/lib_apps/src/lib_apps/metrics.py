"""Image comparison metrics."""

import numpy as np

from lib_common import ConfigError
from lib_imagebuf import Image


def mean_absolute_difference(a: Image, b: Image, scale: float = 1.0) -> float:
    """Mean of |a - b| over all samples, multiplied by ``scale``.

    Use ``scale=255`` to report depth errors on the 8-bit scale.
    """
    if a.data.shape != b.data.shape:
        raise ConfigError(f"Images differ: {a.data.shape} vs {b.data.shape}")
    return float(scale * np.mean(np.abs(a.data - b.data)))
