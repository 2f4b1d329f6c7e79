"""Immutable image container."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from lib_common import ConfigError

SUPPORTED_CHANNELS = (1, 3)


@dataclass(frozen=True, eq=False)
class Image:
    """Row-major, channel-interleaved raster of float64 samples.

    ``data`` always has shape ``(height, width, channels)``; a 2D array passed
    to the constructor is read as a single-channel image. The array is copied
    and frozen, so an Image can be shared freely between workers.
    """

    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim == 2:
            data = data[:, :, None]
        if data.ndim != 3:
            raise ConfigError(f"Image data must be 2D or 3D, got {data.ndim}D")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ConfigError(f"Image must be at least 1x1, got {data.shape[:2]}")
        if data.shape[2] not in SUPPORTED_CHANNELS:
            raise ConfigError(f"Image must have 1 or 3 channels, got {data.shape[2]}")
        if not np.all(np.isfinite(data)):
            raise ConfigError("Image samples must be finite")

        data = np.ascontiguousarray(data)
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> Tuple[int, int]:
        """(height, width) of the raster."""
        return self.data.shape[0], self.data.shape[1]

    def plane(self, channel: int = 0) -> np.ndarray:
        """Return one channel as a read-only (height, width) view."""
        return self.data[:, :, channel]

    def require_channels(self, channels: int, what: str = "image") -> None:
        """Raise ConfigError unless the image has exactly ``channels`` channels."""
        if self.channels != channels:
            raise ConfigError(
                f"{what} must have {channels} channel(s), got {self.channels}"
            )

    @classmethod
    def constant(
        cls, height: int, width: int, value: float, channels: int = 1
    ) -> "Image":
        """Create an image filled with one value."""
        return cls(np.full((height, width, channels), value, dtype=np.float64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )
