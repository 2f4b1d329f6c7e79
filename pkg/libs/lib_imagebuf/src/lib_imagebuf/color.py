"""BT.601 full-range colour conversion and luminance helpers."""

import numpy as np

from lib_imagebuf.image import Image

# RGB -> YUV (Y in [0, 1], U and V centred at 0)
RGB_TO_YUV = np.array(
    [
        [0.299000, 0.587000, 0.114000],
        [-0.168736, -0.331264, 0.500000],
        [0.500000, -0.418688, -0.081312],
    ]
)
YUV_TO_RGB = np.linalg.inv(RGB_TO_YUV)

LUMA = RGB_TO_YUV[0]


def rgb_to_yuv(img: Image) -> Image:
    """Convert an RGB image to YUV."""
    img.require_channels(3, "RGB image")
    return Image(img.data @ RGB_TO_YUV.T)


def yuv_to_rgb(img: Image) -> Image:
    """Convert a YUV image back to RGB (not clamped)."""
    img.require_channels(3, "YUV image")
    return Image(img.data @ YUV_TO_RGB.T)


def luma(img: Image) -> Image:
    """Return the Y channel of an RGB image; grayscale images pass through."""
    if img.channels == 1:
        return img
    return Image(img.data @ LUMA)
