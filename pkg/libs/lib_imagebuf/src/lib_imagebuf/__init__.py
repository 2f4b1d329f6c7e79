"""Image container, colour utilities and PGM/PPM/PFM codecs."""

import lib_common
from lib_imagebuf.color import luma, rgb_to_yuv, yuv_to_rgb
from lib_imagebuf.image import Image
from lib_imagebuf.io import read_image, write_image
from lib_imagebuf.pfm import decode_pfm, encode_pfm
from lib_imagebuf.pnm import decode_pnm, encode_pnm

# Re-export common logger
logger = lib_common.logger

__all__ = [
    "Image",
    "decode_pfm",
    "decode_pnm",
    "encode_pfm",
    "encode_pnm",
    "luma",
    "read_image",
    "rgb_to_yuv",
    "write_image",
    "yuv_to_rgb",
]
