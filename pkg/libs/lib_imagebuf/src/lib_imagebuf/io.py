"""File-level image reading and writing."""

from pathlib import Path
from typing import Union

from lib_common import ConfigError, DecodeError, logger
from lib_imagebuf.image import Image
from lib_imagebuf.pfm import MAGICS as PFM_MAGICS
from lib_imagebuf.pfm import decode_pfm, encode_pfm
from lib_imagebuf.pnm import MAGICS as PNM_MAGICS
from lib_imagebuf.pnm import decode_pnm, encode_pnm

PathLike = Union[str, Path]

# Extension -> required channel count (None for any)
WRITERS = {".pgm": 1, ".ppm": 3, ".pfm": None}


def read_image(path: PathLike) -> Image:
    """Read a PGM, PPM or PFM file; the format is taken from the magic number.

    Args:
        path: File to read

    Returns:
        Decoded image
    """
    buf = Path(path).read_bytes()
    magic = buf[:2]
    if magic in PNM_MAGICS:
        img = decode_pnm(buf)
    elif magic in PFM_MAGICS:
        img = decode_pfm(buf)
    else:
        raise DecodeError(f"Unrecognized image format {magic!r} in {path}", 0)

    logger.debug(f"Read {path}: {img.width}x{img.height}x{img.channels}")
    return img


def write_image(img: Image, path: PathLike) -> None:
    """Write an image; the extension selects the format.

    LDR formats (.pgm, .ppm) clamp to [0, 1] and quantize to maxval 255.

    Args:
        img: Image to write
        path: Destination file
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in WRITERS:
        raise ConfigError(f"Unsupported output format '{suffix}' for {path}")

    channels = WRITERS[suffix]
    if channels is not None and img.channels != channels:
        raise ConfigError(
            f"{suffix} needs {channels} channel(s), image has {img.channels}"
        )

    data = encode_pfm(img) if suffix == ".pfm" else encode_pnm(img)
    path.write_bytes(data)
    logger.debug(f"Wrote {path}: {img.width}x{img.height}x{img.channels}")
