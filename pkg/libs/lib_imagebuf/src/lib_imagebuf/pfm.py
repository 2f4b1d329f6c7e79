"""PFM codec (``Pf`` grayscale, ``PF`` colour).

Header grammar::

    "PF" | "Pf"  ws  width  ws  height  ws  scale  ws-byte  payload

A negative ``scale`` means little-endian float32 samples, a positive one
big-endian; its magnitude is ignored. Scanlines are stored bottom-up.
"""

import re

import numpy as np

from lib_common import DecodeError
from lib_imagebuf.image import Image

MAGICS = {b"Pf": 1, b"PF": 3}

_TOKEN = re.compile(rb"\S+")


def decode_pfm(buf: bytes) -> Image:
    """Decode a PFM file held in memory.

    Args:
        buf: Complete file contents

    Returns:
        Image with raw float samples, top scanline first
    """
    magic = buf[:2]
    if magic not in MAGICS:
        raise DecodeError(f"Unsupported magic number {magic!r}", 0)
    channels = MAGICS[magic]

    tokens = []
    pos = 2
    for match in _TOKEN.finditer(buf, 2):
        tokens.append((match.group(), match.start()))
        pos = match.end()
        if len(tokens) == 3:
            break
    if len(tokens) < 3:
        raise DecodeError("Unexpected end of header", len(buf))

    try:
        width = int(tokens[0][0])
        height = int(tokens[1][0])
    except ValueError:
        raise DecodeError("Invalid dimensions", tokens[0][1])
    if width < 1 or height < 1:
        raise DecodeError(f"Invalid dimensions {width}x{height}", tokens[0][1])
    try:
        scale = float(tokens[2][0])
    except ValueError:
        raise DecodeError(f"Invalid scale {tokens[2][0]!r}", tokens[2][1])
    if scale == 0.0 or not np.isfinite(scale):
        raise DecodeError(f"Invalid scale {scale}", tokens[2][1])

    if pos >= len(buf) or not buf[pos : pos + 1].isspace():
        raise DecodeError("Missing whitespace after scale", pos)
    start = pos + 1

    dtype = np.dtype("<f4") if scale < 0 else np.dtype(">f4")
    count = width * height * channels
    expected = count * dtype.itemsize
    available = len(buf) - start
    if available < expected:
        raise DecodeError(
            f"Truncated payload: expected {expected} bytes, found {available}",
            len(buf),
        )

    samples = np.frombuffer(buf, dtype=dtype, count=count, offset=start)
    bad = np.flatnonzero(~np.isfinite(samples))
    if bad.size:
        raise DecodeError("Non-finite sample", start + int(bad[0]) * dtype.itemsize)

    data = samples.astype(np.float64).reshape(height, width, channels)[::-1]
    return Image(data)


def encode_pfm(img: Image) -> bytes:
    """Encode an image as little-endian PFM.

    Args:
        img: Image with 1 or 3 channels

    Returns:
        File contents
    """
    magic = "Pf" if img.channels == 1 else "PF"
    header = f"{magic}\n{img.width} {img.height}\n-1.0\n".encode("ascii")
    return header + img.data[::-1].astype("<f4").tobytes()
