"""PGM/PPM codec (plain P2/P3 and raw P5/P6).

Header grammar, per netpbm::

    magic  := "P2" | "P3" | "P5" | "P6"
    header := magic (ws | comment)+ width (ws | comment)+ height
              (ws | comment)+ maxval ws
    comment := "#" <bytes up to and including newline>

Raw payloads start right after the single whitespace byte that ends
``maxval``; samples are one byte when maxval < 256 and two big-endian bytes
otherwise. Samples are scaled to [0, 1] by ``1/maxval``. Plain payloads are
whitespace separated decimal samples.
"""

import re
from typing import List, Tuple

import numpy as np

from lib_common import ConfigError, DecodeError
from lib_imagebuf.image import Image

MAGICS = {
    b"P2": (1, False),
    b"P3": (3, False),
    b"P5": (1, True),
    b"P6": (3, True),
}
MAX_MAXVAL = 65535

_PLAIN_TOKEN = re.compile(rb"#[^\n]*|\S+")


def _read_header(buf: bytes, count: int) -> Tuple[List[Tuple[int, int]], int]:
    """Read ``count`` integer header fields after the magic number.

    Returns:
        List of (value, offset) pairs and the offset just past the last field
    """
    pos = 2
    fields = []
    while len(fields) < count:
        if pos >= len(buf):
            raise DecodeError("Unexpected end of header", pos)
        byte = buf[pos : pos + 1]
        if byte == b"#":
            # Comment runs to the end of the line
            end = buf.find(b"\n", pos)
            pos = len(buf) if end < 0 else end + 1
        elif byte.isspace():
            pos += 1
        elif byte.isdigit():
            start = pos
            while pos < len(buf) and buf[pos : pos + 1].isdigit():
                pos += 1
            fields.append((int(buf[start:pos]), start))
        else:
            raise DecodeError(f"Unexpected byte {byte!r} in header", pos)
    return fields, pos


def decode_pnm(buf: bytes) -> Image:
    """Decode a PGM or PPM file held in memory.

    Args:
        buf: Complete file contents

    Returns:
        Image with 1 (PGM) or 3 (PPM) channels scaled to [0, 1]
    """
    magic = buf[:2]
    if magic not in MAGICS:
        raise DecodeError(f"Unsupported magic number {magic!r}", 0)
    channels, raw = MAGICS[magic]

    fields, pos = _read_header(buf, 3)
    (width, width_at), (height, height_at), (maxval, maxval_at) = fields
    if width < 1:
        raise DecodeError(f"Invalid width {width}", width_at)
    if height < 1:
        raise DecodeError(f"Invalid height {height}", height_at)
    if not 1 <= maxval <= MAX_MAXVAL:
        raise DecodeError(f"Unsupported maxval {maxval}", maxval_at)

    count = width * height * channels
    if raw:
        samples = _decode_raw(buf, pos, count, maxval)
    else:
        samples = _decode_plain(buf, pos, count, maxval)

    data = samples.astype(np.float64).reshape(height, width, channels) / maxval
    return Image(data)


def _decode_raw(buf: bytes, pos: int, count: int, maxval: int) -> np.ndarray:
    if pos >= len(buf) or not buf[pos : pos + 1].isspace():
        raise DecodeError("Missing whitespace after maxval", pos)
    start = pos + 1

    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    expected = count * dtype.itemsize
    available = len(buf) - start
    if available < expected:
        raise DecodeError(
            f"Truncated payload: expected {expected} bytes, found {available}",
            len(buf),
        )

    samples = np.frombuffer(buf, dtype=dtype, count=count, offset=start)
    over = np.flatnonzero(samples > maxval)
    if over.size:
        raise DecodeError(
            f"Sample {int(samples[over[0]])} exceeds maxval {maxval}",
            start + int(over[0]) * dtype.itemsize,
        )
    return samples


def _decode_plain(buf: bytes, pos: int, count: int, maxval: int) -> np.ndarray:
    samples = np.empty(count, dtype=np.int64)
    n = 0
    for match in _PLAIN_TOKEN.finditer(buf, pos):
        token = match.group()
        if token.startswith(b"#"):
            continue
        if n == count:
            break
        if not token.isdigit():
            raise DecodeError(f"Invalid sample {token!r}", match.start())
        value = int(token)
        if value > maxval:
            raise DecodeError(f"Sample {value} exceeds maxval {maxval}", match.start())
        samples[n] = value
        n += 1

    if n < count:
        raise DecodeError(
            f"Truncated payload: expected {count} samples, found {n}", len(buf)
        )
    return samples


def quantize(data: np.ndarray, maxval: int = 255) -> np.ndarray:
    """Clamp to [0, 1] and quantize with round-half-up."""
    return np.floor(np.clip(data, 0.0, 1.0) * maxval + 0.5).astype(np.int64)


def encode_pnm(img: Image, plain: bool = False) -> bytes:
    """Encode an image as PGM (1 channel) or PPM (3 channels) with maxval 255.

    Args:
        img: Image to encode
        plain: Write the ASCII P2/P3 variant instead of raw P5/P6

    Returns:
        File contents
    """
    if img.channels not in (1, 3):
        raise ConfigError(f"PNM needs 1 or 3 channels, got {img.channels}")

    if img.channels == 1:
        magic = "P2" if plain else "P5"
    else:
        magic = "P3" if plain else "P6"
    header = f"{magic}\n{img.width} {img.height}\n255\n".encode("ascii")

    samples = quantize(img.data)
    if plain:
        rows = samples.reshape(img.height, img.width * img.channels)
        body = "\n".join(" ".join(str(v) for v in row) for row in rows) + "\n"
        return header + body.encode("ascii")
    return header + samples.astype(np.uint8).tobytes()
