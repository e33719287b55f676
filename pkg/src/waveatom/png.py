"""Minimal 8-bit grayscale PNG encoding.

Hand-rolled so identical pixel arrays always produce identical files:
fixed chunk layout (IHDR, IDAT, IEND, nothing else), filter byte 0 on
every row, and a pinned zlib compression level. General-purpose image
libraries may change compressor settings between releases, which would
silently break content hashing and dataset verification.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

SIGNATURE = b"\x89PNG\r\n\x1a\n"
ZLIB_LEVEL = 6  # frozen: part of the byte format


def _chunk(tag: bytes, data: bytes) -> bytes:
    body = tag + data
    return struct.pack(">I", len(data)) + body + struct.pack(">I", zlib.crc32(body) & 0xFFFFFFFF)


def encode_gray8(pixels: np.ndarray) -> bytes:
    """Encode an (H, W) uint8 array as a non-interlaced grayscale PNG."""
    if pixels.ndim != 2:
        raise ValueError(f"expected a 2-D pixel array, got shape {pixels.shape}")
    if pixels.dtype != np.uint8:
        raise ValueError(f"expected uint8 pixels, got {pixels.dtype}")
    height, width = pixels.shape
    if width < 1 or height < 1:
        raise ValueError("image must be at least 1x1")
    # bit depth 8, color type 0 (grayscale), deflate, adaptive filtering off, no interlace
    header = struct.pack(">IIBBBBB", width, height, 8, 0, 0, 0, 0)
    scanlines = np.zeros((height, width + 1), dtype=np.uint8)
    scanlines[:, 1:] = pixels
    idat = zlib.compress(scanlines.tobytes(), ZLIB_LEVEL)
    return SIGNATURE + _chunk(b"IHDR", header) + _chunk(b"IDAT", idat) + _chunk(b"IEND", b"")
