"""PGM (P2/P5) and PNG reading and writing.

PGM is handled here directly; PNG goes through Pillow.
"""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .core import BinaryMask, as_gray_image, to_grayscale
from .errors import ImageFormatError


def _pgm_tokens(data: bytes, count: int, start: int = 0):
    """Pull ``count`` whitespace-separated header tokens, skipping comments."""
    tokens = []
    i = start
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i:i + 1].isspace():
            i += 1
        if i >= n:
            raise ImageFormatError("truncated PGM header")
        if data[i:i + 1] == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
            j += 1
        tokens.append(data[i:j])
        i = j
    return tokens, i


def parse_pgm(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"not a PGM file (magic {magic!r})")
    try:
        (w, h, maxval), pos = _pgm_tokens(data, 3, 2)
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise ImageFormatError(f"bad PGM header: {exc}") from None
    if maxval != 255:
        raise ImageFormatError(f"only maxval 255 is supported, got {maxval}")
    if width <= 0 or height <= 0:
        raise ImageFormatError(f"bad PGM size {width}x{height}")
    n = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates header and raster
        raster = data[pos + 1:pos + 1 + n]
        if len(raster) != n:
            raise ImageFormatError("truncated PGM raster")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        try:
            toks, _ = _pgm_tokens(data, n, pos)
            values = np.array([int(t) for t in toks], dtype=np.int64)
        except ValueError as exc:
            raise ImageFormatError(f"bad PGM raster: {exc}") from None
        if values.min() < 0 or values.max() > 255:
            raise ImageFormatError("PGM sample out of range")
        pixels = values.astype(np.uint8)
    return pixels.reshape(height, width).copy()


def encode_pgm(img) -> bytes:
    img = as_gray_image(img)
    h, w = img.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def _read_png(path: Path) -> np.ndarray:
    from PIL import Image

    try:
        with Image.open(path) as im:
            mode = im.mode
            if mode == "L":
                return np.array(im, dtype=np.uint8)
            if mode == "RGB":
                rgb = np.array(im, dtype=np.uint8)
                h, w, _ = rgb.shape
                return to_grayscale(rgb, w, h)
            if mode == "1":
                return np.array(im.convert("L"), dtype=np.uint8)
            raise ImageFormatError(f"unsupported PNG mode {mode!r}")
    except OSError as exc:
        raise ImageFormatError(str(exc)) from None


def read_image(path) -> np.ndarray:
    """Read a gray image from a PGM (P2/P5) or 8-bit PNG file."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ImageFormatError(f"cannot read {path}: {exc}") from None
    if data[:2] in (b"P2", b"P5"):
        return parse_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _read_png(path)
    raise ImageFormatError(f"{path}: unrecognised image format")


def write_image(path, img) -> None:
    """Write PNG when the suffix is ``.png``, PGM P5 otherwise."""
    if isinstance(img, BinaryMask):
        img = img.to_image()
    img = as_gray_image(img)
    path = Path(path)
    if path.suffix.lower() == ".png":
        from PIL import Image

        Image.fromarray(img).save(path)
    else:
        tmp = path.with_name(path.name + f".tmp{os.getpid()}")
        tmp.write_bytes(encode_pgm(img))
        tmp.replace(path)


def read_mask(path, **kwargs) -> BinaryMask:
    return BinaryMask.from_image(read_image(path), **kwargs)
