"""Reading and writing portable anymap images (P1, P2, P4, P5).

Images are held as 2-D numpy arrays indexed ``[row, col]``.  For bitmaps a
1 is an inked (black) pixel, which is also the PBM meaning of a set bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BinaryImage",
    "RasterImage",
    "PNMError",
    "UnknownMagicError",
    "BadHeaderError",
    "TruncatedDataError",
    "SampleRangeError",
    "parse_pnm",
    "read_pnm",
    "write_pnm",
    "default_threshold",
    "binarize",
]

_WHITESPACE = b" \t\n\r\v\f"


class PNMError(ValueError):
    """Malformed PNM data.  ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class UnknownMagicError(PNMError):
    pass


class BadHeaderError(PNMError):
    pass


class TruncatedDataError(PNMError):
    pass


class SampleRangeError(PNMError):
    pass


@dataclass(frozen=True, eq=False)
class BinaryImage:
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise ValueError(f"bitmap must be a non-empty 2-D array, got shape {bits.shape}")
        if not np.isin(bits, (0, 1)).all():
            raise ValueError("bitmap values must be 0 or 1")
        bits = bits.astype(np.uint8)
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __repr__(self):
        return f"BinaryImage({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class RasterImage:
    pixels: np.ndarray
    max_value: int = 255

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ValueError(f"raster must be a non-empty 2-D array, got shape {pixels.shape}")
        if not 1 <= self.max_value <= 65535:
            raise ValueError(f"max_value must be in [1, 65535], got {self.max_value}")
        if pixels.size and (pixels.min() < 0 or pixels.max() > self.max_value):
            raise ValueError(f"pixel values must be in [0, {self.max_value}]")
        pixels = pixels.astype(np.int64)
        pixels.flags.writeable = False
        object.__setattr__(self, "pixels", pixels)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, RasterImage):
            return NotImplemented
        return self.max_value == other.max_value and np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"RasterImage({self.width}x{self.height}, max_value={self.max_value})"


class _Reader:
    """Cursor over the header/ASCII section of a PNM byte string."""

    def __init__(self, data):
        self.data = data
        self.pos = 0

    def skip_space(self):
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos : self.pos + 1]
            if ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif ch in _WHITESPACE:
                self.pos += 1
            else:
                break

    def integer(self, what):
        self.skip_space()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if self.pos == start:
            if start >= len(data):
                raise TruncatedDataError(f"unexpected end of data reading {what}", start)
            raise BadHeaderError(f"expected an unsigned integer for {what}", start)
        return int(data[start : self.pos]), start

    def positive(self, what, limit=None):
        value, at = self.integer(what)
        if value <= 0:
            raise BadHeaderError(f"{what} must be positive, got {value}", at)
        if limit is not None and value > limit:
            raise BadHeaderError(f"{what} must be at most {limit}, got {value}", at)
        return value

    def end_of_header(self):
        # exactly one whitespace byte separates the header from raw samples
        if self.pos >= len(self.data) or self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            raise BadHeaderError("header must end with a single whitespace byte", self.pos)
        self.pos += 1


def parse_pnm(data: bytes) -> BinaryImage | RasterImage:
    """Decode a P1, P2, P4 or P5 file.

    Only the first ``width * height`` samples are consumed; anything after
    them is ignored.
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise UnknownMagicError(f"unknown magic number {magic!r}", 0)
    reader = _Reader(data)
    reader.pos = 2
    width = reader.positive("width")
    height = reader.positive("height")
    count = width * height

    if magic == b"P1":
        bits = np.empty(count, dtype=np.uint8)
        for i in range(count):
            reader.skip_space()
            ch = data[reader.pos : reader.pos + 1]
            if not ch:
                raise TruncatedDataError(f"expected {count} samples, got {i}", reader.pos)
            if ch not in b"01":
                raise SampleRangeError(f"PBM sample must be 0 or 1, got {ch!r}", reader.pos)
            bits[i] = ch == b"1"
            reader.pos += 1
        return BinaryImage(bits.reshape(height, width))

    if magic == b"P4":
        reader.end_of_header()
        stride = (width + 7) // 8
        need = stride * height
        raw = data[reader.pos : reader.pos + need]
        if len(raw) < need:
            raise TruncatedDataError(f"expected {need} bytes of bitmap data, got {len(raw)}", reader.pos + len(raw))
        rows = np.frombuffer(raw, dtype=np.uint8).reshape(height, stride)
        return BinaryImage(np.unpackbits(rows, axis=1)[:, :width])

    max_value = reader.positive("max value", limit=65535)
    if magic == b"P2":
        pixels = np.empty(count, dtype=np.int64)
        for i in range(count):
            value, at = reader.integer(f"sample {i}")
            if value > max_value:
                raise SampleRangeError(f"sample {value} exceeds max value {max_value}", at)
            pixels[i] = value
        return RasterImage(pixels.reshape(height, width), max_value)

    reader.end_of_header()
    dtype = np.dtype(">u2") if max_value > 255 else np.dtype("u1")
    need = count * dtype.itemsize
    raw = data[reader.pos : reader.pos + need]
    if len(raw) < need:
        raise TruncatedDataError(f"expected {need} bytes of pixel data, got {len(raw)}", reader.pos + len(raw))
    pixels = np.frombuffer(raw, dtype=dtype).astype(np.int64)
    over = np.flatnonzero(pixels > max_value)
    if over.size:
        i = int(over[0])
        raise SampleRangeError(
            f"sample {pixels[i]} exceeds max value {max_value}", reader.pos + i * dtype.itemsize
        )
    return RasterImage(pixels.reshape(height, width), max_value)


def read_pnm(path) -> BinaryImage | RasterImage:
    with open(path, "rb") as fh:
        return parse_pnm(fh.read())


def write_pnm(image: BinaryImage | RasterImage, ascii: bool = True) -> bytes:
    """Encode `image` in canonical form: newline after each header field
    group and, for ASCII variants, one image row per line."""
    header = f"{image.width} {image.height}\n"
    if isinstance(image, BinaryImage):
        if ascii:
            body = "".join(" ".join(map(str, row)) + "\n" for row in image.bits.tolist())
            return ("P1\n" + header + body).encode("ascii")
        return ("P4\n" + header).encode("ascii") + np.packbits(image.bits, axis=1).tobytes()

    header += f"{image.max_value}\n"
    if ascii:
        body = "".join(" ".join(map(str, row)) + "\n" for row in image.pixels.tolist())
        return ("P2\n" + header + body).encode("ascii")
    dtype = ">u2" if image.max_value > 255 else "u1"
    return ("P5\n" + header).encode("ascii") + image.pixels.astype(dtype).tobytes()


def default_threshold(max_value: int) -> int:
    """Midpoint threshold, ceil((max_value + 1) / 2); 128 for 8-bit images."""
    return (max_value + 2) // 2


def binarize(image: RasterImage, threshold: int | None = None) -> BinaryImage:
    """Mark pixels strictly darker than `threshold` as ink."""
    if threshold is None:
        threshold = default_threshold(image.max_value)
    if not 0 <= threshold <= image.max_value + 1:
        raise ValueError(f"threshold must be in [0, {image.max_value + 1}], got {threshold}")
    return BinaryImage((image.pixels < threshold).astype(np.uint8))
