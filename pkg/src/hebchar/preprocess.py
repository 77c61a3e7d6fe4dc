"""Cropping, grid extraction and bipolar encoding of character patterns."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pnm_io import BinaryImage, RasterImage, binarize

__all__ = [
    "BlankImageError",
    "BinaryGrid",
    "PreprocessConfig",
    "crop",
    "to_grid",
    "encode",
    "decode",
    "pipeline",
]

DEFAULT_ROWS = 8
DEFAULT_COLS = 6


class BlankImageError(ValueError):
    """The image has no ink at all."""


@dataclass(frozen=True, eq=False)
class BinaryGrid:
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells)
        if cells.ndim != 2 or cells.shape[0] < 1 or cells.shape[1] < 1:
            raise ValueError(f"grid must be a non-empty 2-D array, got shape {cells.shape}")
        if not np.isin(cells, (0, 1)).all():
            raise ValueError("grid cells must be 0 or 1")
        cells = cells.astype(np.uint8)
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    def to_image(self) -> BinaryImage:
        return BinaryImage(self.cells)

    def __eq__(self, other):
        if not isinstance(other, BinaryGrid):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __str__(self):
        return "\n".join(" ".join(map(str, row)) for row in self.cells.tolist())

    def __repr__(self):
        return f"BinaryGrid({self.rows}x{self.cols})"


@dataclass(frozen=True)
class PreprocessConfig:
    rows: int = DEFAULT_ROWS
    cols: int = DEFAULT_COLS
    # None selects the midpoint of the raster's intensity range
    threshold: int | None = None

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"grid dimensions must be positive, got {self.rows}x{self.cols}")

    @property
    def dim(self) -> int:
        return self.rows * self.cols


def crop(image: BinaryImage) -> BinaryImage:
    """Return the tight bounding box of the inked pixels."""
    bits = image.bits
    rows = np.flatnonzero(bits.any(axis=1))
    if rows.size == 0:
        raise BlankImageError("image contains no foreground pixels")
    cols = np.flatnonzero(bits.any(axis=0))
    return BinaryImage(bits[rows[0] : rows[-1] + 1, cols[0] : cols[-1] + 1])


def _block_edges(size, parts):
    # block k spans [floor(k*size/parts), floor((k+1)*size/parts)), widened to
    # one source line when upscaling leaves it empty
    starts = [k * size // parts for k in range(parts)]
    ends = [max((k + 1) * size // parts, starts[k] + 1) for k in range(parts)]
    return starts, ends


def to_grid(image: BinaryImage, rows: int = DEFAULT_ROWS, cols: int = DEFAULT_COLS) -> BinaryGrid:
    """Downsample onto a rows x cols grid by block majority.

    A cell is set when at least half of its block is ink, so a tie keeps
    the stroke.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be positive, got {rows}x{cols}")
    bits = image.bits
    r0, r1 = _block_edges(image.height, rows)
    c0, c1 = _block_edges(image.width, cols)
    cells = np.zeros((rows, cols), dtype=np.uint8)
    for r in range(rows):
        for c in range(cols):
            block = bits[r0[r] : r1[r], c0[c] : c1[c]]
            cells[r, c] = 2 * int(block.sum()) >= block.size
    return BinaryGrid(cells)


def encode(grid: BinaryGrid) -> np.ndarray:
    """Flatten row-major, mapping ink to +1 and background to -1."""
    return grid.cells.ravel().astype(np.int64) * 2 - 1


def decode(vector, rows: int, cols: int) -> BinaryGrid:
    vector = np.asarray(vector)
    if vector.shape != (rows * cols,):
        raise ValueError(f"expected a vector of length {rows * cols}, got shape {vector.shape}")
    if not np.isin(vector, (-1, 1)).all():
        raise ValueError("feature values must be -1 or +1")
    return BinaryGrid(((vector + 1) // 2).reshape(rows, cols))


def pipeline(image: BinaryImage | RasterImage, config: PreprocessConfig = PreprocessConfig()) -> np.ndarray:
    """Binarize (if needed), crop, grid and encode a character image."""
    if isinstance(image, RasterImage):
        image = binarize(image, config.threshold)
    return encode(to_grid(crop(image), config.rows, config.cols))
