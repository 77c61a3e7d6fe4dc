"""Offline handwritten-letter recognition with a Hebbian knowledge base."""

__version__ = "0.1.0"

from .hebnet import KnowledgeBase, classify, load_kb, membership, new_kb, save_kb, train_pair
from .pnm_io import BinaryImage, RasterImage, binarize, parse_pnm, write_pnm
from .preprocess import BinaryGrid, PreprocessConfig, crop, decode, encode, pipeline, to_grid

__all__ = [
    "BinaryGrid",
    "BinaryImage",
    "KnowledgeBase",
    "PreprocessConfig",
    "RasterImage",
    "binarize",
    "classify",
    "crop",
    "decode",
    "encode",
    "load_kb",
    "membership",
    "new_kb",
    "parse_pnm",
    "pipeline",
    "save_kb",
    "to_grid",
    "train_pair",
    "write_pnm",
]
