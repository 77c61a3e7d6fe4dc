"""Hebbian knowledge base over bipolar feature vectors.

Training adds the outer product of an input vector and a one-hot target
to the weight matrix, starting from all zeros.  Column ``c`` therefore
ends up as the sum of every input trained with class ``c``, and
classification picks the column with the largest correlation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .glyphs import LETTERS

__all__ = [
    "KnowledgeBase",
    "Classification",
    "DimensionMismatchError",
    "KBFormatError",
    "KBVersionError",
    "KBCorruptError",
    "DEFAULT_MEMBERSHIP",
    "one_hot",
    "new_kb",
    "train_pair",
    "classify",
    "membership",
    "save_kb",
    "load_kb",
]

MAGIC = "HEBCHAR-KB"
VERSION = "v1"
DEFAULT_MEMBERSHIP = 0.5


class DimensionMismatchError(ValueError):
    pass


class KBFormatError(ValueError):
    """A knowledge-base file could not be decoded."""


class KBVersionError(KBFormatError):
    pass


class KBCorruptError(KBFormatError):
    pass


def _check_labels(labels):
    labels = tuple(labels)
    if not labels:
        raise ValueError("label table must not be empty")
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be unique")
    for label in labels:
        if not label or any(ch.isspace() for ch in label):
            raise ValueError(f"label {label!r} must be non-empty and contain no whitespace")
    return labels


@dataclass(eq=False)
class KnowledgeBase:
    dim: int
    labels: tuple[str, ...] = LETTERS
    weights: np.ndarray = field(default=None, repr=False)
    counts: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        self.labels = _check_labels(self.labels)
        n = len(self.labels)
        if self.weights is None:
            self.weights = np.zeros((self.dim, n), dtype=np.int64)
        if self.counts is None:
            self.counts = np.zeros(n, dtype=np.int64)
        self.weights = np.asarray(self.weights, dtype=np.int64)
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if self.weights.shape != (self.dim, n):
            raise ValueError(f"weights must have shape {(self.dim, n)}, got {self.weights.shape}")
        if self.counts.shape != (n,):
            raise ValueError(f"counts must have shape {(n,)}, got {self.counts.shape}")

    @property
    def n_classes(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.labels == other.labels
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.counts, other.counts)
        )


@dataclass(frozen=True, eq=False)
class Classification:
    predicted: str
    index: int
    scores: np.ndarray
    normalized: np.ndarray
    member: bool

    @property
    def score(self) -> float:
        """Normalized score of the predicted class."""
        return float(self.normalized[self.index])


def one_hot(index: int, n_classes: int) -> np.ndarray:
    if not 0 <= index < n_classes:
        raise IndexError(f"class index {index} out of range for {n_classes} classes")
    target = np.zeros(n_classes, dtype=np.int64)
    target[index] = 1
    return target


def new_kb(dim: int, labels=LETTERS) -> KnowledgeBase:
    """Create an untrained knowledge base: zero weights, zero counts."""
    return KnowledgeBase(dim, tuple(labels))


def _as_input(kb, vector):
    x = np.asarray(vector, dtype=np.int64)
    if x.shape != (kb.dim,):
        raise DimensionMismatchError(f"expected a feature vector of length {kb.dim}, got shape {x.shape}")
    return x


def train_pair(kb: KnowledgeBase, vector, target) -> KnowledgeBase:
    """Apply one additive update ``K += outer(input, target)`` in place.

    `target` is a class index, a label, or a one-hot vector.
    """
    x = _as_input(kb, vector)
    if isinstance(target, str):
        target = one_hot(kb.index(target), kb.n_classes)
    elif np.ndim(target) == 0:
        target = one_hot(int(target), kb.n_classes)
    else:
        target = np.asarray(target, dtype=np.int64)
        if target.shape != (kb.n_classes,) or target.sum() != 1 or not np.isin(target, (0, 1)).all():
            raise ValueError("target must be a one-hot vector over the label table")
    kb.weights += np.outer(x, target)
    kb.counts += target
    return kb


def classify(kb: KnowledgeBase, vector, membership_threshold: float = DEFAULT_MEMBERSHIP) -> Classification:
    x = _as_input(kb, vector)
    scores = x @ kb.weights
    normalized = np.zeros(kb.n_classes, dtype=np.float64)
    trained = kb.counts > 0
    normalized[trained] = scores[trained] / (kb.counts[trained] * kb.dim)
    # argmax returns the first maximum, which is the lowest-index tie-break
    best = int(np.argmax(scores))
    return Classification(
        predicted=kb.labels[best],
        index=best,
        scores=scores,
        normalized=normalized,
        member=bool(trained.any() and normalized.max() >= membership_threshold),
    )


def membership(kb: KnowledgeBase, vector, threshold: float = DEFAULT_MEMBERSHIP) -> bool:
    """Does the pattern belong to any stored cluster?"""
    return classify(kb, vector, threshold).member


def save_kb(kb: KnowledgeBase) -> bytes:
    lines = [
        f"{MAGIC} {VERSION}",
        f"dim {kb.dim} classes {kb.n_classes}",
        " ".join(kb.labels),
        " ".join(map(str, kb.counts.tolist())),
    ]
    lines.extend(" ".join(map(str, row)) for row in kb.weights.tolist())
    return ("\n".join(lines) + "\n").encode("utf-8")


def _ints(line, expected, what):
    try:
        values = [int(tok) for tok in line.split()]
    except ValueError:
        raise KBCorruptError(f"non-integer entry in {what}") from None
    if len(values) != expected:
        raise KBCorruptError(f"{what} has {len(values)} entries, expected {expected}")
    return values


def load_kb(data: bytes) -> KnowledgeBase:
    try:
        text = bytes(data).decode("utf-8")
    except UnicodeDecodeError:
        raise KBCorruptError("file is not valid UTF-8") from None
    if not text.endswith("\n"):
        raise KBCorruptError("missing trailing newline")
    lines = text[:-1].split("\n")

    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC:
        raise KBCorruptError(f"missing {MAGIC} header")
    if head[1] != VERSION:
        raise KBVersionError(f"unsupported knowledge-base version {head[1]!r}, expected {VERSION}")
    if len(lines) < 4:
        raise KBCorruptError("truncated header")

    shape = lines[1].split()
    if len(shape) != 4 or shape[0] != "dim" or shape[2] != "classes":
        raise KBCorruptError("malformed dimension line")
    try:
        dim, n = int(shape[1]), int(shape[3])
    except ValueError:
        raise KBCorruptError("malformed dimension line") from None
    if dim < 1 or n < 1:
        raise KBCorruptError("dimensions must be positive")

    labels = lines[2].split()
    if len(labels) != n:
        raise KBCorruptError(f"label line has {len(labels)} entries, expected {n}")
    counts = _ints(lines[3], n, "count line")

    rows = lines[4:]
    entries = sum(len(row.split()) for row in rows)
    if len(rows) != dim or entries != dim * n:
        raise KBCorruptError(f"expected {dim}x{n} = {dim * n} weights, found {entries} in {len(rows)} rows")
    weights = [_ints(row, n, f"weight row {d}") for d, row in enumerate(rows)]
    try:
        return KnowledgeBase(dim, tuple(labels), np.array(weights, dtype=np.int64), np.array(counts, dtype=np.int64))
    except ValueError as exc:
        raise KBCorruptError(str(exc)) from None
