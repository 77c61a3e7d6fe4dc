"""Synthetic datasets, seeded noise and recognition-rate reports.

Randomness comes from the Mersenne Twister MT19937 as exposed by numpy's
legacy ``RandomState``: an integer seed goes through ``init_genrand`` and
uniform draws are ``genrand_res53``.  Both are frozen by numpy, so a seed
reproduces the same reports on any platform.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import asdict, dataclass, field

import numpy as np

from . import glyphs
from .glyphs import LETTERS
from .hebnet import DEFAULT_MEMBERSHIP, KnowledgeBase, classify, new_kb, train_pair
from .preprocess import DEFAULT_COLS, DEFAULT_ROWS, BinaryGrid, encode, to_grid

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ClassResult",
    "RecognitionReport",
    "DatasetManifest",
    "prototype",
    "prototypes",
    "perturb",
    "item_seed",
    "evaluate",
    "train_prototypes",
    "run_experiment",
    "report_csv",
    "report_text",
    "summary_csv",
    "read_manifest",
    "write_manifest",
]

REPORT_TAG = "# hebchar-report v1"
MANIFEST_TAG = "# hebchar-manifest v1"
DEFAULT_FLIP_RATES = (0.0, 0.05, 0.1, 0.2, 0.3)
DEFAULT_TRIALS = 100
DEFAULT_SEED = 42

# Weyl increment for per-item seeds; odd, so item seeds never repeat
_SEED_STRIDE = 0x9E3779B9


class ConfigError(ValueError):
    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


def prototype(label: str) -> BinaryGrid:
    """Built-in 8x6 glyph for one of the 52 letters."""
    if label not in LETTERS:
        raise KeyError(f"no prototype for label {label!r}")
    return BinaryGrid(np.array(glyphs.glyph_rows(label), dtype=np.uint8))


def prototypes(rows: int = DEFAULT_ROWS, cols: int = DEFAULT_COLS) -> dict[str, BinaryGrid]:
    """All 52 prototypes, resampled when a grid other than 8x6 is asked for."""
    out = {}
    for label in LETTERS:
        grid = prototype(label)
        if (rows, cols) != (grid.rows, grid.cols):
            grid = to_grid(grid.to_image(), rows, cols)
        out[label] = grid
    return out


def perturb(grid: BinaryGrid, flip_rate: float, seed: int) -> BinaryGrid:
    """Toggle each cell independently with probability `flip_rate`.

    One uniform draw per cell in row-major order; a cell flips when its
    draw is below `flip_rate`.  The draws depend only on the seed, so the
    cells flipped at a lower rate are a subset of those flipped at a
    higher rate.
    """
    if not 0.0 <= flip_rate <= 1.0:
        raise ValueError(f"flip_rate must be in [0, 1], got {flip_rate}")
    draws = np.random.RandomState(seed % 2**32).random_sample(grid.cells.shape)
    return BinaryGrid(grid.cells ^ (draws < flip_rate))


def item_seed(seed: int, n: int) -> int:
    """Seed of the n-th generated test item of an experiment."""
    return (seed + n * _SEED_STRIDE) % 2**32


@dataclass(frozen=True)
class ClassResult:
    label: str
    tested: int
    correct: int
    members: int
    false_matches: tuple[str, ...]

    @property
    def rate(self) -> float:
        return 100.0 * self.correct / self.tested if self.tested else 0.0


@dataclass(frozen=True)
class RecognitionReport:
    rows: tuple[ClassResult, ...]
    seed: int | None = None
    flip_rate: float | None = None
    config: dict = field(default_factory=dict)

    @property
    def tested(self) -> int:
        return sum(r.tested for r in self.rows)

    @property
    def correct(self) -> int:
        return sum(r.correct for r in self.rows)

    @property
    def overall_rate(self) -> float:
        return 100.0 * self.correct / self.tested if self.tested else 0.0

    def row(self, label: str) -> ClassResult:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)


def evaluate(
    kb: KnowledgeBase,
    tests,
    threshold: float = DEFAULT_MEMBERSHIP,
    *,
    seed: int | None = None,
    flip_rate: float | None = None,
    config: dict | None = None,
) -> RecognitionReport:
    """Classify every ``(vector, true_label)`` pair and tally per class.

    Rows appear in label-table order and only for classes that were tested.
    """
    n = kb.n_classes
    tested = np.zeros(n, dtype=np.int64)
    correct = np.zeros(n, dtype=np.int64)
    members = np.zeros(n, dtype=np.int64)
    confused = [set() for _ in range(n)]
    for vector, label in tests:
        truth = kb.index(label)
        result = classify(kb, vector, threshold)
        tested[truth] += 1
        members[truth] += result.member
        if result.index == truth:
            correct[truth] += 1
        else:
            confused[truth].add(result.index)
    rows = tuple(
        ClassResult(
            label=kb.labels[c],
            tested=int(tested[c]),
            correct=int(correct[c]),
            members=int(members[c]),
            false_matches=tuple(kb.labels[i] for i in sorted(confused[c])),
        )
        for c in range(n)
        if tested[c]
    )
    return RecognitionReport(rows, seed=seed, flip_rate=flip_rate, config=dict(config or {}))


@dataclass
class ExperimentConfig:
    rows: int = DEFAULT_ROWS
    cols: int = DEFAULT_COLS
    # only echoed: prototype grids never pass through binarization
    threshold: int = 128
    membership: float = DEFAULT_MEMBERSHIP
    flip_rates: tuple[float, ...] = DEFAULT_FLIP_RATES
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    out: str | None = None

    def __post_init__(self):
        self.flip_rates = tuple(self.flip_rates)
        self.validate()

    def validate(self):
        if self.rows < 1:
            raise ConfigError("rows", f"must be >= 1, got {self.rows}")
        if self.cols < 1:
            raise ConfigError("cols", f"must be >= 1, got {self.cols}")
        if not 0 <= self.threshold <= 65536:
            raise ConfigError("threshold", f"must be in [0, 65536], got {self.threshold}")
        if not -1.0 <= self.membership <= 1.0:
            raise ConfigError("membership", f"must be in [-1, 1], got {self.membership}")
        if not self.flip_rates:
            raise ConfigError("flip_rates", "at least one rate is required")
        for rate in self.flip_rates:
            if not 0.0 <= rate <= 1.0:
                raise ConfigError("flip_rate", f"must be in [0, 1], got {rate}")
        if self.trials < 1:
            raise ConfigError("trials", f"must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ConfigError("seed", f"must be >= 0, got {self.seed}")

    def echo(self) -> dict:
        """Settings that determine a report, in a fixed order."""
        d = asdict(self)
        d.pop("out")
        d.pop("flip_rates")
        return d


def train_prototypes(rows: int = DEFAULT_ROWS, cols: int = DEFAULT_COLS) -> KnowledgeBase:
    """Fresh knowledge base trained once on each of the 52 prototypes."""
    kb = new_kb(rows * cols, LETTERS)
    for label, grid in prototypes(rows, cols).items():
        train_pair(kb, encode(grid), label)
    return kb


def run_experiment(config: ExperimentConfig, kb: KnowledgeBase | None = None) -> list[RecognitionReport]:
    """Evaluate noisy copies of the prototypes, one report per flip rate.

    Without `kb` a fresh one is trained on the prototypes.  Test item ``n``
    (class-major, then trial) is perturbed with ``item_seed(seed, n)`` at
    every flip rate, so the sweep compares the same noise draws.
    """
    config.validate()
    dim = config.rows * config.cols
    if kb is None:
        kb = train_prototypes(config.rows, config.cols)
    elif kb.dim != dim:
        raise ConfigError("rows", f"grid {config.rows}x{config.cols} does not match knowledge base dim {kb.dim}")
    protos = prototypes(config.rows, config.cols)
    reports = []
    for rate in config.flip_rates:
        tests = []
        for c, label in enumerate(LETTERS):
            for t in range(config.trials):
                noisy = perturb(protos[label], rate, item_seed(config.seed, c * config.trials + t))
                tests.append((encode(noisy), label))
        reports.append(
            evaluate(kb, tests, config.membership, seed=config.seed, flip_rate=rate, config=config.echo())
        )
    return reports


def _header(report):
    parts = []
    if report.flip_rate is not None:
        parts.append(f"flip_rate={report.flip_rate:g}")
    if report.seed is not None and "seed" not in report.config:
        parts.append(f"seed={report.seed}")
    parts.extend(f"{k}={v}" for k, v in report.config.items())
    return " ".join([REPORT_TAG, *parts])


def report_csv(report: RecognitionReport) -> str:
    buf = io.StringIO()
    buf.write(_header(report) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "tested", "correct", "rate_percent", "false_matches"])
    for r in report.rows:
        writer.writerow([r.label, r.tested, r.correct, f"{r.rate:.2f}", ";".join(r.false_matches)])
    return buf.getvalue()


def report_text(report: RecognitionReport) -> str:
    lines = [_header(report), f"{'Character':<10} {'Recognition Rate (%)':>20}  {'Member':>6}  False Matching"]
    for r in report.rows:
        lines.append(f"{r.label:<10} {r.rate:>19.2f}%  {r.members:>6}  {', '.join(r.false_matches)}")
    lines.append(f"{'Overall':<10} {report.overall_rate:>19.2f}%  ({report.correct}/{report.tested})")
    return "\n".join(lines) + "\n"


def summary_csv(reports) -> str:
    buf = io.StringIO()
    buf.write(REPORT_TAG + " summary\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["flip_rate", "tested", "correct", "overall_percent"])
    for rep in reports:
        writer.writerow([f"{rep.flip_rate:g}", rep.tested, rep.correct, f"{rep.overall_rate:.2f}"])
    return buf.getvalue()


@dataclass
class DatasetManifest:
    entries: list[tuple[str, str]]
    config: dict = field(default_factory=dict)

    def validate(self, labels=LETTERS):
        seen = set()
        for path, label in self.entries:
            if label not in labels:
                raise ValueError(f"unknown label {label!r} for {path}")
            if path in seen:
                raise ValueError(f"duplicate path {path}")
            seen.add(path)


def write_manifest(manifest: DatasetManifest) -> str:
    echo = " ".join(f"{k}={v}" for k, v in manifest.config.items())
    buf = io.StringIO()
    buf.write(f"{MANIFEST_TAG} {echo}".rstrip() + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["path", "label"])
    writer.writerows(manifest.entries)
    return buf.getvalue()


def read_manifest(path) -> DatasetManifest:
    """Load a manifest; relative image paths resolve against its directory."""
    base = os.path.dirname(os.fspath(path))
    with open(path, encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    config = {}
    if lines and lines[0].startswith("#"):
        tag = lines.pop(0)
        if not tag.startswith(MANIFEST_TAG):
            raise ValueError(f"unsupported manifest header {tag!r}")
        for item in tag[len(MANIFEST_TAG) :].split():
            key, _, value = item.partition("=")
            config[key] = value
    rows = list(csv.reader(lines))
    if not rows or [h.strip() for h in rows[0]] != ["path", "label"]:
        raise ValueError("manifest must start with a 'path,label' header")
    entries = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ValueError(f"manifest line {lineno}: expected 'path,label'")
        entries.append((os.path.join(base, row[0].strip()), row[1].strip()))
    manifest = DatasetManifest(entries, config)
    manifest.validate()
    return manifest
