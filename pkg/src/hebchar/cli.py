"""Command-line interface: ``hebchar gen|train|classify|experiment``.

Exit status: 0 success, 1 usage error, 2 I/O error, 3 data or format error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .glyphs import LETTERS
from .harness import (
    DEFAULT_FLIP_RATES,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    ConfigError,
    DatasetManifest,
    ExperimentConfig,
    prototypes,
    read_manifest,
    report_csv,
    report_text,
    run_experiment,
    summary_csv,
    write_manifest,
)
from .hebnet import DEFAULT_MEMBERSHIP, KBFormatError, classify, load_kb, new_kb, save_kb, train_pair
from .pnm_io import PNMError, read_pnm, write_pnm
from .preprocess import DEFAULT_COLS, DEFAULT_ROWS, BlankImageError, PreprocessConfig, pipeline

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3

DEFAULT_OUT = "reports"


class CLIError(Exception):
    def __init__(self, message, status):
        super().__init__(message)
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def glyph_filename(label: str) -> str:
    # upper and lower case must not collide on case-insensitive filesystems
    return f"{label}.pbm" if label.isupper() else f"lower_{label}.pbm"


def _read_bytes(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror or exc}", EXIT_IO) from None


def _features(path, config):
    try:
        return pipeline(read_pnm(path), config)
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror or exc}", EXIT_IO) from None
    except BlankImageError:
        raise CLIError(f"{path}: blank image, no foreground pixels", EXIT_DATA) from None
    except (PNMError, ValueError) as exc:
        raise CLIError(f"{path}: {exc}", EXIT_DATA) from None


def _write(path, data):
    try:
        with open(path, "wb") as fh:
            fh.write(data if isinstance(data, bytes) else data.encode("utf-8"))
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror or exc}", EXIT_IO) from None


def _preprocess_config(args):
    try:
        return PreprocessConfig(args.rows, args.cols, args.threshold)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None


def cmd_gen(args):
    out = args.out_dir
    try:
        os.makedirs(out, exist_ok=True)
    except OSError as exc:
        raise CLIError(f"{out}: {exc.strerror or exc}", EXIT_IO) from None
    entries = []
    for label, grid in prototypes().items():
        name = glyph_filename(label)
        _write(os.path.join(out, name), write_pnm(grid.to_image(), ascii=True))
        entries.append((name, label))
    manifest = DatasetManifest(entries, {"rows": DEFAULT_ROWS, "cols": DEFAULT_COLS})
    _write(os.path.join(out, "manifest.csv"), write_manifest(manifest))
    print(f"wrote {len(entries)} glyphs and manifest.csv to {out}")
    return EXIT_OK


def cmd_train(args):
    config = _preprocess_config(args)
    try:
        manifest = read_manifest(args.manifest)
    except OSError as exc:
        raise CLIError(f"{args.manifest}: {exc.strerror or exc}", EXIT_IO) from None
    except ValueError as exc:
        raise CLIError(f"{args.manifest}: {exc}", EXIT_DATA) from None
    if not manifest.entries:
        raise CLIError(f"{args.manifest}: no training data", EXIT_DATA)

    kb = new_kb(config.dim, LETTERS)
    for path, label in manifest.entries:
        train_pair(kb, _features(path, config), label)
    _write(args.out, save_kb(kb))
    for label, count in zip(kb.labels, kb.counts.tolist()):
        print(f"{label} {count}")
    print(f"trained {int(kb.counts.sum())} patterns into {args.out}")
    return EXIT_OK


def _load_kb(path):
    try:
        return load_kb(_read_bytes(path))
    except KBFormatError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_DATA) from None


def cmd_classify(args):
    config = _preprocess_config(args)
    kb = _load_kb(args.kb)
    if kb.dim != config.dim:
        raise CLIError(
            f"{args.kb}: knowledge base has dim {kb.dim}, grid {config.rows}x{config.cols} gives {config.dim}",
            EXIT_DATA,
        )
    result = classify(kb, _features(args.image, config), args.membership)
    print(f"predicted: {result.predicted}")
    print(f"score: {result.score:.4f}")
    print(f"member: {str(result.member).lower()}")
    return EXIT_OK


_CONFIG_KEYS = {
    "rows": int,
    "cols": int,
    "threshold": int,
    "membership": float,
    "flip_rates": lambda s: tuple(float(x) for x in s.split(",") if x.strip()),
    "trials": int,
    "seed": int,
    "out": str,
    "kb": str,
}


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    text = _read_bytes(path).decode("utf-8", errors="replace")
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if key == "flip_rate":
            key = "flip_rates"
        if not sep or key not in _CONFIG_KEYS:
            raise CLIError(f"{path}:{lineno}: unknown setting {key!r}", EXIT_USAGE)
        try:
            values[key] = _CONFIG_KEYS[key](value.strip())
        except ValueError:
            raise CLIError(f"{path}:{lineno}: invalid value for {key}: {value.strip()!r}", EXIT_USAGE) from None
    return values


def cmd_experiment(args):
    settings = read_config(args.config) if args.config else {}
    for key in ("rows", "cols", "threshold", "membership", "flip_rates", "trials", "seed", "out", "kb"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    kb_path = settings.pop("kb", None)
    settings.setdefault("out", DEFAULT_OUT)
    try:
        config = ExperimentConfig(**settings)
    except ConfigError as exc:
        raise CLIError(f"invalid config: {exc}", EXIT_USAGE) from None
    kb = _load_kb(kb_path) if kb_path else None
    try:
        reports = run_experiment(config, kb)
    except ConfigError as exc:
        raise CLIError(f"invalid config: {exc}", EXIT_USAGE) from None

    try:
        os.makedirs(config.out, exist_ok=True)
    except OSError as exc:
        raise CLIError(f"{config.out}: {exc.strerror or exc}", EXIT_IO) from None
    text = "\n".join(report_text(r) for r in reports)
    _write(os.path.join(config.out, "report.txt"), text)
    for rep in reports:
        _write(os.path.join(config.out, f"report_{rep.flip_rate:g}.csv"), report_csv(rep))
    _write(os.path.join(config.out, "summary.csv"), summary_csv(reports))
    for rep in reports:
        print(f"flip_rate {rep.flip_rate:g}: {rep.overall_rate:.2f}% ({rep.correct}/{rep.tested})")
    print(f"reports written to {config.out}")
    return EXIT_OK


def _flip_rates(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _grid_flags(p):
    p.add_argument("--rows", type=int, default=DEFAULT_ROWS, help="feature grid rows")
    p.add_argument("--cols", type=int, default=DEFAULT_COLS, help="feature grid columns")
    p.add_argument(
        "--threshold", type=int, default=None,
        help="binarization threshold for grayscale input (pixel < threshold is ink); "
        "default is the intensity midpoint, 128 for 8-bit",
    )


def build_parser():
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="hebchar", description="Hebbian handwritten-letter recognizer", formatter_class=fmt)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write the 52 prototype glyphs and a manifest", formatter_class=fmt)
    p.add_argument("out_dir", help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("train", help="train a knowledge base from a manifest", formatter_class=fmt)
    p.add_argument("manifest", help="CSV manifest with path,label rows")
    p.add_argument("--out", default="kb.txt", help="knowledge base output file")
    _grid_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="classify one image", formatter_class=fmt)
    p.add_argument("kb", help="knowledge base file")
    p.add_argument("image", help="PBM/PGM image")
    p.add_argument("--membership", type=float, default=DEFAULT_MEMBERSHIP, help="membership threshold")
    _grid_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser(
        "experiment", help="run a noise sweep over the prototypes", formatter_class=fmt,
        description="Flags override values from --config.  Defaults: rows=%d cols=%d threshold=128 "
        "membership=%g seed=%d trials=%d flip-rates=%s out=%s"
        % (DEFAULT_ROWS, DEFAULT_COLS, DEFAULT_MEMBERSHIP, DEFAULT_SEED, DEFAULT_TRIALS,
           ",".join(f"{r:g}" for r in DEFAULT_FLIP_RATES), DEFAULT_OUT),
    )
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--rows", type=int, help="feature grid rows")
    p.add_argument("--cols", type=int, help="feature grid columns")
    p.add_argument("--threshold", type=int, help="binarization threshold echoed into reports")
    p.add_argument("--membership", type=float, help="membership threshold")
    p.add_argument("--seed", type=int, help="random seed")
    p.add_argument("--flip-rates", dest="flip_rates", type=_flip_rates, help="comma-separated flip rates")
    p.add_argument("--trials", type=int, help="noisy test patterns per class and rate")
    p.add_argument("--out", help="report directory")
    p.add_argument("--kb", help="use this trained knowledge base instead of training on the prototypes")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"hebchar: error: {exc}", file=sys.stderr)
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
