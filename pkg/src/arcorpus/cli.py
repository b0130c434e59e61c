"""Command-line entry point.

Exit codes: 0 success, 1 validation failure, 2 usage or configuration
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import shlex
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterator, Sequence

from . import __version__
from .charset import CHARSET_VERSION, CharClass, CharsetTable, build_default_charset, classify_text, load_charset
from .config import CleanConfig
from .errors import ArcorpusError, ConfigError, InvalidUtf8, SchemaError
from .masking import load_patterns
from .pipeline import DEFAULT_SHARD_SIZE, parse_manifest, run_pipeline
from .stats import CorpusStats, doc_stats, render_report
from .tokenize import BpeVocab, CommandSegmenter, WhitespaceSegmenter, bpe_decode, bpe_encode, bpe_train

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
MAX_REPORTED = 100

log = logging.getLogger("arcorpus")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _non_negative_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="arcorpus", description="Arabic corpus cleaning, BPE and statistics toolkit.")
    p.add_argument(
        "--version",
        action="version",
        version=f"arcorpus {__version__} (charset table v{CHARSET_VERSION}, {len(build_default_charset())} graphemes)",
    )
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("clean", help="clean manifest sources into JSONL shards")
    c.add_argument("--manifest", required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--config")
    c.add_argument("--shard-size", type=_positive_int, default=DEFAULT_SHARD_SIZE)
    c.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
    c.add_argument("--charset", help="override table: grapheme TAB arpabet TAB class")
    c.add_argument("--patterns", help="override masks: name TAB pattern")
    c.add_argument("--segmenter-cmd", help="external segmenter command (stdin text, stdout segments)")

    s = sub.add_parser("stats", help="statistics report for cleaned shards")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--out")

    t = sub.add_parser("bpe-train", help="learn BPE merges from cleaned text")
    t.add_argument("--in", dest="inp", required=True)
    t.add_argument("--merges", type=_non_negative_int, required=True)
    t.add_argument("--out", required=True)
    t.add_argument("--unit", choices=("bytes", "scalar"), default="bytes")
    t.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)

    for name, helptext in (("encode", "text lines to id lines"), ("decode", "id lines to text lines")):
        e = sub.add_parser(name, help=helptext)
        e.add_argument("--vocab", required=True)
        e.add_argument("--in", dest="inp", required=True)
        e.add_argument("--out", required=True)

    v = sub.add_parser("validate-charset", help="report scalars outside the allowed character set")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--config")
    v.add_argument("--charset")
    return p


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    return build_parser().parse_args(list(argv))


def _load_config(path: str | None, patterns: str | None = None) -> CleanConfig:
    cfg = CleanConfig() if path is None else CleanConfig.from_json(Path(path).read_bytes())
    if patterns:
        from dataclasses import replace

        cfg = replace(cfg, mask=replace(cfg.mask, **load_patterns(patterns)))
    return cfg


def _input_files(inp: str, suffixes: tuple[str, ...] = (".jsonl", ".txt")) -> list[Path]:
    p = Path(inp)
    if p.is_dir():
        return sorted(f for f in p.iterdir() if f.is_file() and f.suffix in suffixes)
    if not p.is_file():
        raise FileNotFoundError(inp)
    return [p]


def _iter_texts(path: Path) -> Iterator[str]:
    """Document texts of a shard (``.jsonl``) or lines of a text file."""
    with open(path, "rb") as fh:
        for ln, raw in enumerate(fh, 1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise InvalidUtf8(f"{path}:{ln}: {exc}") from None
            if path.suffix == ".jsonl":
                if line.strip():
                    yield json.loads(line)["text"]
            else:
                yield line.rstrip("\n")


def cmd_clean(args) -> int:
    cfg = _load_config(args.config, args.patterns)
    charset = load_charset(args.charset) if args.charset else build_default_charset()
    manifest_path = Path(args.manifest)
    manifest = parse_manifest(manifest_path.read_bytes(), base_dir=manifest_path.parent)
    segmenter = CommandSegmenter(tuple(shlex.split(args.segmenter_cmd))) if args.segmenter_cmd else None
    stats = run_pipeline(manifest, cfg, args.out, args.shard_size, args.workers, charset, segmenter)
    sys.stdout.write(render_report(stats, "tsv").decode("utf-8"))
    for e in stats.errors:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_IO if stats.errors else EXIT_OK


def cmd_stats(args) -> int:
    stats = CorpusStats()
    segmenter = WhitespaceSegmenter()
    for path in _input_files(args.inp, (".jsonl",)):
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                st = stats.source(rec.get("source", path.stem))
                st.bytes_raw = None
                st.dropped = None
                st.add_doc(doc_stats(rec["text"], segmenter))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.tsv").write_bytes(render_report(stats, "tsv"))
        (out / "report.md").write_bytes(render_report(stats, "markdown"))
    sys.stdout.write(render_report(stats, "tsv").decode("utf-8"))
    return EXIT_OK


def _count_file(path: Path) -> Counter:
    seg = WhitespaceSegmenter()
    counts: Counter = Counter()
    for text in _iter_texts(path):
        counts.update(seg(text))
    return counts


def cmd_bpe_train(args) -> int:
    files = _input_files(args.inp)
    counts: Counter = Counter()
    if args.workers > 1 and len(files) > 1:
        with ProcessPoolExecutor(min(args.workers, len(files))) as ex:
            for c in ex.map(_count_file, files):
                counts.update(c)
    else:
        for f in files:
            counts.update(_count_file(f))
    vocab = bpe_train(counts, args.merges, unit=args.unit)
    vocab.save(args.out)
    print(f"learned {len(vocab.merges)} merges, vocabulary size {len(vocab)}")
    return EXIT_OK


def cmd_encode(args) -> int:
    vocab = BpeVocab.load(args.vocab)
    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        for text in _iter_texts(Path(args.inp)):
            out.write(" ".join(map(str, bpe_encode(text, vocab))) + "\n")
    return EXIT_OK


def cmd_decode(args) -> int:
    vocab = BpeVocab.load(args.vocab)
    with open(args.inp, encoding="utf-8") as fh, open(args.out, "w", encoding="utf-8", newline="\n") as out:
        for ln, line in enumerate(fh, 1):
            try:
                ids = [int(x) for x in line.split()]
            except ValueError:
                raise SchemaError(f"{args.inp}:{ln}: ids must be integers") from None
            out.write(bpe_decode(ids, vocab) + "\n")
    return EXIT_OK


def validate_texts(
    texts: Iterator[tuple[str, str]], cfg: CleanConfig, charset: CharsetTable
) -> tuple[int, list[str]]:
    """Count noisy scalars in ``(location, text)`` pairs; return the count and
    the first ``MAX_REPORTED`` positions."""
    count = 0
    positions: list[str] = []
    for where, text in texts:
        for col, (ch, cls) in enumerate(zip(text, classify_text(text, cfg, charset)), 1):
            if cls is CharClass.NOISY:
                count += 1
                if len(positions) < MAX_REPORTED:
                    positions.append(f"{where}:{col}: U+{ord(ch):04X}")
    return count, positions


def _located_texts(files: list[Path]) -> Iterator[tuple[str, str]]:
    for path in files:
        with open(path, "rb") as fh:
            for ln, raw in enumerate(fh, 1):
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError as exc:
                    raise InvalidUtf8(f"{path}:{ln}: {exc}") from None
                if path.suffix == ".jsonl":
                    if line.strip():
                        yield f"{path}:{ln}", json.loads(line)["text"]
                else:
                    yield f"{path}:{ln}", line.rstrip("\r\n")


def cmd_validate_charset(args) -> int:
    cfg = _load_config(args.config)
    charset = load_charset(args.charset) if args.charset else build_default_charset()
    p = Path(args.inp)
    if not p.exists():
        raise FileNotFoundError(args.inp)
    files = _input_files(args.inp) if p.is_dir() else [p]
    count, positions = validate_texts(_located_texts(files), cfg, charset)
    for pos in positions:
        print(pos)
    print(f"noisy: {count}")
    return EXIT_OK if count == 0 else EXIT_INVALID


COMMANDS = {
    "clean": cmd_clean,
    "stats": cmd_stats,
    "bpe-train": cmd_bpe_train,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "validate-charset": cmd_validate_charset,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        build_parser().print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except InvalidUtf8 as exc:
        print(f"error: invalid UTF-8: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ConfigError, SchemaError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArcorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
