"""Streaming cleaning of manifest-declared sources into JSONL shards."""

from __future__ import annotations

import json
import logging
import os
import re
from collections import deque
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator

from . import __version__
from ._emoji import EMOJI_TABLE_VERSION
from .charset import CHARSET_VERSION, CharsetTable, build_default_charset
from .config import CleanConfig
from .errors import ConfigError, DuplicateSource, InvalidUtf8, SchemaError, UnknownFormat
from .stats import CorpusStats, SourceStats, doc_stats, render_report
from .tokenize import Segmenter, WhitespaceSegmenter
from .transforms import TRANSFORMS, collapse_whitespace

log = logging.getLogger(__name__)

FORMATS = ("plain", "doc-per-block", "jsonl")
DEFAULT_SHARD_SIZE = 64 * 1024 * 1024
SOURCE_NAME_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9._-]*")

# Deletions late in the chain can splice digit groups or letter runs
# together; these transforms are applied once more after the chain.
SETTLE_TRANSFORMS = ("mask_phones", "collapse_elongation")

_BATCH_BYTES = 1 << 20
_BATCH_DOCS = 4096


@dataclass(frozen=True)
class Document:
    id: str
    source: str
    text: str
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise SchemaError("document id must be non-empty")


@dataclass(frozen=True)
class SourceSpec:
    name: str
    paths: tuple[str, ...]
    format: str
    dialect: str = ""
    domain: str = ""


@dataclass(frozen=True)
class SourceManifest:
    sources: tuple[SourceSpec, ...] = ()
    base_dir: str | None = None

    def resolve(self, path: str) -> Path:
        p = Path(path)
        if not p.is_absolute() and self.base_dir is not None:
            p = Path(self.base_dir) / p
        return p


_SOURCE_KEYS = {"name", "path", "paths", "format", "dialect", "domain"}


def _require_str(obj: dict, key: str, where: str, optional: bool = False) -> str:
    if key not in obj:
        if optional:
            return ""
        raise SchemaError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, str):
        raise SchemaError(f"{where}: field {key!r} must be a string")
    return val


def parse_manifest(raw: bytes | str, base_dir: str | os.PathLike | None = None) -> SourceManifest:
    """Validate a manifest document.

    Schema: ``{"sources": [{"name", "path" | "paths", "format", "dialect"?,
    "domain"?}]}`` where ``format`` is one of ``plain``, ``doc-per-block``,
    ``jsonl``. Relative paths resolve against ``base_dir``.
    """
    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError(f"manifest is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or set(data) - {"sources"}:
        raise SchemaError("manifest must be an object with a 'sources' list")
    items = data.get("sources", [])
    if not isinstance(items, list):
        raise SchemaError("'sources' must be a list")
    specs = []
    seen = set()
    for i, item in enumerate(items):
        where = f"sources[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{where}: must be an object")
        extra = set(item) - _SOURCE_KEYS
        if extra:
            raise SchemaError(f"{where}: unknown fields {sorted(extra)}")
        name = _require_str(item, "name", where)
        if not SOURCE_NAME_RE.fullmatch(name):
            raise SchemaError(f"{where}: name {name!r} must match {SOURCE_NAME_RE.pattern}")
        if name in seen:
            raise DuplicateSource(f"duplicate source name {name!r}")
        seen.add(name)
        fmt = _require_str(item, "format", where)
        if fmt not in FORMATS:
            raise UnknownFormat(f"{where}: unknown format {fmt!r}; expected one of {FORMATS}")
        if ("path" in item) == ("paths" in item):
            raise SchemaError(f"{where}: give exactly one of 'path' or 'paths'")
        if "path" in item:
            paths = [_require_str(item, "path", where)]
        else:
            paths = item["paths"]
            if not isinstance(paths, list) or not paths or not all(isinstance(p, str) for p in paths):
                raise SchemaError(f"{where}: 'paths' must be a non-empty list of strings")
        specs.append(
            SourceSpec(
                name,
                tuple(paths),
                fmt,
                _require_str(item, "dialect", where, optional=True),
                _require_str(item, "domain", where, optional=True),
            )
        )
    return SourceManifest(tuple(specs), None if base_dir is None else str(base_dir))


def decode_text(raw: bytes | str) -> str:
    """Strict UTF-8 decoding; also rejects lone surrogates in ``str`` input."""
    try:
        if isinstance(raw, bytes):
            return raw.decode("utf-8")
        raw.encode("utf-8")
        return raw
    except UnicodeError as exc:
        raise InvalidUtf8(str(exc)) from None


def clean_text(text: str, cfg: CleanConfig | None = None, charset: CharsetTable | None = None) -> str:
    cfg = cfg or CleanConfig()
    charset = charset or build_default_charset()
    enabled = cfg.enabled_transforms
    step = 0
    last_run: dict[str, int] = {}
    last_change = -1
    for name in enabled + tuple(n for n in SETTLE_TRANSFORMS if n in enabled):
        # transforms are idempotent: a rerun is a no-op if nothing changed since
        if name in last_run and last_change < last_run[name]:
            continue
        out = TRANSFORMS[name].apply(text, cfg, charset)
        if out is not text and out != text:
            last_change = step
        last_run[name] = step
        text = out
        step += 1
    return collapse_whitespace(text)


def clean_document(doc: Document, cfg: CleanConfig | None = None, charset: CharsetTable | None = None) -> Document:
    return replace(doc, text=clean_text(decode_text(doc.text), cfg, charset))


# ---- readers --------------------------------------------------------------

RawDoc = tuple[str, "bytes | str", dict]


def _read_plain(path: Path, fi: int) -> Iterator[RawDoc]:
    yield f"{fi:05d}", path.read_bytes(), {}


def _read_blocks(path: Path, fi: int) -> Iterator[RawDoc]:
    lines: list[bytes] = []
    di = 0
    with open(path, "rb") as fh:
        for line in fh:
            line = line.rstrip(b"\r\n")
            if line.strip(b" \t\r") == b"":
                if lines:
                    yield f"{fi:05d}-{di:08d}", b"\n".join(lines), {}
                    di += 1
                    lines = []
            else:
                lines.append(line)
    if lines:
        yield f"{fi:05d}-{di:08d}", b"\n".join(lines), {}


def _read_jsonl(path: Path, fi: int, errors: list[str], label: str) -> Iterator[RawDoc]:
    with open(path, "rb") as fh:
        for ln, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict) or not isinstance(obj.get("text"), str):
                    raise ValueError("record needs a string 'text' field")
                meta = obj.get("meta") or {}
                if not isinstance(meta, dict):
                    raise ValueError("'meta' must be an object")
            except ValueError as exc:
                errors.append(f"{label}:{ln}: skipped malformed record ({exc})")
                continue
            doc_id = obj.get("id")
            doc_id = f"{fi:05d}-{ln:08d}" if doc_id in (None, "") else str(doc_id)
            yield doc_id, obj["text"], {str(k): str(v) for k, v in meta.items()}


def iter_raw_documents(spec: SourceSpec, manifest: SourceManifest, errors: list[str]) -> Iterator[RawDoc]:
    for fi, p in enumerate(spec.paths):
        path = manifest.resolve(p)
        if spec.format == "plain":
            yield from _read_plain(path, fi)
        elif spec.format == "doc-per-block":
            yield from _read_blocks(path, fi)
        else:
            yield from _read_jsonl(path, fi, errors, f"{spec.name}: {p}")


def iter_documents(spec: SourceSpec, manifest: SourceManifest) -> Iterator[Document]:
    """Decoded documents of one source; undecodable ones raise InvalidUtf8."""
    errors: list[str] = []
    for doc_id, raw, meta in iter_raw_documents(spec, manifest, errors):
        yield Document(doc_id, spec.name, decode_text(raw), meta)


# ---- batch processing -----------------------------------------------------

_CTX: dict[str, Any] = {}


def _init_worker(cfg: CleanConfig, charset: CharsetTable, segmenter: Segmenter) -> None:
    _CTX.update(cfg=cfg, charset=charset, segmenter=segmenter)


def _process_batch(spec: SourceSpec, batch: list[RawDoc]) -> tuple[list[bytes], SourceStats, list[str]]:
    cfg, charset, segmenter = _CTX["cfg"], _CTX["charset"], _CTX["segmenter"]
    lines: list[bytes] = []
    st = SourceStats()
    invalid: list[str] = []
    for doc_id, raw, meta in batch:
        try:
            text = decode_text(raw)
        except InvalidUtf8:
            invalid.append(doc_id)
            st.add_dropped(len(raw) if isinstance(raw, bytes) else 0)
            continue
        raw_len = len(raw) if isinstance(raw, bytes) else len(text.encode("utf-8"))
        cleaned = clean_text(text, cfg, charset)
        if not cleaned:
            st.add_dropped(raw_len)
            continue
        st.add_doc(doc_stats(cleaned, segmenter, bytes_raw=raw_len))
        record = {
            "id": doc_id,
            "source": spec.name,
            "text": cleaned,
            "dialect": meta.get("dialect", spec.dialect),
            "domain": meta.get("domain", spec.domain),
        }
        lines.append((json.dumps(record, ensure_ascii=False) + "\n").encode("utf-8"))
    return lines, st, invalid


def _batches(docs: Iterable[RawDoc]) -> Iterator[list[RawDoc]]:
    batch: list[RawDoc] = []
    size = 0
    for d in docs:
        batch.append(d)
        size += len(d[1])
        if size >= _BATCH_BYTES or len(batch) >= _BATCH_DOCS:
            yield batch
            batch, size = [], 0
    if batch:
        yield batch


def _ordered_map(fn: Callable, items: Iterable, executor: Executor | None, window: int) -> Iterator:
    """Like ``map`` but with a bounded number of in-flight tasks."""
    if executor is None:
        for item in items:
            yield fn(*item)
        return
    pending: deque = deque()
    for item in items:
        pending.append(executor.submit(fn, *item))
        if len(pending) >= window:
            yield pending.popleft().result()
    while pending:
        yield pending.popleft().result()


class ShardWriter:
    """Writes ``<source>-NNNNN.jsonl`` files, rolling over at ``shard_size`` bytes."""

    def __init__(self, out_dir: Path, source: str, shard_size: int):
        self.out_dir = out_dir
        self.source = source
        self.shard_size = shard_size
        self.paths: list[Path] = []
        self._fh = None
        self._size = 0

    def write(self, line: bytes) -> None:
        if self._fh is None:
            path = self.out_dir / f"{self.source}-{len(self.paths):05d}.jsonl"
            self.paths.append(path)
            self._fh = open(path, "wb")
            self._size = 0
        self._fh.write(line)
        self._size += len(line)
        if self._size >= self.shard_size:
            self.close()

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def _clear_old_shards(out_dir: Path, source: str) -> None:
    pattern = re.compile(re.escape(source) + r"-\d{5}\.jsonl")
    for p in out_dir.iterdir():
        if pattern.fullmatch(p.name):
            p.unlink()


def _check_paths(spec: SourceSpec, manifest: SourceManifest) -> str | None:
    for p in spec.paths:
        path = manifest.resolve(p)
        if not path.is_file() or not os.access(path, os.R_OK):
            return f"{spec.name}: unreadable path {p}"
    return None


def run_pipeline(
    manifest: SourceManifest,
    cfg: CleanConfig | None,
    out_dir: str | os.PathLike,
    shard_size: int = DEFAULT_SHARD_SIZE,
    workers: int = 1,
    charset: CharsetTable | None = None,
    segmenter: Segmenter | None = None,
) -> CorpusStats:
    """Clean every source into shards under ``out_dir`` and write the run report.

    Output bytes depend only on the manifest, inputs, config, charset and
    shard size; the worker count changes speed only. Sources with an
    unreadable path are skipped and listed in ``CorpusStats.errors``.
    """
    cfg = cfg or CleanConfig()
    charset = charset or build_default_charset()
    segmenter = segmenter or WhitespaceSegmenter(cfg.mask.tags, cfg.kept_punctuation)
    if shard_size <= 0:
        raise ConfigError("shard_size must be positive")
    if workers < 1:
        raise ConfigError("workers must be >= 1")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    stats = CorpusStats()
    errors: list[str] = []
    source_reports = []
    executor = None
    if workers > 1:
        executor = ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(cfg, charset, segmenter))
    else:
        _init_worker(cfg, charset, segmenter)
    try:
        for spec in manifest.sources:
            problem = _check_paths(spec, manifest)
            if problem:
                log.warning("skipping source: %s", problem)
                errors.append(problem)
                continue
            _clear_old_shards(out, spec.name)
            writer = ShardWriter(out, spec.name, shard_size)
            st = stats.source(spec.name)
            read_errors: list[str] = []
            try:
                docs = iter_raw_documents(spec, manifest, read_errors)
                tasks = ((spec, b) for b in _batches(docs))
                for lines, part, invalid in _ordered_map(_process_batch, tasks, executor, 2 * workers):
                    for line in lines:
                        writer.write(line)
                    st.update(part)
                    read_errors.extend(f"{spec.name}: document {i} is not valid UTF-8" for i in invalid)
            except OSError as exc:
                read_errors.append(f"{spec.name}: read failed: {exc}")
            finally:
                writer.close()
            for e in read_errors:
                log.warning("%s", e)
            errors.extend(read_errors)
            source_reports.append((spec, [p.name for p in writer.paths]))
    finally:
        if executor is not None:
            executor.shutdown()
    stats.errors = tuple(errors)
    write_run_report(out, stats, cfg, shard_size, source_reports)
    return stats


def write_run_report(out: Path, stats: CorpusStats, cfg: CleanConfig, shard_size: int, source_reports) -> None:
    def counts(st: SourceStats) -> dict:
        return {
            "documents": st.documents,
            "written": st.written,
            "dropped": st.dropped,
            "tokens": st.tokens,
            "terms": st.terms,
            "bytes_raw": st.bytes_raw,
            "bytes_clean": st.bytes_clean,
        }

    total = stats.totals()
    report = {
        "tool": "arcorpus",
        "version": __version__,
        "charset_version": CHARSET_VERSION,
        "emoji_table": EMOJI_TABLE_VERSION,
        "config": cfg.to_dict(),
        "settle_transforms": [n for n in SETTLE_TRANSFORMS if n in cfg.enabled_transforms],
        "shard_size": shard_size,
        "sources": [
            {
                "name": spec.name,
                "format": spec.format,
                "dialect": spec.dialect,
                "domain": spec.domain,
                **counts(stats.sources[spec.name]),
                "shards": shards,
            }
            for spec, shards in source_reports
        ],
        "total": {**counts(total), "terms_union": None if total.term_set is None else len(total.term_set)},
        "errors": list(stats.errors),
    }
    (out / "run.json").write_bytes((json.dumps(report, ensure_ascii=False, indent=2) + "\n").encode("utf-8"))
    (out / "report.tsv").write_bytes(render_report(stats, "tsv"))
    (out / "report.md").write_bytes(render_report(stats, "markdown"))
