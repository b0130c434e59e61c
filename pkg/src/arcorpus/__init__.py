"""Streaming Arabic corpus construction: cleaning, tokenization and statistics."""

__version__ = "0.1.0"

from .charset import CharClass, CharsetTable, arpabet_of, build_default_charset, classify  # noqa: E402
from .config import CleanConfig  # noqa: E402
from .masking import MaskPolicy  # noqa: E402
from .pipeline import Document, clean_document, clean_text, parse_manifest, run_pipeline  # noqa: E402
from .stats import CorpusStats, SourceStats, doc_stats, merge, render_report  # noqa: E402
from .tokenize import BpeVocab, bpe_decode, bpe_encode, bpe_train, segment_whitespace  # noqa: E402

__all__ = [
    "BpeVocab",
    "CharClass",
    "CharsetTable",
    "CleanConfig",
    "CorpusStats",
    "Document",
    "MaskPolicy",
    "SourceStats",
    "arpabet_of",
    "bpe_decode",
    "bpe_encode",
    "bpe_train",
    "build_default_charset",
    "classify",
    "clean_document",
    "clean_text",
    "doc_stats",
    "merge",
    "parse_manifest",
    "render_report",
    "run_pipeline",
    "segment_whitespace",
]
