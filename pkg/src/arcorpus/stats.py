"""Per-source corpus statistics and table-shaped reports.

``terms`` is the number of distinct tokens. Live statistics keep the exact
term set so totals can report the true union; statistics reproduced from
published tables carry only a count (``term_set`` is ``None``). Any count
may be ``None`` when a table does not report it; ``None`` is treated as
"unknown" and is absorbed when added to a number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .tokenize import Segmenter, segment_whitespace

COLUMNS = (
    "source",
    "documents",
    "tokens",
    "terms",
    "raw_bytes",
    "clean_bytes",
    "dropped",
    "terms_union",
    "raw_gb",
    "clean_gb",
)


@dataclass(frozen=True)
class DocStats:
    tokens: int
    terms: frozenset[str]
    bytes_raw: int
    bytes_clean: int


def doc_stats(doc, segmenter: Segmenter = segment_whitespace, bytes_raw: int | None = None) -> DocStats:
    """Statistics of one cleaned document. ``doc`` may be a Document or a str."""
    text = doc if isinstance(doc, str) else doc.text
    tokens = segmenter(text)
    clean = len(text.encode("utf-8"))
    return DocStats(len(tokens), frozenset(tokens), clean if bytes_raw is None else bytes_raw, clean)


def _add(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return a + b


@dataclass
class SourceStats:
    documents: int | None = 0
    dropped: int | None = 0
    tokens: int | None = 0
    bytes_raw: int | None = 0
    bytes_clean: int | None = 0
    term_set: set[str] | None = field(default_factory=set)
    term_count: int | None = None

    @classmethod
    def from_counts(
        cls,
        documents: int | None = None,
        tokens: int | None = None,
        terms: int | None = None,
        bytes_raw: int | None = None,
        bytes_clean: int | None = None,
        dropped: int | None = None,
    ) -> SourceStats:
        return cls(documents, dropped, tokens, bytes_raw, bytes_clean, None, terms)

    @property
    def terms(self) -> int | None:
        return len(self.term_set) if self.term_set is not None else self.term_count

    @property
    def written(self) -> int | None:
        if self.documents is None:
            return None
        return self.documents - (self.dropped or 0)

    def add_doc(self, ds: DocStats) -> None:
        self.documents = _add(self.documents, 1)
        self.tokens = _add(self.tokens, ds.tokens)
        self.bytes_raw = _add(self.bytes_raw, ds.bytes_raw)
        self.bytes_clean = _add(self.bytes_clean, ds.bytes_clean)
        if self.term_set is None:
            raise ValueError("cannot add documents to count-only statistics")
        self.term_set.update(ds.terms)

    def add_dropped(self, bytes_raw: int = 0) -> None:
        self.documents = _add(self.documents, 1)
        self.dropped = _add(self.dropped, 1)
        self.bytes_raw = _add(self.bytes_raw, bytes_raw)

    def update(self, other: SourceStats) -> None:
        """In-place merge."""
        if (self.term_set is None) != (other.term_set is None):
            raise ValueError("cannot merge exact term sets with count-only terms")
        self.documents = _add(self.documents, other.documents)
        self.dropped = _add(self.dropped, other.dropped)
        self.tokens = _add(self.tokens, other.tokens)
        self.bytes_raw = _add(self.bytes_raw, other.bytes_raw)
        self.bytes_clean = _add(self.bytes_clean, other.bytes_clean)
        if self.term_set is not None:
            self.term_set |= other.term_set
        else:
            self.term_count = _add(self.term_count, other.term_count)

    def copy(self) -> SourceStats:
        return SourceStats(
            self.documents,
            self.dropped,
            self.tokens,
            self.bytes_raw,
            self.bytes_clean,
            None if self.term_set is None else set(self.term_set),
            self.term_count,
        )


@dataclass
class CorpusStats:
    sources: dict[str, SourceStats] = field(default_factory=dict)
    errors: tuple[str, ...] = ()

    def source(self, name: str) -> SourceStats:
        if name not in self.sources:
            self.sources[name] = SourceStats()
        return self.sources[name]

    def update(self, other: CorpusStats) -> None:
        for name, st in other.sources.items():
            if name in self.sources:
                self.sources[name].update(st)
            else:
                self.sources[name] = st.copy()
        self.errors = tuple(sorted(set(self.errors) | set(other.errors)))

    def totals(self) -> SourceStats:
        """Column sums; ``term_count`` is the sum of per-source terms and
        ``term_set`` the union, when every source has an exact set."""
        if not self.sources:
            return SourceStats(term_count=0)
        total = SourceStats.from_counts()
        exact = all(st.term_set is not None for st in self.sources.values())
        union: set[str] | None = set() if exact else None
        for st in self.sources.values():
            total.documents = _add(total.documents, st.documents)
            total.dropped = _add(total.dropped, st.dropped)
            total.tokens = _add(total.tokens, st.tokens)
            total.bytes_raw = _add(total.bytes_raw, st.bytes_raw)
            total.bytes_clean = _add(total.bytes_clean, st.bytes_clean)
            total.term_count = _add(total.term_count, st.terms)
            if union is not None:
                union |= st.term_set
        total.term_set = union
        return total


def merge(a: CorpusStats, b: CorpusStats) -> CorpusStats:
    out = CorpusStats()
    out.update(a)
    out.update(b)
    return out


def fold(parts: Iterable[CorpusStats]) -> CorpusStats:
    out = CorpusStats()
    for p in parts:
        out.update(p)
    return out


def _fmt(v: int | None) -> str:
    return "-" if v is None else str(v)


def _gb(v: int | None) -> str:
    return "-" if v is None else f"{v / 1e9:.6f}"


def _row(name: str, st: SourceStats, union: int | None) -> list[str]:
    return [
        name,
        _fmt(st.documents),
        _fmt(st.tokens),
        _fmt(st.terms),
        _fmt(st.bytes_raw),
        _fmt(st.bytes_clean),
        _fmt(st.dropped),
        _fmt(union),
        _gb(st.bytes_raw),
        _gb(st.bytes_clean),
    ]


def report_rows(stats: CorpusStats) -> list[list[str]]:
    rows = [list(COLUMNS)]
    for name, st in stats.sources.items():
        rows.append(_row(name, st, len(st.term_set) if st.term_set is not None else None))
    total = stats.totals()
    total_row = _row("Total", total, len(total.term_set) if total.term_set is not None else None)
    total_row[3] = _fmt(total.term_count)
    rows.append(total_row)
    return rows


def render_report(stats: CorpusStats, fmt: str = "tsv") -> bytes:
    """One row per source plus a Total row.

    The Total ``terms`` cell is the column sum; ``terms_union`` holds the
    number of distinct terms across sources when exact sets are available.
    """
    rows = report_rows(stats)
    if fmt == "tsv":
        text = "".join("\t".join(r) + "\n" for r in rows)
    elif fmt == "markdown":
        head, body = rows[0], rows[1:]
        lines = ["| " + " | ".join(head) + " |", "|" + "|".join(["---"] + ["---:"] * (len(head) - 1)) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in body]
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return text.encode("utf-8")
