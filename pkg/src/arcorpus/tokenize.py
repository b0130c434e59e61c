"""Word segmentation and byte-pair encoding.

Text is cut into pieces (mask tags, kept punctuation marks, whitespace runs
and the word runs between them); the pieces cover the input exactly so
encoding is lossless. BPE merges never cross piece boundaries.

Vocabulary ids: base units first in byte order (the 256 single bytes, then,
for ``unit="scalar"``, every multi-byte scalar seen in training in code
point order), then one id per distinct merged symbol in merge order.
"""

from __future__ import annotations

import heapq
import re
import subprocess
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .config import DEFAULT_KEPT_PUNCTUATION
from .errors import EmptyCorpus, InvalidUtf8, SchemaError, UnknownId
from .masking import MaskPolicy

Segmenter = Callable[[str], list[str]]

DEFAULT_TAGS = MaskPolicy().tags
UNITS = ("bytes", "scalar")
VOCAB_MAGIC = "arcorpus-bpe"


@lru_cache(maxsize=32)
def _piece_re(tags: tuple[str, ...], punct: frozenset[str]) -> re.Pattern[str]:
    alts = [re.escape(t) for t in sorted(tags, key=len, reverse=True)]
    p = "".join(re.escape(c) for c in sorted(punct))
    word = r"[^\s{p}]".format(p=p) if p else r"\S"
    if alts:
        word = f"(?:(?!{'|'.join(alts)}){word})+"
    else:
        word += "+"
    parts = alts + ([f"[{p}]"] if p else []) + [r"\s+", word]
    return re.compile("|".join(parts))


def split_pieces(
    text: str,
    tags: Sequence[str] = DEFAULT_TAGS,
    punct: Iterable[str] = DEFAULT_KEPT_PUNCTUATION,
) -> list[str]:
    """Partition ``text`` into tag, punctuation, whitespace and word pieces."""
    return _piece_re(tuple(tags), frozenset(punct)).findall(text)


def segment_whitespace(
    text: str,
    tags: Sequence[str] = DEFAULT_TAGS,
    punct: Iterable[str] = DEFAULT_KEPT_PUNCTUATION,
) -> list[str]:
    return [p for p in split_pieces(text, tags, punct) if not p[0].isspace()]


@dataclass(frozen=True)
class WhitespaceSegmenter:
    tags: tuple[str, ...] = DEFAULT_TAGS
    punct: frozenset[str] = DEFAULT_KEPT_PUNCTUATION

    def __call__(self, text: str) -> list[str]:
        return segment_whitespace(text, self.tags, self.punct)


@dataclass(frozen=True)
class CommandSegmenter:
    """Adapter for an external segmenter such as Farasa.

    The command receives the text on stdin (UTF-8) and must print the
    segments separated by whitespace on stdout.
    """

    argv: tuple[str, ...]
    timeout: float | None = 60.0

    def __call__(self, text: str) -> list[str]:
        if not text.strip():
            return []
        proc = subprocess.run(
            self.argv, input=text.encode("utf-8"), capture_output=True, check=True, timeout=self.timeout
        )
        return proc.stdout.decode("utf-8").split()


class BpeVocab:
    """Ordered merge list with symbol/id tables."""

    def __init__(self, unit: str, merges: Iterable[tuple[bytes, bytes]], scalars: Iterable[str] = ()):
        if unit not in UNITS:
            raise ValueError(f"unit must be one of {UNITS}")
        self.unit = unit
        self.scalars = tuple(sorted(set(scalars)))
        if unit == "bytes" and self.scalars:
            raise ValueError("byte vocabularies have no scalar alphabet")
        self.merges = tuple((bytes(a), bytes(b)) for a, b in merges)

        id_to_token = [bytes([i]) for i in range(256)]
        id_to_token += [s.encode("utf-8") for s in self.scalars if len(s.encode("utf-8")) > 1]
        token_to_id = {tok: i for i, tok in enumerate(id_to_token)}
        ranks = {}
        for rank, (a, b) in enumerate(self.merges):
            if a not in token_to_id or b not in token_to_id:
                raise SchemaError(f"merge {rank} uses a symbol not defined earlier")
            if (a, b) in ranks:
                raise SchemaError(f"merge {rank} repeats an earlier merge")
            ranks[(a, b)] = rank
            merged = a + b
            if merged not in token_to_id:
                token_to_id[merged] = len(id_to_token)
                id_to_token.append(merged)
        self.id_to_token = tuple(id_to_token)
        self.token_to_id = token_to_id
        self._ranks = ranks
        self._cache: dict[str, tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self.id_to_token)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BpeVocab):
            return NotImplemented
        return (self.unit, self.scalars, self.merges) == (other.unit, other.scalars, other.merges)

    def __repr__(self) -> str:
        return f"BpeVocab(unit={self.unit!r}, merges={len(self.merges)}, size={len(self)})"

    def base_symbols(self, token: str) -> list[bytes]:
        if self.unit == "bytes":
            return [bytes([b]) for b in token.encode("utf-8")]
        out = []
        for ch in token:
            b = ch.encode("utf-8")
            if b in self.token_to_id:
                out.append(b)
            else:
                out.extend(bytes([x]) for x in b)
        return out

    def apply_merges(self, symbols: list[bytes]) -> list[bytes]:
        """Replay the merges in training order; ranks already passed are never
        revisited, which is what training itself did to each word."""
        ranks = self._ranks
        last = -1
        while len(symbols) > 1:
            best = None
            for pair in zip(symbols, symbols[1:]):
                r = ranks.get(pair)
                if r is not None and r > last and (best is None or r < best):
                    best = r
            if best is None:
                break
            last = best
            a, b = self.merges[best]
            merged = a + b
            out = []
            i, n = 0, len(symbols)
            while i < n:
                if i + 1 < n and symbols[i] == a and symbols[i + 1] == b:
                    out.append(merged)
                    i += 2
                else:
                    out.append(symbols[i])
                    i += 1
            symbols = out
        return symbols

    def encode_piece(self, piece: str) -> tuple[int, ...]:
        ids = self._cache.get(piece)
        if ids is None:
            ids = tuple(self.token_to_id[s] for s in self.apply_merges(self.base_symbols(piece)))
            if len(self._cache) > 100_000:
                self._cache.clear()
            self._cache[piece] = ids
        return ids

    def dumps(self) -> str:
        lines = [f"{VOCAB_MAGIC} 1 unit={self.unit} merges={len(self.merges)} scalars={len(self.scalars)}"]
        lines += [s.encode("utf-8").hex() for s in self.scalars]
        lines += [f"{a.hex()} {b.hex()}" for a, b in self.merges]
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.dumps().encode("utf-8"))

    @classmethod
    def loads(cls, text: str) -> BpeVocab:
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise SchemaError("empty vocab file")
        head = lines[0].split()
        if len(head) != 5 or head[0] != VOCAB_MAGIC or head[1] != "1":
            raise SchemaError(f"bad vocab header: {lines[0]!r}")
        try:
            fields = dict(kv.split("=", 1) for kv in head[2:])
            unit, n_merges, n_scalars = fields["unit"], int(fields["merges"]), int(fields["scalars"])
        except (KeyError, ValueError):
            raise SchemaError(f"bad vocab header: {lines[0]!r}") from None
        body = lines[1:]
        if len(body) != n_scalars + n_merges:
            raise SchemaError("vocab line count does not match header")
        try:
            scalars = [bytes.fromhex(h).decode("utf-8") for h in body[:n_scalars]]
            merges = []
            for line in body[n_scalars:]:
                a, b = line.split(" ")
                merges.append((bytes.fromhex(a), bytes.fromhex(b)))
        except ValueError as exc:
            raise SchemaError(f"bad vocab body: {exc}") from None
        return cls(unit, merges, scalars)

    @classmethod
    def load(cls, path: str | Path) -> BpeVocab:
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def _symbols(token: str, unit: str) -> tuple[bytes, ...]:
    if unit == "bytes":
        return tuple(bytes([b]) for b in token.encode("utf-8"))
    return tuple(ch.encode("utf-8") for ch in token)


def bpe_train(corpus: Iterable[str] | Mapping[str, int], target_merges: int, unit: str = "bytes") -> BpeVocab:
    """Learn up to ``target_merges`` merges from a token stream or token counts.

    Each step merges the most frequent adjacent symbol pair, counted over
    token occurrences; ties go to the lexicographically smallest
    ``(left, right)`` byte sequences. Training stops early once no pair
    occurs at least twice.
    """
    if target_merges < 0:
        raise ValueError("target_merges must be >= 0")
    if unit not in UNITS:
        raise ValueError(f"unit must be one of {UNITS}")
    counts = Counter(corpus) if not isinstance(corpus, Mapping) else Counter(dict(corpus))
    words = [(list(_symbols(tok, unit)), freq) for tok, freq in sorted(counts.items()) if tok and freq > 0]
    if not words:
        raise EmptyCorpus("corpus has no tokens")
    scalars = sorted({ch for tok, _ in counts.items() for ch in tok}) if unit == "scalar" else []

    pair_counts: dict[tuple[bytes, bytes], int] = defaultdict(int)
    where: dict[tuple[bytes, bytes], set[int]] = defaultdict(set)
    for wi, (syms, freq) in enumerate(words):
        for pair in zip(syms, syms[1:]):
            pair_counts[pair] += freq
            where[pair].add(wi)
    heap = [(-c, a, b) for (a, b), c in pair_counts.items()]
    heapq.heapify(heap)

    merges: list[tuple[bytes, bytes]] = []
    while len(merges) < target_merges:
        best = None
        while heap:
            negc, a, b = heapq.heappop(heap)
            if pair_counts.get((a, b), 0) == -negc:
                best = (a, b)
                break
        if best is None or -negc < 2:
            break
        merges.append(best)
        a, b = best
        merged = a + b
        touched = set()
        for wi in sorted(where.pop(best, ())):
            syms, freq = words[wi]
            if len(syms) < 2:
                continue
            out = []
            i, n = 0, len(syms)
            while i < n:
                if i + 1 < n and syms[i] == a and syms[i + 1] == b:
                    out.append(merged)
                    i += 2
                else:
                    out.append(syms[i])
                    i += 1
            if len(out) == n:
                continue  # stale index entry
            words[wi] = (out, freq)
            # only pairs next to a merge site change; apply the difference
            before = Counter(zip(syms, syms[1:]))
            for pair, c in Counter(zip(out, out[1:])).items():
                d = c - before.pop(pair, 0)
                if d:
                    pair_counts[pair] += d * freq
                    touched.add(pair)
                    if d > 0:
                        where[pair].add(wi)
            for pair, c in before.items():
                pair_counts[pair] -= c * freq
                touched.add(pair)
        for pair in touched:
            c = pair_counts[pair]
            if c > 0:
                heapq.heappush(heap, (-c, pair[0], pair[1]))
            else:
                del pair_counts[pair]
    return BpeVocab(unit, merges, scalars)


def bpe_encode(text: str, vocab: BpeVocab, tags: Sequence[str] = DEFAULT_TAGS) -> list[int]:
    ids: list[int] = []
    for piece in split_pieces(text, tags):
        ids.extend(vocab.encode_piece(piece))
    return ids


def bpe_decode(ids: Iterable[int], vocab: BpeVocab) -> str:
    table = vocab.id_to_token
    ids = list(ids)
    for i in ids:
        if not isinstance(i, int) or not 0 <= i < len(table):
            raise UnknownId(f"id {i!r} outside vocabulary of size {len(table)}")
    raw = b"".join(table[i] for i in ids)
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidUtf8(f"ids do not decode to UTF-8: {exc}") from None


def count_tokens(texts: Iterable[str], segmenter: Segmenter = segment_whitespace) -> Counter:
    counts: Counter = Counter()
    for text in texts:
        counts.update(segmenter(text))
    return counts
