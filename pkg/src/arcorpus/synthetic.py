"""Deterministic synthetic raw text for tests and benchmarks.

The generators take an explicit ``random.Random`` so every corpus is
reproducible from its seed.
"""

from __future__ import annotations

import json
import itertools
import random
from functools import lru_cache
from pathlib import Path

from .charset import build_default_charset

LETTERS = build_default_charset().letters()
MARKS = "َُِّْ" + "ًٌٍ"
EXTRA_ARABIC = "پچژکگیٱۀۃ"  # letters outside the table
DIGITS_AR = "٠١٢٣٤٥٦٧٨٩"
DIGITS_FA = "۰۱۲۳۴۵۶۷۸۹"
PUNCT = list("?,;:!.\"'()[]{}-_/\\*&%$#@+=<>|~^`") + ["،", "؛", "؟", "«", "»", "…", "۔", "—"]
EMOJI = ["😀", "👍🏽", "❤️", "🇦🇪", "👨‍👩‍👧", "🔥", "✅", "🌙", "1️⃣"]
SPACES = [" ", " ", " ", "\n", "\t", " ", " ", "  "]
LATIN_WORDS = ["hello", "Page", "AT&T", "e.g.", "the", "HTML", "x86", "iPhone"]
URLS = [
    "https://example.com/a?b=1",
    "http://sub.domain.org/path/to/page.html",
    "www.site.net/ar/مقال",
    "https://ar.wikipedia.org/wiki/مصر",
    "example.co.uk/x",
    "ftp://files.example.org/pub",
    "news.example.ae",
]
EMAILS = ["info@site.org", "first.last@mail.example.com", "a_b+tag@x.io", "user123@domain.co"]
PHONES = ["+971 4 123 4567", "050-123-4567", "(02) 555 1234", "٠٥٠١٢٣٤٥٦٧", "+966 55 123 4567", "0097143334444"]
HTML = ["<p>", "</p>", "<br/>", '<a href="x">', "</a>", "<!-- note -->", "&amp;", "&#1605;", "&nbsp;", "<b>", "&lt;i&gt;"]


def arabic_word(rng: random.Random, marks: bool = True) -> str:
    out = []
    for _ in range(rng.randint(2, 7)):
        out.append(rng.choice(LETTERS))
        if marks and rng.random() < 0.2:
            out.append(rng.choice(MARKS))
    if rng.random() < 0.05:
        out.insert(rng.randrange(len(out) + 1), "ـ" * rng.randint(1, 4))
    if rng.random() < 0.05:
        out.append(out[-1] * rng.randint(2, 5))
    return "".join(out)


def _fragment(rng: random.Random) -> str:
    r = rng.random()
    if r < 0.45:
        return arabic_word(rng)
    if r < 0.50:
        return rng.choice(LATIN_WORDS)
    if r < 0.55:
        return "".join(rng.choice(DIGITS_AR + DIGITS_FA + "0123456789") for _ in range(rng.randint(1, 9)))
    if r < 0.62:
        return rng.choice(PUNCT)
    if r < 0.66:
        return rng.choice(URLS)
    if r < 0.69:
        return rng.choice(EMAILS)
    if r < 0.72:
        return rng.choice(PHONES)
    if r < 0.78:
        return rng.choice(HTML)
    if r < 0.83:
        return rng.choice(EMOJI)
    if r < 0.86:
        return rng.choice(["ا", "و", "ي", "ه"]) + rng.choice(["ٔ", "ٕ"])
    if r < 0.88:
        return rng.choice(["/-", "//--", "(", ")", "(حاشية)", "[link]", "[phone"])
    if r < 0.91:
        return rng.choice(EXTRA_ARABIC) + rng.choice(["ٰ", "ٓ", "ـ"])
    if r < 0.95:
        return chr(rng.randint(0x20, 0x2FFF))
    return chr(rng.choice([rng.randint(0x3000, 0xD7FF), rng.randint(0xE000, 0x10FFFF)]))


def messy_text(rng: random.Random, max_fragments: int = 40) -> str:
    """A raw string mixing every class of input the cleaner handles."""
    parts = []
    for _ in range(rng.randint(0, max_fragments)):
        parts.append(_fragment(rng))
        parts.append(rng.choice(SPACES) if rng.random() < 0.75 else "")
    return "".join(parts)


def injected_document(rng: random.Random, n_items: int = 6) -> tuple[str, dict[str, int]]:
    """Arabic filler with URLs, e-mails and phone numbers at random offsets.

    Items are always separated by at least one Arabic word so each injection
    is exactly one maximal match.
    """
    counts = {"url": 0, "email": 0, "phone": 0}
    words = [arabic_word(rng) for _ in range(rng.randint(5, 60))]
    for _ in range(rng.randint(1, n_items)):
        kind = rng.choice(("url", "email", "phone"))
        item = rng.choice({"url": URLS, "email": EMAILS, "phone": PHONES}[kind])
        slots = [i for i in range(1, len(words)) if words[i - 1][0] not in "#" and words[i][0] not in "#"]
        if not slots:
            break
        i = rng.choice(slots)
        words.insert(i, "#" + item)
        counts[kind] += 1
    text = " ".join(w[1:] if w.startswith("#") else w for w in words)
    for p in ("،", "!", "؟"):
        if rng.random() < 0.3:
            text += " " + p
    return text, counts


LEXICON_SIZE = 50_000


@lru_cache(maxsize=1)
def _lexicon() -> tuple[list[str], list[float]]:
    # fixed word list with Zipf-like weights, so type counts resemble real text
    rng = random.Random(1)
    words = [arabic_word(rng) for _ in range(LEXICON_SIZE)]
    return words, list(itertools.accumulate(1.0 / r for r in range(1, LEXICON_SIZE + 1)))


def synthetic_document(rng: random.Random, target_chars: int = 2000) -> str:
    words, cum = _lexicon()
    parts = []
    size = 0
    while size < target_chars:
        r = rng.random()
        if r < 0.75:
            frag = rng.choices(words, cum_weights=cum)[0]
        elif r < 0.85:
            frag = arabic_word(rng)
        else:
            frag = _fragment(rng)
        parts.append(frag)
        size += len(frag) + 1
        parts.append("\n" if rng.random() < 0.02 else " ")
    return "".join(parts)


def write_synthetic_corpus(out_dir: str | Path, total_bytes: int, seed: int = 0) -> Path:
    """Write a three-source corpus (jsonl, doc-per-block, plain) and its manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    per_source = total_bytes // 3

    def docs():
        while True:
            yield synthetic_document(rng, rng.randint(200, 6000))

    gen = docs()
    with open(out / "news.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        written, i = 0, 0
        while written < per_source:
            line = json.dumps({"id": f"n{i}", "text": next(gen), "meta": {"dialect": "MSA"}}, ensure_ascii=False) + "\n"
            fh.write(line)
            written += len(line.encode("utf-8"))
            i += 1
    with open(out / "web.txt", "w", encoding="utf-8", newline="\n") as fh:
        written = 0
        while written < per_source:
            doc = next(gen).replace("\n\n", "\n") + "\n\n"
            fh.write(doc)
            written += len(doc.encode("utf-8"))
    books = out / "books"
    books.mkdir(exist_ok=True)
    paths = []
    written, i = 0, 0
    while written < per_source:
        p = books / f"book{i:04d}.txt"
        doc = "\n".join(next(gen) for _ in range(5))
        p.write_text(doc, encoding="utf-8")
        paths.append(f"books/{p.name}")
        written += len(doc.encode("utf-8"))
        i += 1
    manifest = {
        "sources": [
            {"name": "news", "path": "news.jsonl", "format": "jsonl", "dialect": "MSA", "domain": "News"},
            {"name": "web", "path": "web.txt", "format": "doc-per-block", "dialect": "Multi-dialect", "domain": "Cross"},
            {"name": "books", "paths": paths, "format": "plain", "dialect": "CA", "domain": "Education"},
        ]
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    return path
