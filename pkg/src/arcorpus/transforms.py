"""Character-level normalization transforms.

Every transform is pure, total on ``str`` and idempotent. Mask tag literals
(``[link]`` and friends) are opaque to the transforms that delete
characters, so tags inserted by the masking stage survive the chain.
"""

from __future__ import annotations

import re
import sys
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import masking
from ._emoji import EMOJI_RANGES
from .charset import CharsetTable, build_default_charset
from .config import CleanConfig

TATWEEL = "ـ"
HAMZA_ABOVE = "ٔ"
HAMZA_BELOW = "ٕ"

_DEFAULT_CONFIG = CleanConfig()

# Latin punctuation that has a dedicated Arabic form
PUNCT_MAP = {"?": "؟", ",": "،", ";": "؛"}

_DIGITS = {ord(c): str(i) for i, c in enumerate("٠١٢٣٤٥٦٧٨٩")}
_DIGITS.update({ord(c): str(i) for i, c in enumerate("۰۱۲۳۴۵۶۷۸۹")})

_HAMZA_COMPOSE = re.compile("([اوي])([ً-ْ]*)ٔ|(ا)([ً-ْ]*)ٕ")
_HAMZA_ABOVE_OF = {"ا": "أ", "و": "ؤ", "ي": "ئ"}


@lru_cache(maxsize=1)
def punctuation_chars() -> frozenset[str]:
    """Every scalar whose general category is punctuation (P*)."""
    return frozenset(
        chr(cp)
        for cp in range(sys.maxunicode + 1)
        if not 0xD800 <= cp <= 0xDFFF and unicodedata.category(chr(cp))[0] == "P"
    )


@lru_cache(maxsize=1)
def whitespace_chars() -> str:
    return "".join(chr(cp) for cp in range(sys.maxunicode + 1) if chr(cp).isspace())


def _outside_tags(text: str, tags: tuple[str, ...], tag_re: re.Pattern[str], fn: Callable[[str], str]) -> str:
    if not any(t in text for t in tags):
        return fn(text)
    pieces = []
    pos = 0
    for m in tag_re.finditer(text):
        pieces.append(fn(text[pos : m.start()]))
        pieces.append(m.group())
        pos = m.end()
    pieces.append(fn(text[pos:]))
    return "".join(pieces)


def strip_tatweel(text: str) -> str:
    return text.replace(TATWEEL, "")


@lru_cache(maxsize=32)
def _elongation_re(letters: str, max_run: int) -> re.Pattern[str]:
    return re.compile(f"([{re.escape(letters)}])\\1{{{max_run},}}")


def collapse_elongation(text: str, max_run: int = 2, charset: CharsetTable | None = None) -> str:
    """Truncate runs of one repeated letter longer than ``max_run``.

    Only charset letters are affected; digit and punctuation runs are kept.
    """
    if max_run < 1:
        raise ValueError("max_run must be >= 1")
    pattern = _elongation_re((charset or build_default_charset()).letters(), max_run)
    return pattern.sub(lambda m: m.group(1) * max_run, text)


def normalize_hamza(text: str) -> str:
    """Compose carrier + combining hamza into the precomposed letter.

    Short-vowel and tanwin marks between the carrier and the hamza are kept
    after the composed letter. Combining hamza marks with no valid carrier
    are dropped.
    """
    if HAMZA_ABOVE not in text and HAMZA_BELOW not in text:
        return text

    def compose(m: re.Match[str]) -> str:
        if m.group(1):
            return _HAMZA_ABOVE_OF[m.group(1)] + m.group(2)
        return "إ" + m.group(4)

    text = _HAMZA_COMPOSE.sub(compose, text)
    return text.replace(HAMZA_ABOVE, "").replace(HAMZA_BELOW, "")


_DIGIT_RE = re.compile("[٠-٩۰-۹]")


def normalize_digits(text: str) -> str:
    if not _DIGIT_RE.search(text):
        return text
    return _DIGIT_RE.sub(lambda m: _DIGITS[ord(m.group())], text)


def _ranges(cps) -> list[list[int]]:
    out: list[list[int]] = []
    for cp in sorted(cps):
        if out and out[-1][1] == cp - 1:
            out[-1][1] = cp
        else:
            out.append([cp, cp])
    return out


def _class(cps) -> str:
    return "".join(_class_range(a, b) for a, b in _ranges(cps))


# A character class holding any scalar above U+FFFF cannot use the regex
# engine's bitmap lookup, so large classes are matched in two steps: a BMP
# class for the common case and an astral class used only when needed.
_ASTRAL = "\\U00010000-\\U0010ffff"
_MAX_BMP = "\uffff"


@lru_cache(maxsize=32)
def _punct_plan(kept: frozenset[str]):
    """Replacements for mapped marks plus BMP and astral deletion regexes."""
    mapped = tuple((src, dst) for src, dst in PUNCT_MAP.items() if dst in kept)
    drop = [ord(p) for p in punctuation_chars() if PUNCT_MAP.get(p, p) not in kept]
    bmp = [c for c in drop if c <= 0xFFFF]
    astral = [c for c in drop if c > 0xFFFF]
    bmp_re = re.compile(f"[{_class(bmp)}]+") if bmp else None
    astral_re = re.compile(f"(?:(?=[{_ASTRAL}])[{_class(astral)}])+") if astral else None
    return mapped, bmp_re, astral_re


def normalize_punctuation(text: str, config: CleanConfig = _DEFAULT_CONFIG) -> str:
    """Map Latin ``? , ;`` to Arabic forms, then delete punctuation outside the kept set."""
    mapped, bmp_re, astral_re = _punct_plan(config.kept_punctuation)

    def apply(s: str) -> str:
        for src, dst in mapped:
            s = s.replace(src, dst)
        if bmp_re is not None:
            s = bmp_re.sub("", s)
        if astral_re is not None and s and max(s) > _MAX_BMP:
            s = astral_re.sub("", s)
        return s

    return _outside_tags(text, config.mask.tags, config.mask.tag_regex(), apply)


def remove_slash_hyphen(text: str) -> str:
    """Delete every ``/-`` pair, including pairs that form once inner pairs go."""
    for _ in range(4):
        if "/-" not in text:
            return text
        text = text.replace("/-", "")
    # deeply nested pairs: one linear scan instead of repeated passes
    out: list[str] = []
    for ch in text:
        if ch == "-" and out and out[-1] == "/":
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _class_range(a: int, b: int) -> str:
    return f"\\U{a:08x}" if a == b else f"\\U{a:08x}-\\U{b:08x}"


@lru_cache(maxsize=32)
def _noisy_plan(charset: CharsetTable, kept: frozenset[str], preserve_emoji: bool):
    allowed = {ord(c) for c in charset.graphemes()} | {ord(c) for c in kept}
    allowed |= {ord(c) for c in "0123456789" + whitespace_chars()}
    if preserve_emoji:
        allowed |= {cp for a, b in EMOJI_RANGES if a <= 0xFFFF for cp in range(a, min(b, 0xFFFF) + 1)}
    bmp = [c for c in allowed if c <= 0xFFFF]
    astral = _class(c for c in allowed if c > 0xFFFF)
    if preserve_emoji:
        astral += "".join(_class_range(max(a, 0x10000), b) for a, b in EMOJI_RANGES if b > 0xFFFF)
    # runs of non-BMP-allowed scalars; astral members are filtered per run
    run_re = re.compile(f"[^{_class(bmp)}]+")
    keep_astral = re.compile(f"[{astral}]") if astral else None
    return run_re, keep_astral


def remove_noisy(text: str, charset: CharsetTable | None = None, config: CleanConfig = _DEFAULT_CONFIG) -> str:
    """Delete every scalar that classifies as noisy, leaving mask tags intact."""
    run_re, keep_astral = _noisy_plan(charset or build_default_charset(), config.kept_punctuation, config.preserve_emoji)

    def repl(m: re.Match[str]) -> str:
        run = m.group()
        if keep_astral is None or max(run) <= _MAX_BMP:
            return ""
        return "".join(keep_astral.findall(run))

    return _outside_tags(text, config.mask.tags, config.mask.tag_regex(), lambda s: run_re.sub(repl, s))


def collapse_whitespace(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class Transform:
    name: str
    apply: Callable[[str, CleanConfig, CharsetTable], str]

    def __call__(self, text: str, config: CleanConfig = _DEFAULT_CONFIG, charset: CharsetTable | None = None) -> str:
        return self.apply(text, config, charset or build_default_charset())


TRANSFORMS: dict[str, Transform] = {
    t.name: t
    for t in (
        Transform("strip_html", lambda s, c, cs: masking.strip_html(s)),
        Transform("mask_urls", lambda s, c, cs: masking.mask_urls(s, c.mask)),
        Transform("mask_emails", lambda s, c, cs: masking.mask_emails(s, c.mask)),
        Transform("normalize_digits", lambda s, c, cs: normalize_digits(s)),
        Transform("mask_phones", lambda s, c, cs: masking.mask_phones(s, c.mask)),
        Transform("strip_tatweel", lambda s, c, cs: strip_tatweel(s)),
        Transform("normalize_hamza", lambda s, c, cs: normalize_hamza(s)),
        Transform("strip_parentheticals", lambda s, c, cs: masking.strip_parentheticals(s)),
        Transform("remove_slash_hyphen", lambda s, c, cs: remove_slash_hyphen(s)),
        Transform("normalize_punctuation", lambda s, c, cs: normalize_punctuation(s, c)),
        Transform("collapse_elongation", lambda s, c, cs: collapse_elongation(s, c.max_run, cs)),
        Transform("remove_noisy", lambda s, c, cs: remove_noisy(s, cs, c)),
    )
}
