"""Canonical Arabic character inventory and code point classification.

The default table holds 44 graphemes: 36 letters (hamza forms, long vowels
and consonants) followed by the eight combining marks (three short vowels,
three tanwin marks, shadda and sukun). Each grapheme is stored as its
standard Arabic-block scalar; Arpabet codes are carried verbatim, including
multi-valued cells such as ``"AE/E"``.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from ._emoji import EMOJI_RANGES
from .errors import SchemaError

if TYPE_CHECKING:
    from .config import CleanConfig

CHARSET_VERSION = "1"


class CharClass(str, enum.Enum):
    CONSONANT = "Consonant"
    LONG_VOWEL = "LongVowel"
    SHORT_VOWEL = "ShortVowel"
    DIACRITICAL_MARK = "DiacriticalMark"
    HAMZA_FORM = "HamzaForm"
    ARABIC_PUNCT = "ArabicPunct"
    ASCII_DIGIT = "AsciiDigit"
    WHITESPACE = "Whitespace"
    EMOJI = "Emoji"
    MASK_TAG_CHAR = "MaskTagChar"
    NOISY = "Noisy"


LETTER_CLASSES = frozenset({CharClass.CONSONANT, CharClass.LONG_VOWEL, CharClass.HAMZA_FORM})
MARK_CLASSES = frozenset({CharClass.SHORT_VOWEL, CharClass.DIACRITICAL_MARK})
TABLE_CLASSES = LETTER_CLASSES | MARK_CLASSES


@dataclass(frozen=True)
class CharsetEntry:
    grapheme: str
    arpabet: str | None
    description: str
    cls: CharClass


_C, _L, _H = CharClass.CONSONANT, CharClass.LONG_VOWEL, CharClass.HAMZA_FORM
_S, _D = CharClass.SHORT_VOWEL, CharClass.DIACRITICAL_MARK

# (grapheme, arpabet, description, class) in table reading order.
# The three hamza-carrier rows that the source table repeats are listed once.
_DEFAULT_ROWS: tuple[tuple[str, str | None, str, CharClass], ...] = (
    ("ء", "E", "hamza", _H),
    ("ا", "AE/E", "alif", _L),
    ("آ", "AE:", "alif maddah", _L),
    ("أ", "E", "alef + hamza above", _H),
    ("ؤ", "E", "waw + hamza above", _H),
    ("إ", "E", "alef + hamza below", _H),
    ("ئ", "E", "ya + hamza above", _H),
    ("ب", "B", "ba", _C),
    ("ة", "T/H", "ta marbuta", _C),
    ("ت", "T/H", "ta", _C),
    ("ث", "TH", "tha", _C),
    ("ج", "ZH", "jeem", _C),
    ("ح", "HH", "ha", _C),
    ("خ", "KH", "kha", _C),
    ("د", "D", "dal", _C),
    ("ذ", "DH", "Thal", _C),
    ("ر", "R", "ra", _C),
    ("ز", "ZH", "zay", _C),
    ("س", "S", "seen", _C),
    ("ش", "SH", "sheen", _C),
    ("ص", "SS", "sad", _C),
    ("ض", "DD", "dad", _C),
    ("ط", "TT", "ta", _C),
    ("ظ", "DH2", "za", _C),
    ("ع", "AI", "ayn", _C),
    ("غ", "GH", "ghayn", _C),
    ("ف", "F", "fa", _C),
    ("ق", "Q", "qaf", _C),
    ("ك", "KH", "kaf", _C),
    ("ل", "L", "lam", _C),
    ("م", "M", "meem", _C),
    ("ن", "N", "noon", _C),
    ("ه", "HH", "ha", _C),
    ("و", "W", "waw", _L),
    ("ى", "AE", "alif maksura", _L),
    ("ي", "Y", "ya", _L),
    ("َ", "AE", "fathah", _S),
    ("ِ", "IH", "kasra", _S),
    ("ُ", "UH", "damma", _S),
    ("ً", "AE N", "fathathan", _D),
    ("ٍ", "IH N", "kasrathan", _D),
    ("ٌ", "UH N", "dammathan", _D),
    ("ّ", None, "tashdeed", _D),
    ("ْ", None, "sakun", _D),
)


class CharsetTable:
    """Immutable grapheme inventory with O(1) lookup."""

    __slots__ = ("_entries", "_lookup", "_hash")

    def __init__(self, entries: Iterable[CharsetEntry]):
        entries = tuple(entries)
        lookup: dict[str, int] = {}
        for i, e in enumerate(entries):
            if len(e.grapheme) != 1:
                raise SchemaError(f"grapheme must be one scalar: {e.grapheme!r}")
            if e.grapheme in lookup:
                raise SchemaError(f"duplicate grapheme U+{ord(e.grapheme):04X}")
            lookup[e.grapheme] = i
        object.__setattr__(self, "_entries", entries)
        object.__setattr__(self, "_lookup", lookup)
        object.__setattr__(self, "_hash", hash(entries))

    def __setattr__(self, name, value):
        raise AttributeError("CharsetTable is immutable")

    def __reduce__(self):
        return (CharsetTable, (self._entries,))

    @property
    def entries(self) -> tuple[CharsetEntry, ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __contains__(self, ch: object) -> bool:
        return ch in self._lookup

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CharsetTable) and self._entries == other._entries

    def __hash__(self) -> int:
        return self._hash

    def get(self, ch: str) -> CharsetEntry | None:
        i = self._lookup.get(ch)
        return None if i is None else self._entries[i]

    def graphemes(self, classes: Iterable[CharClass] | None = None) -> str:
        if classes is None:
            return "".join(e.grapheme for e in self._entries)
        wanted = frozenset(classes)
        return "".join(e.grapheme for e in self._entries if e.cls in wanted)

    def letters(self) -> str:
        return self.graphemes(LETTER_CLASSES)


_DEFAULT: CharsetTable | None = None


def build_default_charset() -> CharsetTable:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = CharsetTable(CharsetEntry(g, a, d, c) for g, a, d, c in _DEFAULT_ROWS)
    return _DEFAULT


def _parse_grapheme(field: str) -> str:
    if field[:2] in ("U+", "u+"):
        try:
            return chr(int(field[2:], 16))
        except ValueError:
            return ""
    return field


def load_charset(path: str | Path) -> CharsetTable:
    """Read an override table: ``grapheme TAB arpabet TAB class`` per line.

    The grapheme may be a literal scalar or ``U+XXXX``; an arpabet of ``-``
    means none. Blank lines and lines starting with ``#`` are skipped.
    """
    entries = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise SchemaError(f"{path}:{lineno}: expected 3 tab-separated fields")
        grapheme, arpabet, cls = parts
        try:
            char_class = CharClass(cls.strip())
        except ValueError:
            raise SchemaError(f"{path}:{lineno}: unknown class {cls!r}") from None
        if char_class not in TABLE_CLASSES:
            raise SchemaError(f"{path}:{lineno}: class {cls!r} cannot appear in a table")
        g = _parse_grapheme(grapheme)
        if len(g) != 1 or 0xD800 <= ord(g) <= 0xDFFF:
            raise SchemaError(f"{path}:{lineno}: grapheme must be one Unicode scalar")
        arpabet = arpabet.strip()
        entries.append(CharsetEntry(g, None if arpabet in ("", "-") else arpabet, f"U+{ord(g):04X}", char_class))
    return CharsetTable(entries)


_EMOJI_STARTS = [a for a, _ in EMOJI_RANGES]


def is_emoji(ch: str) -> bool:
    cp = ord(ch)
    i = bisect.bisect_right(_EMOJI_STARTS, cp) - 1
    return i >= 0 and cp <= EMOJI_RANGES[i][1]


def classify(ch: str, policy: CleanConfig | None = None, charset: CharsetTable | None = None) -> CharClass:
    """Class of a single scalar. Never returns ``MASK_TAG_CHAR``; that class is
    only assigned in context by :func:`classify_text`."""
    if policy is None:
        from .config import CleanConfig

        policy = CleanConfig()
    entry = (charset or build_default_charset()).get(ch)
    if entry is not None:
        return entry.cls
    if ch in policy.kept_punctuation:
        return CharClass.ARABIC_PUNCT
    if "0" <= ch <= "9":
        return CharClass.ASCII_DIGIT
    if ch.isspace():
        return CharClass.WHITESPACE
    if policy.preserve_emoji and is_emoji(ch):
        return CharClass.EMOJI
    return CharClass.NOISY


def classify_text(text: str, policy: CleanConfig | None = None, charset: CharsetTable | None = None) -> list[CharClass]:
    """Per-scalar classes for ``text``, with mask tag literals marked."""
    if policy is None:
        from .config import CleanConfig

        policy = CleanConfig()
    classes = [classify(ch, policy, charset) for ch in text]
    for m in policy.mask.tag_regex().finditer(text):
        classes[m.start() : m.end()] = [CharClass.MASK_TAG_CHAR] * (m.end() - m.start())
    return classes


def arpabet_of(ch: str, charset: CharsetTable | None = None) -> str | None:
    entry = (charset or build_default_charset()).get(ch)
    return None if entry is None else entry.arpabet
