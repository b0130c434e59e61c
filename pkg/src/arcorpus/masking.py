"""Markup stripping and masking of links, e-mail addresses and phone numbers.

Patterns (frozen; golden tests pin their behaviour):

``URL_PATTERN``
    Either a scheme (``http``, ``https``, ``ftp``; any case) followed by
    ``://``, or ``www.`` not glued to a preceding ASCII word character,
    followed by a body of non-space characters other than ``< > " ' [ ]``.
    The body may not end in ``. , ; : ! ? ( )`` or their Arabic forms.
    Or a bare domain: dot-separated ASCII labels ending in an alphabetic
    TLD of 2-24 letters, not preceded by ``[A-Za-z0-9_.@/-]``, not followed
    by ``[A-Za-z0-9_@-]`` or a dot plus alphanumeric, with an optional
    ``/path`` using the same body rules.

``EMAIL_PATTERN``
    ``local@domain.tld`` with an ASCII local part ``[A-Za-z0-9._%+-]+`` not
    preceded by a local-part character or ``@``, a dotted ASCII domain and an
    alphabetic TLD, not followed by ``[A-Za-z0-9_@-]`` or a dot plus
    alphanumeric. A second ``@`` therefore defeats the match.

``PHONE_PATTERN``
    Optional ``+``, then groups that are an ASCII digit or a parenthesised
    digit run, separated by any amount of whitespace or hyphens. A match is
    masked only when it holds at least ``min_phone_digits`` digits (7).
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConfigError

_BODY = r"""[^\s<>"'\[\]]"""
_BODY_END = r"""[^\s<>"'\[\].,;:!?()،؛؟]"""
_LABEL = r"[A-Za-z0-9](?:[A-Za-z0-9-]*[A-Za-z0-9])?"
_DOMAIN_END = r"(?![A-Za-z0-9_@-]|\.[A-Za-z0-9])"

URL_PATTERN = (
    rf"(?:(?i:https?|ftp)://|(?<![A-Za-z0-9_.@-])(?i:www)\.){_BODY}*{_BODY_END}"
    rf"|(?<![A-Za-z0-9_.@/-])(?:{_LABEL}\.)+[A-Za-z]{{2,24}}{_DOMAIN_END}(?:/(?:{_BODY}*{_BODY_END})?)?"
)
EMAIL_PATTERN = (
    rf"(?<![A-Za-z0-9._%+@-])[A-Za-z0-9._%+-]+@(?:{_LABEL}\.)+[A-Za-z]{{2,24}}{_DOMAIN_END}"
)
PHONE_PATTERN = r"\+?(?:\([0-9]+\)|[0-9])(?:[\s-]*(?:\([0-9]+\)|[0-9]))*"

PATTERN_NAMES = ("url", "email", "phone")


@dataclass(frozen=True)
class MaskPolicy:
    url_tag: str = "[link]"
    mail_tag: str = "[mail]"
    phone_tag: str = "[phone]"
    strip_html: bool = True
    strip_parentheticals: bool = True
    url_pattern: str = URL_PATTERN
    email_pattern: str = EMAIL_PATTERN
    phone_pattern: str = PHONE_PATTERN
    min_phone_digits: int = 7

    def __post_init__(self):
        tags = self.tags
        for tag in tags:
            if not tag or any(c.isspace() for c in tag):
                raise ConfigError(f"mask tag must be non-empty without whitespace: {tag!r}")
        if len(set(tags)) != len(tags):
            raise ConfigError("mask tags must be distinct")
        for name in PATTERN_NAMES:
            try:
                re.compile(getattr(self, f"{name}_pattern"))
            except re.error as exc:
                raise ConfigError(f"bad {name} pattern: {exc}") from None

    @property
    def tags(self) -> tuple[str, str, str]:
        return (self.url_tag, self.mail_tag, self.phone_tag)

    def tag_regex(self) -> re.Pattern[str]:
        return _tag_regex(self.tags)


@lru_cache(maxsize=32)
def _tag_regex(tags: tuple[str, ...]) -> re.Pattern[str]:
    return re.compile("|".join(re.escape(t) for t in sorted(tags, key=len, reverse=True)))


def load_patterns(path) -> dict[str, str]:
    """Read a ``name TAB pattern`` override file into MaskPolicy field values."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            name, sep, pattern = line.partition("\t")
            if not sep or name not in PATTERN_NAMES:
                raise ConfigError(f"{path}:{lineno}: expected one of {PATTERN_NAMES} TAB pattern")
            out[f"{name}_pattern"] = pattern
    return out


_DEFAULT_POLICY = MaskPolicy()


# Every default URL match contains "://" or an ASCII alphanumeric followed by
# a dot ("www." included); texts with neither skip the full scan.
_URL_HINT = re.compile(r"[A-Za-z0-9]\.")


def mask_urls(text: str, policy: MaskPolicy = _DEFAULT_POLICY) -> str:
    if policy.url_pattern == URL_PATTERN and "://" not in text and not _URL_HINT.search(text):
        return text
    return re.sub(policy.url_pattern, lambda m: policy.url_tag, text)


def mask_emails(text: str, policy: MaskPolicy = _DEFAULT_POLICY) -> str:
    if policy.email_pattern == EMAIL_PATTERN and "@" not in text:
        return text
    return re.sub(policy.email_pattern, lambda m: policy.mail_tag, text)


def _digit_count(s: str) -> int:
    return sum(c.isdigit() for c in s)


def mask_phones(text: str, policy: MaskPolicy = _DEFAULT_POLICY) -> str:
    # expects ASCII digits, so run after normalize_digits
    if policy.phone_pattern == PHONE_PATTERN and sum(map(text.count, "0123456789")) < policy.min_phone_digits:
        return text

    def repl(m: re.Match[str]) -> str:
        span = m.group()
        return policy.phone_tag if _digit_count(span) >= policy.min_phone_digits else span

    return re.sub(policy.phone_pattern, repl, text)


def find_phones(text: str, policy: MaskPolicy = _DEFAULT_POLICY) -> list[str]:
    """Maximal spans that :func:`mask_phones` would replace."""
    return [
        m.group()
        for m in re.finditer(policy.phone_pattern, text)
        if _digit_count(m.group()) >= policy.min_phone_digits
    ]


_HTML_RE = re.compile(
    r"<!--.*?-->"
    r"|<(script|style)\b[^>]*>.*?</\1\s*>"
    r"|</?[A-Za-z][^<>]*>"
    r"|<[!?][^<>]*>",
    re.IGNORECASE | re.DOTALL,
)


def strip_html(text: str) -> str:
    """Remove tags, comments and script/style bodies, then decode entities.

    Both steps repeat until the text stops changing, so escaped markup such as
    ``&lt;p&gt;`` is removed too and the result is a fixed point.
    """
    while True:
        out = html.unescape(_HTML_RE.sub("", text)) if ("<" in text or "&" in text) else text
        if out == text:
            return out
        text = out


_INNER_PAREN = re.compile(r"\([^()]*\)")


def strip_parentheticals(text: str) -> str:
    """Delete balanced ``( ... )`` spans innermost-out, then any stray parenthesis."""
    if "(" not in text and ")" not in text:
        return text
    for _ in range(4):
        out = _INNER_PAREN.sub("", text)
        if out == text:
            return text.replace("(", "").replace(")", "")
        text = out
    # deep nesting: one linear stack scan instead of repeated passes
    kept: list[str] = []
    opens: list[int] = []
    for ch in text:
        if ch == "(":
            opens.append(len(kept))
            kept.append(ch)
        elif ch == ")":
            if opens:
                del kept[opens.pop() :]
        else:
            kept.append(ch)
    return "".join(kept).replace("(", "")
