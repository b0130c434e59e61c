import unicodedata

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arcorpus.config import CleanConfig
from arcorpus.transforms import (
    TRANSFORMS,
    collapse_elongation,
    normalize_digits,
    normalize_hamza,
    normalize_punctuation,
    remove_noisy,
    remove_slash_hyphen,
    strip_tatweel,
)

from conftest import mixed_text

CHAR_TRANSFORMS = [
    "strip_tatweel",
    "collapse_elongation",
    "normalize_hamza",
    "normalize_digits",
    "normalize_punctuation",
    "remove_slash_hyphen",
    "remove_noisy",
]


# --- strip_tatweel --------------------------------------------------------


@pytest.mark.parametrize("raw,want", [("العـــربية", "العربية"), ("", ""), ("abc", "abc"), ("ـــ", "")])
def test_strip_tatweel(raw, want):
    assert strip_tatweel(raw) == want


@given(st.text())
def test_strip_tatweel_removes_only_tatweel(s):
    out = strip_tatweel(s)
    assert "ـ" not in out
    assert out == "".join(c for c in s if c != "ـ")


# --- collapse_elongation --------------------------------------------------


@pytest.mark.parametrize(
    "raw,want",
    [
        ("ههههه", "هه"),
        ("هه", "هه"),
        ("111111", "111111"),
        ("!!!!", "!!!!"),
        ("ممممتاز جدااا", "ممتاز جداا"),
        ("aaaa", "aaaa"),
        ("هههههَ", "ههَ"),
    ],
)
def test_collapse_elongation(raw, want):
    assert collapse_elongation(raw) == want


def test_collapse_elongation_max_run():
    assert collapse_elongation("ههههه", max_run=1) == "ه"
    assert collapse_elongation("ههههه", max_run=4) == "هههه"
    assert collapse_elongation("ههههه", max_run=5) == "ههههه"


@given(st.text(alphabet="هاب1!ـ ", max_size=40), st.integers(1, 4))
def test_collapse_elongation_bounds_runs(s, k):
    out = collapse_elongation(s, max_run=k)
    for ch in "هاب":
        assert ch * (k + 1) not in out
    assert collapse_elongation(out, max_run=k) == out


# --- normalize_hamza ------------------------------------------------------


@pytest.mark.parametrize(
    "raw,want",
    [
        ("أ", "أ"),
        ("ؤ", "ؤ"),
        ("ئ", "ئ"),
        ("إ", "إ"),
        ("أ", "أ"),
        ("بٔ", "ب"),
        ("ٔ", ""),
        ("وٕ", "و"),
        ("أَ", "أَ"),
    ],
)
def test_normalize_hamza(raw, want):
    assert normalize_hamza(raw) == want


def test_hamza_agrees_with_nfc_for_plain_pairs():
    # independent check: Unicode canonical composition of the four pairs
    for carrier, mark in [("ا", "ٔ"), ("و", "ٔ"), ("ي", "ٔ"), ("ا", "ٕ")]:
        assert normalize_hamza(carrier + mark) == unicodedata.normalize("NFC", carrier + mark)


@given(st.text(alphabet="اويبٕٔأَُ x", max_size=30))
def test_hamza_output_has_no_combining_hamza(s):
    out = normalize_hamza(s)
    assert "ٔ" not in out and "ٕ" not in out
    assert len(out) <= len(s)


# --- normalize_digits -----------------------------------------------------


def test_digit_map():
    assert normalize_digits("٠١٢٣٤٥٦٧٨٩") == "0123456789"
    assert normalize_digits("۰۱۲۳۴۵۶۷۸۹") == "0123456789"
    assert normalize_digits("٢٠٢١") == "2021"
    assert normalize_digits("۵") == "5"
    assert normalize_digits("2021") == "2021"


def test_digit_map_matches_unicode_decimal_values():
    for block in (0x0660, 0x06F0):
        for i in range(10):
            ch = chr(block + i)
            assert normalize_digits(ch) == str(unicodedata.decimal(ch))


@given(st.text())
def test_digits_identity_elsewhere(s):
    out = normalize_digits(s)
    assert len(out) == len(s)
    for a, b in zip(s, out):
        if a != b:
            assert "٠" <= a <= "٩" or "۰" <= a <= "۹"
        if a.isascii() and a.isdigit():
            assert a == b


# --- normalize_punctuation ------------------------------------------------


@pytest.mark.parametrize(
    "raw,want",
    [
        ("ماذا?", "ماذا؟"),
        ("أ، ب؛ ج", "أ ب ج"),
        ("نعم!", "نعم!"),
        ("a,b;c", "abc"),
        ("«قال»: ...", "قال ..."),
        ("[link]", "[link]"),
        ("[x]", "x"),
    ],
)
def test_normalize_punctuation(raw, want):
    assert normalize_punctuation(raw) == want


def test_kept_set_is_configurable():
    cfg = CleanConfig(kept_punctuation=frozenset({"،"}))
    assert normalize_punctuation("أ، ب. ج?", cfg) == "أ، ب ج"


@given(mixed_text)
def test_punctuation_output_subset_of_kept(s):
    out = normalize_punctuation(s)
    for tag in ("[link]", "[mail]", "[phone]"):
        out = out.replace(tag, "")
    assert {c for c in out if unicodedata.category(c).startswith("P")} <= {"!", ".", "؟"}


# --- remove_slash_hyphen --------------------------------------------------


@pytest.mark.parametrize(
    "raw,want",
    [("a/-b", "ab"), ("a/b", "a/b"), ("/-/-", ""), ("a-b", "a-b"), ("//--", ""), ("-/", "-/"), ("/ -", "/ -")],
)
def test_remove_slash_hyphen(raw, want):
    assert remove_slash_hyphen(raw) == want


@given(st.text(alphabet="/-ab", max_size=30))
def test_remove_slash_hyphen_leaves_no_pair(s):
    assert "/-" not in remove_slash_hyphen(s)


# --- remove_noisy ---------------------------------------------------------


@pytest.mark.parametrize(
    "raw,want",
    [
        ("مرحبا © بكم", "مرحبا  بكم"),
        ("انظر [link] هنا", "انظر [link] هنا"),
        ("جميل 😀", "جميل 😀"),
        ("abc عربي 123", " عربي 123"),
        ("[phone] [mail]", "[phone] [mail]"),
        ("[linkx]", ""),
    ],
)
def test_remove_noisy(raw, want):
    assert remove_noisy(raw) == want


def test_remove_noisy_without_emoji():
    assert remove_noisy("جميل 😀", config=CleanConfig(preserve_emoji=False)) == "جميل "


# --- shared properties ----------------------------------------------------


@pytest.mark.parametrize("name", CHAR_TRANSFORMS)
@given(s=mixed_text)
def test_idempotent(name, s):
    t = TRANSFORMS[name]
    once = t(s)
    assert t(once) == once


@pytest.mark.parametrize("name", CHAR_TRANSFORMS)
@given(s=mixed_text)
def test_length_monotone(name, s):
    assert len(TRANSFORMS[name](s)) <= len(s)


@pytest.mark.parametrize("name", CHAR_TRANSFORMS)
@given(s=st.text())
def test_total_and_deterministic(name, s):
    assert TRANSFORMS[name](s) == TRANSFORMS[name](s)


def _slash_reference(text):
    out = []
    for ch in text:
        if ch == "-" and out and out[-1] == "/":
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


@given(st.text(alphabet="/-a", max_size=60))
def test_slash_hyphen_matches_stack_reference(s):
    assert remove_slash_hyphen(s) == _slash_reference(s)


@pytest.mark.parametrize("depth", [1, 4, 5, 100, 10000])
def test_slash_hyphen_deep_nesting(depth):
    assert remove_slash_hyphen("a" + "/" * depth + "-" * depth + "b") == "ab"


def _punct_reference(text, kept=frozenset({"!", ".", "؟"})):
    mapping = {"?": "؟", ",": "،", ";": "؛"}
    out = []
    for ch in text:
        ch = mapping.get(ch, ch)
        if unicodedata.category(ch).startswith("P") and ch not in kept:
            continue
        out.append(ch)
    return "".join(out)


@given(st.text())
def test_punctuation_matches_reference(s):
    # no tag literals in plain text, so the whole string is in scope
    if "[" not in s:
        assert normalize_punctuation(s) == _punct_reference(s)
