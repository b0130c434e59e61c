"""Published per-source statistics used as report fixtures.

Each table is stored with the totals exactly as printed so that report
arithmetic can be checked against them. Sizes given in GB are converted to
bytes with 1 GB = 10**9 bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal

from .stats import CorpusStats, SourceStats


@dataclass(frozen=True)
class TableFixture:
    title: str
    columns: tuple[str, ...]  # subset of documents/tokens/terms/bytes_raw/bytes_clean
    rows: tuple[tuple, ...]  # (source, *values)
    printed_total: tuple

    def stats(self) -> CorpusStats:
        out = CorpusStats()
        for name, *values in self.rows:
            out.sources[name] = SourceStats.from_counts(**dict(zip(self.columns, values)))
        return out


BILLION_WORDS = TableFixture(
    "1.5 billion words corpus",
    ("documents", "terms"),
    (
        ("Alittihad", 349342, 932628),
        ("Echorouk-Online", 139732, 543799),
        ("Alriyadh", 858188, 1451320),
        ("Alyaum", 888068, 1319996),
        ("Tishreen", 314597, 905169),
        ("Alqabas", 817274, 1260511),
        ("Almustaqbal", 446873, 982765),
        ("Almasry-alyoum", 291723, 760511),
        ("Youm-7", 1025027, 1020444),
        ("Saba-News", 92149, 255098),
    ),
    (5222973, 9432241),
)

OSIAN = TableFixture(
    "OSIAN crawled web-domains",
    ("documents",),
    (
        ("International", 693629),
        ("Middle-east", 366211),
        ("Algeria", 588514),
        ("Australia", 4614),
        ("Canada", 30135),
        ("China", 1365),
        ("Egypt", 85351),
        ("France", 74718),
        ("Iran", 344011),
        ("Iraq", 28248),
        ("Germany", 117261),
        ("Jordon", 49461),
        ("Morocco", 188045),
        ("Palestine", 81495),
        ("Qatar", 8986),
        ("Russia", 57238),
        ("Saudi-Arabia", 1512),
        ("Sweden", 33790),
        ("Syria", 36542),
        ("Tunisia", 495674),
        ("Turkey", 76638),
        ("UAE", 25081),
        ("UK", 10686),
        ("USA", 113557),
    ),
    (3512762,),
)

ARABIC_NEWS = TableFixture(
    "Arabic News corpus",
    ("documents", "tokens", "terms"),
    (
        ("BBC", 212271, 1764796, 1076526),
        ("RT", 368920, 3411451, 2080985),
        ("Al-Jazeera", 249106, 1525372, 930477),
        ("EuroNews", 46468, 517227, 315508),
        ("CNN", 30338, 317260, 193529),
    ),
    (907103, 7536106, 4597025),
)

OSAC = TableFixture(
    "OSAC corpus",
    ("documents", "tokens", "terms"),
    (
        ("BBC", 4763, 1860786, 106733),
        ("CNN", 5070, 2241348, 144460),
        ("OSAC", 22429, 18183511, 449600),
    ),
    (32262, 22285645, 700793),
)

TASHKEELA = TableFixture(
    "Tashkeela corpus",
    ("tokens",),
    (
        ("Shamela-97-Books", 74762008),
        ("Modern-Books-20", 398911),
        ("Web-crawl", 461283),
        ("Manually-diacritized", 7701),
    ),
    (75629903,),
)


def _gb(s: str) -> int:
    return int(Decimal(s) * 10**9)


# The printed totals of this table are not the sums of its rows
# (92,235 documents, 13,409.445 GB raw and 526.76 GB clean by summation).
SOURCE_VOLUMES = TableFixture(
    "raw and clean sources",
    ("documents", "bytes_raw", "bytes_clean"),
    tuple(
        (name, docs, _gb(raw), _gb(clean))
        for name, docs, raw, clean in (
            ("ArabicWeb16", 3005, "12000.00", "99.80"),
            ("OSCAR", 46, "80.07", "76.07"),
            ("CC", 25, "1200.00", "250.00"),
            ("1.5B-Words", 10, "16.50", "15.00"),
            ("OSIAN", 24, "4.70", "4.50"),
            ("Arabic-Wikipedia", 12, "21.20", "6.60"),
            ("English-Wikipedia-translated", 112, "22.00", "13.00"),
            ("MGB-2", 1, "1.30", "1.20"),
            ("Arabic-Wiki-Books", 512, "5.70", "5.50"),
            ("Arabic-News-Ajdir", 203, "1.816", "1.80"),
            ("OSAC", 32262, "0.29", "0.27"),
            ("CC-100", 1, "28.00", "26.00"),
            ("Daypop-News", 1, "0.89", "0.86"),
            ("Tashkeela", 397, "1.493", "1.34"),
            ("KSUCCA", 410, "0.44", "0.44"),
            ("NQ-SQuAD", 58, "0.333", "0.32"),
            ("EAPCOUNT-Amara", 17455, "9.55", "9.09"),
            ("ArSAS-Arabic-Tweets", 3, "0.770", "0.76"),
            ("OpenITI", 7145, "13.85", "13.00"),
            ("Arabic-Books", 462, "0.234", "0.22"),
            ("Hadith-Books", 18, "0.10", "0.90"),
            ("Arabic-Poetry", 30073, "0.209", "0.09"),
        )
    ),
    (92218, _gb("13000"), _gb("501.42")),
)

TABLES = {
    "billion-words": BILLION_WORDS,
    "osian": OSIAN,
    "arabic-news": ARABIC_NEWS,
    "osac": OSAC,
    "tashkeela": TASHKEELA,
    "volumes": SOURCE_VOLUMES,
}

# (source name, dialect, domain) for the 22 corpus sources
SOURCES = (
    ("ArabicWeb16", "Multi-dialect", "Cross"),
    ("OSCAR", "MSA & Egyptian", "Cross"),
    ("CC", "MEGLN", "Cross"),
    ("1.5B-Words", "MEGLN", "News"),
    ("OSIAN", "Multi-dialect", "News"),
    ("Arabic-Wikipedia", "MSA & Egyptian", "Cross"),
    ("English-Wikipedia-translated", "MSA", "Cross"),
    ("MGB-2", "MEGLN", "News"),
    ("Arabic-Wiki-Books", "MSA", "Education"),
    ("Arabic-News-Ajdir", "MSA", "News"),
    ("OSAC", "Multi-dialect", "News"),
    ("CC-100", "MSA", "Cross"),
    ("Daypop-News", "MSA", "News"),
    ("Tashkeela", "MEGLN & CA", "Education"),
    ("KSUCCA", "CA", "Education"),
    ("NQ-SQuAD", "MSA", "Cross"),
    ("EAPCOUNT-Amara", "MSA", "Cross"),
    ("ArSAS-Arabic-Tweets", "MSA", "Social"),
    ("OpenITI", "CA", "Religion"),
    ("Arabic-Books", "Multi-dialect", "Education"),
    ("Hadith-Books", "CA", "Religion"),
    ("Arabic-Poetry", "Multi-dialect", "Culture"),
)

_FORMAT_OF = {"CC-100": "doc-per-block"}


def sources_manifest(data_dir: str = "data") -> bytes:
    """A manifest declaring all 22 sources with their dialect and domain."""
    doc = {
        "sources": [
            {
                "name": name,
                "path": f"{data_dir}/{name}.{'txt' if name in _FORMAT_OF else 'jsonl'}",
                "format": _FORMAT_OF.get(name, "jsonl"),
                "dialect": dialect,
                "domain": domain,
            }
            for name, dialect, domain in SOURCES
        ]
    }
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")
