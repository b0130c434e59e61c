#!/usr/bin/env python3
"""Render the stored per-source tables and compare computed with printed totals."""

import argparse

from arcorpus.fixtures import TABLES
from arcorpus.stats import report_rows, render_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=("tsv", "markdown"), default="markdown")
    args = ap.parse_args()
    for key, fx in TABLES.items():
        print(f"## {fx.title}\n")
        print(render_report(fx.stats(), args.format).decode("utf-8"))
        rows = report_rows(fx.stats())
        total = dict(zip(rows[0], rows[-1]))
        cols = {"bytes_raw": "raw_bytes", "bytes_clean": "clean_bytes"}
        computed = tuple(total[cols.get(c, c)] for c in fx.columns)
        printed = tuple(str(v) for v in fx.printed_total)
        verdict = "matches" if computed == printed else "DIFFERS from"
        print(f"computed total {computed} {verdict} printed {printed}\n")


if __name__ == "__main__":
    main()
