#!/usr/bin/env python3
"""Write a reproducible three-source synthetic corpus and its manifest."""

import argparse

from arcorpus.synthetic import write_synthetic_corpus


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True, help="directory to create")
    ap.add_argument("--mb", type=float, default=50.0, help="approximate raw size in MB (10**6 bytes)")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    manifest = write_synthetic_corpus(args.out, int(args.mb * 10**6), seed=args.seed)
    print(manifest)


if __name__ == "__main__":
    main()
