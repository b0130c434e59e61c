#!/usr/bin/env python3
"""Measure cleaning throughput, overall and per transform.

Runs the full pipeline on a manifest (a synthetic one is generated when none
is given) and prints MB/s per worker, then times each enabled transform in
isolation on a sample of documents.
"""

import argparse
import json
import random
import tempfile
import timeit
from pathlib import Path
from time import perf_counter

from arcorpus.charset import build_default_charset
from arcorpus.config import CleanConfig
from arcorpus.pipeline import clean_text, parse_manifest, run_pipeline
from arcorpus.synthetic import synthetic_document, write_synthetic_corpus
from arcorpus.transforms import TRANSFORMS


def per_transform(n_docs: int, seed: int) -> None:
    cfg, charset = CleanConfig(), build_default_charset()
    clean_text("warm up © 😀")
    rng = random.Random(seed)
    docs = [synthetic_document(rng, 2400) for _ in range(n_docs)]
    mb = sum(len(d.encode()) for d in docs) / 10**6
    total = 0.0
    for name in cfg.enabled_transforms:
        t = TRANSFORMS[name]
        dt = min(timeit.repeat(lambda: [t.apply(d, cfg, charset) for d in docs], number=1, repeat=3))
        docs = [t.apply(d, cfg, charset) for d in docs]
        total += dt
        print(f"  {name:<22} {dt * 1000:8.1f} ms  {mb / dt:8.1f} MB/s")
    print(f"  {'chain':<22} {total * 1000:8.1f} ms  {mb / total:8.1f} MB/s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--manifest", help="existing manifest; default is a fresh synthetic corpus")
    ap.add_argument("--mb", type=float, default=20.0, help="synthetic corpus size when no manifest is given")
    ap.add_argument("--workers", type=int, nargs="+", default=[1])
    ap.add_argument("--sample-docs", type=int, default=300)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        manifest_path = Path(args.manifest) if args.manifest else write_synthetic_corpus(Path(tmp) / "data", int(args.mb * 10**6))
        manifest = parse_manifest(manifest_path.read_bytes(), base_dir=manifest_path.parent)
        for w in args.workers:
            out = Path(tmp) / f"out{w}"
            t0 = perf_counter()
            run_pipeline(manifest, None, out, workers=w)
            elapsed = perf_counter() - t0
            raw = json.loads((out / "run.json").read_text(encoding="utf-8"))["total"]["bytes_raw"]
            print(f"workers={w}: {raw / 10**6:.1f} MB in {elapsed:.1f} s = {raw / 10**6 / elapsed:.2f} MB/s ({raw / 10**6 / elapsed / w:.2f} per worker)")
    print("per transform:")
    per_transform(args.sample_docs, seed=0)


if __name__ == "__main__":
    main()
