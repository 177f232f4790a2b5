#!/usr/bin/env python3
"""Build a small demonstration repository from synthetic datasets.

Generates a handful of multi-label datasets with different label-imbalance
profiles, writes each in a different interchange format, then runs the full
repository build (JSON records, full downloads, the 45-archive partition
matrix per dataset and, when the catalog bundle is installed, the site page).

    python scripts/make_demo_repo.py --out demo_repo
    python scripts/make_demo_repo.py --out demo_repo --serve 8000
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from mltk import Format, MLDataset, RepoConfig, build_repository, serve_directory, write
from mltk.dataset import AttributeMeta, LABEL, NUMERIC
from mltk.repo import webassets_root


def synth_dataset(name: str, seed: int, n: int, k: int, f: int, skew: float) -> MLDataset:
    """Random dataset whose label frequencies fall off geometrically with
    base `skew`; skew near 1 is balanced, near 0 heavily imbalanced."""
    rng = np.random.default_rng(seed)
    probs = 0.55 * (skew ** np.arange(k))
    labels = (rng.random((n, k)) < probs).astype(np.int8)
    labels[0] = 1  # keep every label represented at least once
    features = np.round(rng.normal(loc=0.0, scale=2.0, size=(n, f)), 5)
    label_names = tuple(f"{name}_l{j + 1}" for j in range(k))
    attributes = tuple(
        AttributeMeta(f"x{i + 1}", NUMERIC) for i in range(f)
    ) + tuple(AttributeMeta(ln, LABEL) for ln in label_names)
    return MLDataset(
        name=name,
        features=features,
        labels=labels,
        attributes=attributes,
        label_names=label_names,
        citation=(
            f"@misc{{{name}2024,\n"
            f"  title={{Synthetic multi-label sample {name}}},\n"
            f"  year={{2024}}\n}}"
        ),
    )


DEMO = (
    # name, seed, n, k, f, skew, source format
    ("emoszine", 11, 120, 6, 8, 0.95, Format.MULAN),
    ("birdcalls", 23, 90, 4, 5, 0.55, Format.MEKA),
    ("newsbits", 37, 150, 5, 3, 0.35, Format.CSV),
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("demo_repo"))
    parser.add_argument("--keep-input", action="store_true",
                        help="leave the generated source files next to the output")
    parser.add_argument("--no-partitions", action="store_true")
    parser.add_argument("--serve", type=int, default=None, metavar="PORT")
    args = parser.parse_args(argv)

    src = args.out / "_input"
    for name, seed, n, k, f, skew, fmt in DEMO:
        ds = synth_dataset(name, seed, n, k, f, skew)
        paths = write(ds, [fmt], out_dir=src, overwrite=True)
        data = next(p for p in paths if not p.name.endswith("_labels.csv"))
        print(f"generated {name}: n={n} k={k} f={f} -> {data}")

    config = RepoConfig(title="Demo multi-label repository", partition=not args.no_partitions)
    site = webassets_root() is not None
    manifest = build_repository(src, args.out, config, site=site)
    print(f"built {len(manifest.records)} datasets into {args.out}"
          f" ({'with' if site else 'without'} catalog page)")

    if not args.keep_input:
        for path in sorted(src.iterdir()):
            path.unlink()
        src.rmdir()

    if args.serve is not None:
        print(f"serving {args.out} at http://127.0.0.1:{args.serve}/ (Ctrl-C stops)")
        try:
            serve_directory(args.out, args.serve)
        except KeyboardInterrupt:
            pass
    return 0


if __name__ == "__main__":
    sys.exit(main())
