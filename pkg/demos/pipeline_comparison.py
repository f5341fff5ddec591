"""Run the full 12-way comparison (3 spaces x 2 modes x 2 trainers) end to end.

Run: python demos/pipeline_comparison.py
Uses the command-line entry points in-process; artifacts land in
demos/output/pipeline_comparison/.
"""

import json
import shutil
from pathlib import Path

from skinmap.cli import main as skinmap_main

OUT = Path(__file__).parent / "output" / "pipeline_comparison"

SPEC = {
    "images": 4,
    "width": 64,
    "height": 64,
    "skin_fraction": 0.5,
    "skin": {
        "weights": [0.6, 0.4],
        "means": [[210, 150, 115], [170, 115, 90]],
        "covariances": [120, 160],
    },
    "background": {
        "weights": [0.5, 0.5],
        "means": [[70, 100, 160], [90, 140, 80]],
        "covariances": [250, 250],
    },
}


def run(argv):
    code = skinmap_main([str(a) for a in argv])
    if code != 0:
        raise SystemExit(f"step failed with exit code {code}: {argv}")


def main():
    if OUT.exists():
        shutil.rmtree(OUT)
    OUT.mkdir(parents=True)
    spec = OUT / "spec.json"
    spec.write_text(json.dumps(SPEC, indent=2))

    print("1. synthesizing train and test sets")
    run(["synth", "--spec", spec, "--out", OUT / "train", "--seed", 1000])
    run(["synth", "--spec", spec, "--out", OUT / "test", "--seed", 2000])

    print("2. training and evaluating all 12 configurations")
    run(["compare",
         "--train-manifest", OUT / "train" / "manifest.txt",
         "--test-manifest", OUT / "test" / "manifest.txt",
         "--seed", 5, "--out", OUT / "cmp"])

    print("\nranked report (cmp/report.csv):")
    for line in (OUT / "cmp" / "report.csv").read_text().splitlines():
        print("  " + line)

    print(f"\nper-configuration models, curves and overlay charts -> {OUT / 'cmp'}")
    print("open cmp/plots/overlay_em_all_spaces.svg for the cross-space view")


if __name__ == "__main__":
    main()
