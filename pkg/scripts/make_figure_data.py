#!/usr/bin/env python3
"""Regenerate the standard coherence datasets as plot-ready CSV files.

Produces, for the canonical operating point (e_j = 0.5, e_m = 1.5,
hbar = 1):

  coherence_vs_time.csv        C(t) for |phi+>, t in [0, 10], both routes
  coherence_grid_ej.csv        C over (e_j in [0, 0.5]) x (t in [0, 10])
  coherence_grid_em.csv        C over (e_m in [0, 1.5]) x (t in [0, 10])

Everything goes through the CLI, so this doubles as an end-to-end check.
"""

import argparse
import pathlib
import sys

from tqcoh import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="data", help="output directory")
    args = parser.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    jobs = [
        ["series", "--state", "phi+", "--out", str(out / "coherence_vs_time.csv")],
        [
            "grid", "--state", "phi+", "--vary", "ej",
            "--min", "0", "--max", "0.5",
            "--out", str(out / "coherence_grid_ej.csv"),
        ],
        [
            "grid", "--state", "phi+", "--vary", "em",
            "--min", "0", "--max", "1.5",
            "--out", str(out / "coherence_grid_em.csv"),
        ],
    ]
    for job in jobs:
        code = cli.main(job)
        if code != 0:
            print(f"failed ({code}): {' '.join(job)}", file=sys.stderr)
            return code
        print(f"wrote {job[-1]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
