#!/usr/bin/env python3
"""Sweep rich-line counts over planar and spatial grids.

Prints a table of exact |L_r| values next to the n^2/r^(d+1) and n^2/r^d
terms, and the fitted log-log slope per r; writes JSON/CSV reports next to
this script unless --out/--csv say otherwise.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from richlines.harness import ExperimentConfig, run_experiment, write_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--d", type=int, default=2)
    parser.add_argument("--sizes", default="5,10,15,20")
    parser.add_argument("--r", default="3,4,5")
    parser.add_argument("--out", default="grid_sweep.json")
    parser.add_argument("--csv", default="grid_sweep.csv")
    args = parser.parse_args()

    cfg = ExperimentConfig(
        generator={
            "kind": "grid",
            "d": args.d,
            "h": [int(h) for h in args.sizes.split(",")],
        },
        r_values=[int(r) for r in args.r.split(",")],
        pipelines=["progressions"],
    )
    report = run_experiment(cfg)
    write_report(report, args.out, args.csv)

    print(f"{'h':>4} {'n':>6} {'r':>3} {'|L_r|':>8} {'AP_r':>8} {'n^2/r^(d+1)':>14} {'ratio':>10}")
    for row in report["rows"]:
        term = row["terms"]["n2_rd1"]
        num, den = term.split("/")
        term_val = int(num) / int(den)
        ratio = row["rich_lines"] / term_val if term_val else float("nan")
        print(
            f"{row['h']:>4} {row['n']:>6} {row['r']:>3} {row['rich_lines']:>8} "
            f"{row.get('progressions', ''):>8} {term_val:>14.3f} {ratio:>10.4f}"
        )
    print("log-log slopes per r:", report["loglog_slopes"])
    print("reports:", args.out, args.csv)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
