#!/usr/bin/env python3
"""Walk the hyperplane-extraction pipeline and print its audit trail.

Runs the extraction on two pasted planar grids (where a full copy is the
right answer) and prints every recorded stage quantity: incidence counts,
refinement survivors, the selected degree band, the clamped richness floor,
the vanishing polynomial, flat/joint tallies, and the final subset check.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from richlines.incidence import max_hyperplane_subset
from richlines.pointsets import pasted_grids
from richlines.serialization import dumps_json
from richlines.vanishing import extract_hyperplane


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--copies", type=int, default=2)
    parser.add_argument("--h", type=int, default=4)
    parser.add_argument("--r", type=int, default=4)
    parser.add_argument("--json", action="store_true", help="dump the raw trace JSON")
    args = parser.parse_args()

    ps = pasted_grids(3, 2, args.copies, args.h)
    out = extract_hyperplane(ps, args.r)
    tr = out.trace

    print(f"configuration: {args.copies} pasted {args.h}x{args.h} grids, n = {tr.n}")
    print(f"rich lines (r={tr.r}): {tr.line_count}, incidences: {tr.incidence_count}")
    print(f"degree floor k = {tr.base_degree_floor}")
    print(
        f"first refinement: {tr.refined_points} points, {tr.refined_lines} lines, "
        f"{tr.refined_incidences} incidences"
    )
    print(f"degree bands (index -> incidences): {tr.band_weights}; selected {tr.band_index}")
    print(
        f"second refinement: {tr.second_points} points, {tr.second_lines} lines, "
        f"{tr.second_incidences} incidences"
    )
    print(
        f"richness floor: raw {tr.rich_floor_raw}, used {tr.rich_floor}"
        f"{' (clamped)' if tr.clamped else ''}; band degree floor k0 = {tr.degree_floor}"
    )
    print(f"vanishing polynomial degree: {tr.poly_degree}; {out.polynomial}")
    print(f"surviving lines killed by it: {tr.qualifying_lines}")
    print(f"flat points: {tr.flat_points}, joints: {tr.joint_points}")
    if out.found:
        print(f"witness point index: {tr.chosen_point}")
        print(f"hyperplane: {out.hyperplane}")
        print(
            f"subset: {tr.subset_size} points "
            f"(floor {tr.subset_floor}, satisfied: {tr.subset_floor_ok})"
        )
        best, _ = max_hyperplane_subset(ps)
        print(f"exhaustive maximum for comparison: {best}")
    else:
        print(f"no hyperplane: {tr.outcome}")
    print(f"guarantee regime: {tr.guaranteed_regime} (threshold {tr.hypothesis_line_count})")
    if args.json:
        print(dumps_json(tr))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
