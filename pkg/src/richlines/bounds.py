"""Report-side calculators for the rich-line and progression bound formulas.

Every classical or conjectured upper bound tracked by the harness has the
shape (sum of terms) times an unknown constant, so the calculators emit the
raw terms as exact rationals and the reports publish measured/term ratios;
nothing here asserts an inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BoundReport:
    """Exact formula terms for a configuration of n points in dimension d."""

    n: int
    r: int
    d: int
    s_values: dict[int, int]
    terms: dict[str, Fraction]
    formulas: dict[str, Fraction]


def bound_terms(n: int, r: int, d: int, s_values: dict[int, int] | None = None) -> BoundReport:
    """All tracked bound terms at (n, r, d), given the flat statistics s_ell.

    s_values maps ell to the maximum number of points in an ell-flat; terms
    depending on an s_ell that was not supplied are simply omitted.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    s = dict(s_values or {})
    t: dict[str, Fraction] = {
        "n2_r3": Fraction(n * n, r**3),
        "n2_r4": Fraction(n * n, r**4),
        "n2_r5": Fraction(n * n, r**5),
        "n2_rd": Fraction(n * n, r**d),
        "n2_rd1": Fraction(n * n, r ** (d + 1)),
        "n_r": Fraction(n, r),
    }
    if 2 in s:
        t["ns2_r3"] = Fraction(n * s[2], r**3)
    if 3 in s:
        t["ns3_r4"] = Fraction(n * s[3], r**4)
    if d - 1 in s:
        t["nsd1_r2"] = Fraction(n * s[d - 1], r**2)
    flat_sum = Fraction(0)
    have_all_flats = all(ell in s for ell in range(2, d))
    for ell in range(2, d):
        if ell in s:
            flat_sum += Fraction(n * s[ell], r ** (ell + 1))
    if have_all_flats and d >= 3:
        t["flat_sum"] = flat_sum

    formulas: dict[str, Fraction] = {
        "planar_rich_lines": t["n2_r3"] + t["n_r"],
        "conjectured_rich_lines": t["n2_rd1"] + t["n_r"],
        "grid_progressions": Fraction(n * n, r**d),
    }
    if "nsd1_r2" in t:
        formulas["hyperplane_rich_lines"] = t["n2_rd"] + t["nsd1_r2"]
    if "ns2_r3" in t:
        formulas["threespace_rich_lines"] = t["n2_r4"] + t["ns2_r3"] + t["n_r"]
    if "ns2_r3" in t and "ns3_r4" in t:
        formulas["fourspace_rich_lines"] = (
            t["n2_r5"] + t["ns3_r4"] + t["ns2_r3"] + t["n_r"]
        )
    if "flat_sum" in t:
        formulas["flatwise_rich_lines"] = t["n2_rd1"] + t["flat_sum"] + t["n_r"]
    return BoundReport(n, r, d, s, t, formulas)


def ratios(measured: int, report: BoundReport) -> dict[str, Fraction | None]:
    """measured/formula for every formula with a nonzero denominator."""
    out: dict[str, Fraction | None] = {}
    for name, value in report.formulas.items():
        out[name] = Fraction(measured) / value if value != 0 else None
    return out
