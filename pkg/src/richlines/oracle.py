"""Brute-force reference computations used to audit the fast paths.

The line oracle is cubic: for every point pair it scans all other points
for collinearity and emits a maximal collinear set once, keyed by its two
lowest indices.  Coordinates are rescaled axis-by-axis to integers when
possible (an invertible linear map, so collinearity is untouched), which
keeps the oracle exact and fast enough for the n <= a-few-hundred audits.
"""

from __future__ import annotations

from math import lcm

from .pointsets import PointSet


def _integerized(ps: PointSet):
    pts = ps.points
    if ps.field != "Q":
        return None
    d = ps.dim
    out = []
    for axis in range(d):
        denoms = [p[axis].denominator for p in pts]
        m = lcm(*denoms)
        out.append([int(p[axis] * m) for p in pts])
    return [tuple(out[axis][i] for axis in range(d)) for i in range(len(pts))]


def _collinear_int(p, q, s, d) -> bool:
    for i in range(d):
        ui = q[i] - p[i]
        vi = s[i] - p[i]
        for j in range(i + 1, d):
            if ui * (s[j] - p[j]) != (q[j] - p[j]) * vi:
                return False
    return True


def _collinear_generic(p, q, s, d) -> bool:
    u = [q[i] - p[i] for i in range(d)]
    v = [s[i] - p[i] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


def collinear_groups(ps: PointSet, r: int) -> set[frozenset[int]]:
    """Index sets of all maximal collinear groups of size >= r, by brute force."""
    if r < 2:
        raise ValueError("need r >= 2")
    pts = _integerized(ps)
    test = _collinear_int
    if pts is None:
        pts = list(ps.points)
        test = _collinear_generic
    n = len(pts)
    d = ps.dim
    groups: set[frozenset[int]] = set()
    for i in range(n):
        pi = pts[i]
        for j in range(i + 1, n):
            pj = pts[j]
            members = [i, j]
            for s in range(n):
                if s != i and s != j and test(pi, pj, pts[s], d):
                    members.append(s)
            if len(members) < r:
                continue
            lo = sorted(members)[:2]
            if lo == [i, j]:
                groups.add(frozenset(members))
    return groups


def rich_lines_match_oracle(ps: PointSet, r: int) -> bool:
    """Exact equality of the pair-grouping enumerator against the oracle."""
    from .incidence import rich_lines

    fast = {frozenset(line.points) for line in rich_lines(ps, r)}
    return fast == collinear_groups(ps, r)


def ap_count_oracle(ps: PointSet, r: int) -> int:
    """Count unordered r-term progressions by scanning all (start, end) pairs.

    Independent of the production counter: it fixes the first and LAST terms
    of the progression, so the stepping arithmetic is exercised differently,
    and divides the overcount instead of canonicalizing signs.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    pts = ps.points
    members = set(pts)
    n = len(pts)
    hits = 0
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            # difference = (end - start) / (r - 1) must step through members
            step = tuple((y - x) / (r - 1) for x, y in zip(pts[a], pts[b]))
            ok = True
            cur = pts[a]
            for _ in range(r - 2):
                cur = tuple(c + s for c, s in zip(cur, step))
                if cur not in members:
                    ok = False
                    break
            if ok:
                hits += 1
    # Each unordered progression is seen from both of its end orderings.
    assert hits % 2 == 0
    return hits // 2
