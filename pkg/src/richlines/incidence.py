"""Rich-line enumeration, incidence graphs, progression counting.

Line enumeration groups all point pairs by an exact line key.  For a pair
(p, q) the key is the sign-canonical primitive direction together with the
translation invariant p_i * d_piv - p_piv * d_i, which is constant along
the line; integer configurations get a pure-integer fast path and general
configurations use field arithmetic.  Either way the grouping is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .geometry import (
    Hyperplane,
    Line,
    Point,
    canonical_line,
    hyperplane_through,
    make_hyperplane,
    vsub,
)
from .linalg import Matrix
from .pointsets import PointSet
from .scalars import sign_positive


def _int_coords(ps: PointSet):
    if ps.field != "Q":
        return None
    out = []
    for p in ps.points:
        row = []
        for c in p:
            if c.denominator != 1:
                return None
            row.append(c.numerator)
        out.append(tuple(row))
    return out


def _int_pair_key(p, q, d):
    diff = [q[t] - p[t] for t in range(d)]
    g = 0
    for c in diff:
        g = gcd(g, c)
    piv = 0
    while diff[piv] == 0:
        piv += 1
    if diff[piv] < 0:
        g = -g
    prim = [c // g for c in diff]
    dp = prim[piv]
    pp = p[piv]
    inv = [p[t] * dp - pp * prim[t] for t in range(d)]
    return (*prim, *inv)


def _field_pair_key(p, q, d):
    diff = [q[t] - p[t] for t in range(d)]
    piv = 0
    while diff[piv] == 0:
        piv += 1
    scale = diff[piv]
    prim = [c / scale for c in diff]
    pp = p[piv]
    base = [p[t] - pp * prim[t] for t in range(d)]
    return (*prim, *base)


def _group_pairs_int_2d(pts, groups):
    # hot loop: primitive direction (sign-canonical) plus the translation
    # invariant x dy - y dx identify a planar line with three machine ints
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        for j in range(i + 1, n):
            x1, y1 = pts[j]
            dx = x1 - x0
            dy = y1 - y0
            if dx < 0 or (dx == 0 and dy < 0):
                dx = -dx
                dy = -dy
                g = gcd(dx, dy)
            else:
                g = gcd(dx, dy)
            if g > 1:
                dx //= g
                dy //= g
            key = (dx, dy, x0 * dy - y0 * dx)
            bucket = groups.get(key)
            if bucket is None:
                groups[key] = [i, j]
            else:
                bucket.append(i)
                bucket.append(j)


def rich_lines(ps: PointSet, r: int) -> list[Line]:
    """All lines containing at least r points of V, with full incidence lists.

    Output is sorted by (first incident index, second incident index) which
    is deterministic for a fixed point order.
    """
    if r < 2:
        raise ValueError("richness threshold must be at least 2")
    d = ps.dim
    n = len(ps)
    ints = _int_coords(ps)
    groups: dict[tuple, list[int]] = {}
    if ints is not None and d == 2:
        _group_pairs_int_2d(ints, groups)
    else:
        if ints is not None:
            key_fn, pts = _int_pair_key, ints
        else:
            key_fn, pts = _field_pair_key, list(ps.points)
        for i in range(n):
            pi = pts[i]
            for j in range(i + 1, n):
                key = key_fn(pi, pts[j], d)
                bucket = groups.get(key)
                if bucket is None:
                    groups[key] = [i, j]
                else:
                    bucket.append(i)
                    bucket.append(j)
    out = []
    if ints is not None and d == 2:
        for key, members in groups.items():
            if len(members) < r * (r - 1):  # a k-point line has k(k-1) entries
                continue
            idx = sorted(set(members))
            if len(idx) < r:
                continue
            dx, dy, cross = key
            if dx:
                direction = (Fraction(1), Fraction(dy, dx))
                base = (Fraction(0), Fraction(-cross, dx))
            else:
                direction = (Fraction(0), Fraction(1))
                base = (Fraction(cross, dy), Fraction(0))
            out.append(Line(direction, base, tuple(idx)))
    else:
        for members in groups.values():
            if len(members) < r * (r - 1):
                continue
            idx = sorted(set(members))
            if len(idx) < r:
                continue
            line = canonical_line(ps.points[idx[0]], ps.points[idx[1]])
            out.append(line.with_points(idx))
    out.sort(key=lambda L: L.points)
    return out


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite incidence structure between point indices and line indices."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def left_degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.left}
        for a, _ in self.edges:
            deg[a] += 1
        return deg

    def right_degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.right}
        for _, b in self.edges:
            deg[b] += 1
        return deg


def incidences(ps: PointSet, lines: list[Line]) -> IncidenceGraph:
    """Incidence graph of V against a line family, with exact membership checks."""
    edges = []
    for li, line in enumerate(lines):
        for pi in line.points:
            if pi < 0 or pi >= len(ps):
                raise ValueError(f"line {li} references invalid point index {pi}")
            if not line.contains(ps.points[pi]):
                raise ValueError(f"point {pi} is not on line {li}")
            edges.append((pi, li))
    return IncidenceGraph(
        tuple(range(len(ps))), tuple(range(len(lines))), tuple(edges)
    )


@dataclass(frozen=True)
class APRecord:
    """Unordered r-term progression: start, sign-canonical difference, length."""

    start: Point
    diff: Point
    length: int

    def terms(self):
        cur = self.start
        for _ in range(self.length):
            yield cur
            cur = tuple(a + b for a, b in zip(cur, self.diff))


def count_aps(ps: PointSet, r: int) -> tuple[int, list[APRecord]]:
    """Count unordered r-term arithmetic progressions inside V.

    Each progression {y, y+x, ..., y+(r-1)x} is counted once: the difference
    is canonicalized so its first nonzero coordinate is positive (positive
    real part, then positive imaginary part, in the Gaussian case).  Pairs
    (y, y+x) are scanned as the first two terms and the remaining terms are
    membership-tested.
    """
    if r < 2:
        raise ValueError("progression length must be at least 2")
    pts = ps.points
    members = set(pts)
    n = len(pts)
    records = []
    for i in range(n):
        for j in range(i + 1, n):
            diff = vsub(pts[j], pts[i])
            first = next(c for c in diff if c != 0)
            if sign_positive(first):
                start, step = pts[i], diff
            else:
                start, step = pts[j], tuple(-c for c in diff)
            ok = True
            cur = tuple(a + 2 * s for a, s in zip(start, step))
            for _ in range(r - 2):
                if cur not in members:
                    ok = False
                    break
                cur = tuple(a + s for a, s in zip(cur, step))
            if ok:
                records.append(APRecord(start, step, r))
    return len(records), records


def lift_progressions(ps: PointSet, r: int):
    """Map each r-term progression of V to a line of {0..r-1} x V.

    The progression (y, x) becomes the line through (0, y) with direction
    (1, x); the mapping is injective and each image line is exactly r-rich
    with respect to the lifted configuration.  Returns (lifted point set,
    progression records, lines).
    """
    from .pointsets import index_prefix
    from .scalars import coerce

    lifted = index_prefix(ps, r)
    lookup = lifted.index()
    _, records = count_aps(ps, r)
    lines = []
    for rec in records:
        direction = (coerce(1, ps.field),) + rec.diff
        base = (coerce(0, ps.field),) + rec.start
        incident = []
        for i, term in enumerate(rec.terms()):
            incident.append(lookup[(coerce(i, ps.field),) + term])
        lines.append(Line(direction, base, tuple(sorted(incident))))
    return lifted, records, lines


def max_hyperplane_subset(ps: PointSet) -> tuple[int, Hyperplane]:
    """Largest subset of V on one affine hyperplane, by exhaustive search.

    Scans all d-point subsets that span a hyperplane; if none spans (the
    whole set is affinely degenerate) any hyperplane containing the affine
    span is returned together with |V|.
    """
    d = ps.dim
    pts = ps.points
    n = len(pts)
    if d == 1:
        return 1, make_hyperplane((Fraction(1),), pts[0][0])
    best: tuple[int, Hyperplane] | None = None
    seen: set[tuple] = set()
    if n >= d:
        for combo in itertools.combinations(range(n), d):
            plane = hyperplane_through([pts[i] for i in combo])
            if plane is None:
                continue
            key = (plane.normal, plane.offset)
            if key in seen:
                continue
            seen.add(key)
            count = sum(1 for p in pts if plane.contains(p))
            if best is None or count > best[0]:
                best = (count, plane)
    if best is not None:
        return best
    # Affinely degenerate: the span misses a full hyperplane, so take any
    # normal vector orthogonal to the span.
    rows = [vsub(p, pts[0]) for p in pts[1:]]
    kernel = Matrix(rows).right_nullspace() if rows else Matrix([[Fraction(0)] * d]).right_nullspace()
    normal = kernel[0]
    from .geometry import dot

    return n, make_hyperplane(normal, dot(pts[0], normal))
