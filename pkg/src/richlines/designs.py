"""Collinear tuple covers and the sparse matrices they generate.

Each rich line contributes a cover of its points by r-tuples: consecutive
disjoint blocks in line order, plus (when the point count is not a multiple
of r) one final tuple made of the last r points, which overlaps only its
predecessor.  Every tuple of collinear points is linearly dependent after
the degree r-2 monomial embedding, and those dependency coefficients become
the rows of a sparse matrix A with A * M = 0, where M stacks the embedded
points.  Support statistics (q, k, t) of A then feed exact rank bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .geometry import Line
from .linalg import Matrix
from .pointsets import PointSet, pointset_from
from .scalars import Scalar, scalar_key
from .veronese import veronese_matrix


def tuple_cover(line_points, r: int) -> list[tuple[int, ...]]:
    """Cover a line's point list (already in line order) by r-tuples.

    Properties: every point is in at least one tuple, and every pair of
    points appears together in at most two tuples.
    """
    pts = list(line_points)
    m = len(pts)
    if m < r:
        raise ValueError(f"need at least {r} points, got {m}")
    blocks = [tuple(pts[i : i + r]) for i in range(0, m - m % r, r)]
    if m % r:
        blocks.append(tuple(pts[m - r :]))
    return blocks


def dependency_coeffs(points, deg: int) -> tuple[Scalar, ...]:
    """Coefficients a with sum_j a_j * veronese(p_j, deg) = 0 for collinear input.

    For r = deg + 2 distinct collinear points the left kernel of the
    embedded matrix is exactly one dimensional with all entries nonzero;
    anything else signals a bug (or non-collinear input, which is checked
    first).  The result is scaled so its first entry is 1.
    """
    from .geometry import collinear

    pts = [tuple(p) for p in points]
    r = len(pts)
    if deg != r - 2:
        raise ValueError("tuple of r points must use embedding degree r - 2")
    for p in pts[2:]:
        if not collinear(pts[0], pts[1], p):
            raise ValueError("points are not collinear")
    ps = pointset_from(pts)
    M = veronese_matrix(ps, deg)
    kernel = M.left_nullspace()
    if len(kernel) != 1:
        raise ArithmeticError(
            f"expected a 1-dimensional dependency space, got {len(kernel)}"
        )
    alpha = kernel[0]
    if any(a == 0 for a in alpha):
        raise ArithmeticError("dependency coefficients must all be nonzero")
    return alpha


@dataclass(frozen=True)
class TupleCover:
    """Per-line r-tuple covers and their concatenation."""

    r: int
    per_line: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def all_tuples(self) -> list[tuple[int, ...]]:
        return [t for line in self.per_line for t in line]


@dataclass
class DesignMatrix:
    """Sparse dependency matrix with measured support parameters."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], Scalar]
    q: int
    k: int
    t: int
    cover: TupleCover | None = None

    def row_support(self, i: int) -> list[int]:
        return [j for (ri, j) in self.entries if ri == i]

    def to_matrix(self) -> Matrix:
        z = Fraction(0)
        data = [[z] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            data[i][j] = v
        return Matrix(data)

    def rank(self) -> int:
        return self.to_matrix().rank()

    def product_with(self, M: Matrix) -> Matrix:
        if self.cols != M.rows:
            raise ValueError("dimension mismatch")
        z = Fraction(0)
        out = [[z] * M.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            row = M.row(j)
            acc = out[i]
            for c in range(M.cols):
                acc[c] = acc[c] + v * row[c]
        return Matrix(out)


def measure_design_params(
    rows: int, cols: int, entries: dict[tuple[int, int], Scalar]
) -> tuple[int, int, int]:
    """Measured (q, k, t): max row support, min column support, max pairwise
    column support intersection."""
    row_supp = [0] * rows
    col_supp: list[set[int]] = [set() for _ in range(cols)]
    for (i, j), v in entries.items():
        if v == 0:
            continue
        row_supp[i] += 1
        col_supp[j].add(i)
    q = max(row_supp, default=0)
    k = min((len(s) for s in col_supp), default=0)
    t = 0
    for j1 in range(cols):
        s1 = col_supp[j1]
        if not s1:
            continue
        for j2 in range(j1 + 1, cols):
            inter = len(s1 & col_supp[j2])
            if inter > t:
                t = inter
    return q, k, t


def verify_design(A: DesignMatrix) -> tuple[int, int, int]:
    """Recompute (q, k, t) from the stored entries; raises on mismatch with
    the declared parameters."""
    q, k, t = measure_design_params(A.rows, A.cols, A.entries)
    if (q, k, t) != (A.q, A.k, A.t):
        raise AssertionError(
            f"declared parameters {(A.q, A.k, A.t)} but measured {(q, k, t)}"
        )
    return q, k, t


def line_order(ps: PointSet, line: Line) -> list[int]:
    """Incident indices sorted by exact line parameter (real part, then
    imaginary part)."""
    return sorted(line.points, key=lambda i: scalar_key(line.parameter_of(ps.points[i])))


def assemble_design(
    ps: PointSet, lines: list[Line], r: int
) -> tuple[DesignMatrix, Matrix]:
    """Build the dependency matrix A over all line tuple covers plus the
    embedded point matrix M, checking A * M = 0 exactly.

    Every line must be r-rich.  Rows appear in line order then block order;
    each row holds the dependency coefficients of one collinear r-tuple at
    the tuple's columns.
    """
    n = len(ps)
    deg = r - 2
    per_line = []
    entries: dict[tuple[int, int], Scalar] = {}
    row = 0
    for line in lines:
        if len(line.points) < r:
            raise ValueError("all lines must be r-rich")
        ordered = line_order(ps, line)
        blocks = tuple(tuple_cover(ordered, r))
        per_line.append(blocks)
        for block in blocks:
            alpha = dependency_coeffs([ps.points[i] for i in block], deg)
            for idx, coef in zip(block, alpha):
                entries[(row, idx)] = coef
            row += 1
    cover = TupleCover(r, tuple(per_line))
    q, k, t = measure_design_params(row, n, entries)
    A = DesignMatrix(row, n, entries, q, k, t, cover)
    M = veronese_matrix(ps, deg)
    if row and not A.product_with(M).is_zero():
        raise ArithmeticError("A * M != 0: dependency rows are inconsistent")
    return A, M


@dataclass(frozen=True)
class RankBoundReport:
    """Exact rank of a design matrix against the two support-based bounds."""

    rank: int
    n: int
    m: int
    q: int
    k: int
    t: int
    bound_columns: Fraction | None  # n - n t q^2 / k
    bound_rows: Fraction | None  # n - m t q^2 / k^2
    holds_columns: bool
    holds_rows: bool
    rank_m: int | None = None
    rank_sum_ok: bool | None = None

    @property
    def all_hold(self) -> bool:
        return self.holds_columns and self.holds_rows


def rank_bound_report(A: DesignMatrix, M: Matrix | None = None) -> RankBoundReport:
    """Check rank(A) >= n - ntq^2/k and rank(A) >= n - mtq^2/k^2 exactly.

    With k = 0 (some column empty) both bounds are vacuous and reported as
    holding.  When the embedded matrix M is supplied, also records
    rank(A) + rank(M) <= n, which is forced by A * M = 0.
    """
    rank = A.rank()
    n, m, q, k, t = A.cols, A.rows, A.q, A.k, A.t
    if k > 0:
        b1 = n - Fraction(n * t * q * q, k)
        b2 = n - Fraction(m * t * q * q, k * k)
        holds1, holds2 = rank >= b1, rank >= b2
    else:
        b1 = b2 = None
        holds1 = holds2 = True
    rank_m = None
    rank_sum_ok = None
    if M is not None:
        rank_m = M.rank()
        rank_sum_ok = rank + rank_m <= n
    return RankBoundReport(rank, n, m, q, k, t, b1, b2, holds1, holds2, rank_m, rank_sum_ok)


def random_design_matrix(
    rng: Random,
    n: int,
    target_rows: int,
    q: int,
    t_cap: int = 2,
    gaussian: bool = False,
) -> DesignMatrix:
    """Random sparse matrix with row supports of size q and pairwise column
    intersections rejected above t_cap; used to stress the rank bounds.

    Rows are drawn as random q-subsets; a draw is discarded when it would
    push some column pair past t_cap.  Extra passes guarantee every column
    is hit at least once so the measured k is positive.
    """
    if q > n:
        raise ValueError("row support cannot exceed the column count")
    pair_use: dict[tuple[int, int], int] = {}
    rows: list[tuple[int, ...]] = []

    def try_add(support) -> bool:
        support = tuple(sorted(support))
        pairs = [
            (support[a], support[b])
            for a in range(len(support))
            for b in range(a + 1, len(support))
        ]
        if any(pair_use.get(pr, 0) + 1 > t_cap for pr in pairs):
            return False
        for pr in pairs:
            pair_use[pr] = pair_use.get(pr, 0) + 1
        rows.append(support)
        return True

    attempts = 0
    while len(rows) < target_rows and attempts < 50 * target_rows:
        attempts += 1
        try_add(rng.sample(range(n), q))
    covered = {j for s in rows for j in s}
    missing = [j for j in range(n) if j not in covered]
    while missing:
        j = missing.pop()
        others = [x for x in range(n) if x != j]
        for _ in range(200):
            if try_add([j] + rng.sample(others, q - 1)):
                break
        else:
            raise RuntimeError("could not cover every column under the overlap cap")

    entries: dict[tuple[int, int], Scalar] = {}
    for i, support in enumerate(rows):
        for j in support:
            val = 0
            while val == 0:
                val = rng.randint(-5, 5)
            if gaussian:
                from .scalars import GaussianRational

                entries[(i, j)] = GaussianRational(
                    Fraction(val), Fraction(rng.randint(-3, 3))
                )
            else:
                entries[(i, j)] = Fraction(val)
    q_m, k_m, t_m = measure_design_params(len(rows), n, entries)
    return DesignMatrix(len(rows), n, entries, q_m, k_m, t_m)
