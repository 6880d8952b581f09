"""Affine lines and hyperplanes in canonical form.

A line is stored as (direction, base) where the direction is scaled so its
first nonzero coordinate equals 1 (the pivot) and the base is the unique
point of the line whose pivot coordinate is 0.  Two Line objects describe
the same affine line exactly when these two tuples coincide, so canonical
forms can be used directly as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Scalar

Point = tuple[Scalar, ...]


def vsub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def vadd(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def vscale(t: Scalar, p: Point) -> Point:
    return tuple(t * a for a in p)


def dot(p: Point, q: Point) -> Scalar:
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def is_zero_vector(p: Point) -> bool:
    return all(c == 0 for c in p)


def pivot_index(vec: Point) -> int:
    for i, c in enumerate(vec):
        if c != 0:
            return i
    raise ValueError("zero vector has no pivot")


def collinear(p: Point, q: Point, s: Point) -> bool:
    """Exact test that three points lie on one affine line."""
    u = vsub(q, p)
    v = vsub(s, p)
    d = len(u)
    for i in range(d):
        for j in range(i + 1, d):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


@dataclass(frozen=True)
class Line:
    """Canonical affine line, optionally carrying incident point indices.

    Equality and hashing look only at (direction, base): incidence lists
    are bookkeeping relative to one particular point set.
    """

    direction: Point
    base: Point
    points: tuple[int, ...] = field(default=(), compare=False)

    def __hash__(self):
        return hash((self.direction, self.base))

    @property
    def pivot(self) -> int:
        return pivot_index(self.direction)

    def point_at(self, t: Scalar) -> Point:
        return vadd(self.base, vscale(t, self.direction))

    def parameter_of(self, p: Point) -> Scalar:
        # direction[pivot] == 1 and base[pivot] == 0, so the parameter of a
        # point is just its pivot coordinate.
        return p[self.pivot]

    def contains(self, p: Point) -> bool:
        t = self.parameter_of(p)
        return self.point_at(t) == tuple(p)

    def with_points(self, idx) -> "Line":
        return Line(self.direction, self.base, tuple(sorted(idx)))


def canonical_line(p: Point, q: Point) -> Line:
    """The unique canonical line through two distinct points."""
    if tuple(p) == tuple(q):
        raise ValueError("identical points do not determine a line")
    raw = vsub(q, p)
    piv = pivot_index(raw)
    scale = raw[piv]
    direction = tuple(c / scale for c in raw)
    t = p[piv]
    base = tuple(a - t * b for a, b in zip(p, direction))
    return Line(direction, base)


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane {x : <x, normal> = offset} with pivot-normalized normal."""

    normal: Point
    offset: Scalar

    def __post_init__(self):
        if is_zero_vector(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def contains(self, p: Point) -> bool:
        return dot(p, self.normal) == self.offset

    def members(self, points) -> list[int]:
        return [i for i, p in enumerate(points) if self.contains(p)]


def make_hyperplane(normal: Point, offset: Scalar) -> Hyperplane:
    """Normalize so the first nonzero normal coordinate is 1."""
    piv = pivot_index(normal)
    scale = normal[piv]
    return Hyperplane(tuple(c / scale for c in normal), offset / scale)


def hyperplane_through(points: list[Point]) -> Hyperplane | None:
    """Hyperplane through d affinely independent points of C^d, else None."""
    from .linalg import Matrix

    d = len(points[0])
    if len(points) != d:
        raise ValueError("need exactly d points to span a hyperplane")
    if d == 1:
        return make_hyperplane((Fraction(1),), points[0][0])
    rows = [vsub(p, points[0]) for p in points[1:]]
    kernel = Matrix(rows).right_nullspace()
    if len(kernel) != 1:
        return None  # affinely dependent sample
    normal = kernel[0]
    return make_hyperplane(normal, dot(points[0], normal))
