from fractions import Fraction
from random import Random

import pytest

from richlines.pointsets import PointSet, pointset_from


def circle_points() -> PointSet:
    """The 12 integer points of x^2 + y^2 = 25."""
    raw = [
        (3, 4), (4, 3), (5, 0), (4, -3), (3, -4), (0, -5),
        (-3, -4), (-4, -3), (-5, 0), (-4, 3), (-3, 4), (0, 5),
    ]
    return pointset_from([(Fraction(a), Fraction(b)) for a, b in raw])


def coordinate_planes_config() -> PointSet:
    """Union of the three axis-aligned 3x3 grids over {-1,0,1} in C^3."""
    pts = set()
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            pts.add((Fraction(0), Fraction(a), Fraction(b)))
            pts.add((Fraction(a), Fraction(0), Fraction(b)))
            pts.add((Fraction(a), Fraction(b), Fraction(0)))
    return pointset_from(sorted(pts))


def random_integer_pointset(rng: Random, d: int, n: int, span: int) -> PointSet:
    pts = set()
    guard = 0
    while len(pts) < n and guard < 100 * n:
        guard += 1
        pts.add(tuple(Fraction(rng.randint(0, span)) for _ in range(d)))
    return pointset_from(sorted(pts))


def random_half_integer_pointset(rng: Random, d: int, n: int, span: int) -> PointSet:
    pts = set()
    guard = 0
    while len(pts) < n and guard < 100 * n:
        guard += 1
        pts.add(tuple(Fraction(rng.randint(0, 2 * span), 2) for _ in range(d)))
    return pointset_from(sorted(pts))


@pytest.fixture
def rng():
    return Random(0)
