"""Monomial bases, Veronese matrices, sparse polynomials, zero counting.

The global monomial order is graded lexicographic: exponent vectors are
sorted by total degree, and inside a degree block by descending
lexicographic order, so in two variables the degree-2 basis reads
1, x1, x2, x1^2, x1*x2, x2^2.  Every coefficient vector in the package is
expressed in this order, which keeps extracted polynomials reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .geometry import Point
from .linalg import Matrix
from .pointsets import PointSet
from .scalars import Scalar


def monomial_count(d: int, r: int) -> int:
    """Number of monomials of degree at most r in d variables: C(d+r, d)."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    return comb(d + r, d)


def monomial_count_lower_bound_holds(d: int, r: int) -> bool:
    # C(d+r, d) >= (r/d)^d, compared exactly.
    return monomial_count(d, r) * Fraction(d) ** d >= Fraction(r) ** d


def _exponents_of_degree(d: int, total: int):
    if d == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exponents_of_degree(d - 1, total - first):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialBasis:
    """Graded-lex list of exponent vectors of degree <= max_degree."""

    dim: int
    max_degree: int
    exponents: tuple[tuple[int, ...], ...]

    def index_of(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.exponents)}

    def __len__(self):
        return len(self.exponents)


def monomial_basis(d: int, r: int) -> MonomialBasis:
    exps = []
    for total in range(r + 1):
        exps.extend(_exponents_of_degree(d, total))
    basis = MonomialBasis(d, r, tuple(exps))
    assert len(basis) == monomial_count(d, r)
    return basis


def _eval_monomial(exp, powers):
    val = Fraction(1)
    for i, e in enumerate(exp):
        if e:
            val = val * powers[i][e]
    return val


def _coordinate_powers(p: Point, max_degree: int):
    powers = []
    for c in p:
        row = [Fraction(1)]
        for _ in range(max_degree):
            row.append(row[-1] * c)
        powers.append(row)
    return powers


def veronese_point(p: Point, r: int) -> tuple[Scalar, ...]:
    basis = monomial_basis(len(p), r)
    powers = _coordinate_powers(p, r)
    return tuple(_eval_monomial(e, powers) for e in basis.exponents)


def veronese_matrix(ps: PointSet, r: int) -> Matrix:
    """Row i is the degree-<=r monomial evaluation vector of point i."""
    basis = monomial_basis(ps.dim, r)
    rows = []
    for p in ps.points:
        powers = _coordinate_powers(p, r)
        rows.append([_eval_monomial(e, powers) for e in basis.exponents])
    return Matrix(rows)


class Polynomial:
    """Sparse multivariate polynomial: exponent vector -> nonzero coefficient."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms):
        self.dim = dim
        clean = {}
        for exp, coef in dict(terms).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp}")
            if coef != 0:
                clean[exp] = coef
        self.terms = clean

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim, {})

    @classmethod
    def variable(cls, dim: int, i: int) -> "Polynomial":
        exp = tuple(int(j == i) for j in range(dim))
        return cls(dim, {exp: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def evaluate(self, p: Point) -> Scalar:
        if len(p) != self.dim:
            raise ValueError("dimension mismatch")
        powers = _coordinate_powers(p, self.degree())
        return sum(
            (coef * _eval_monomial(exp, powers) for exp, coef in self.terms.items()),
            Fraction(0),
        )

    def scale(self, c: Scalar) -> "Polynomial":
        return Polynomial(self.dim, {e: c * v for e, v in self.terms.items()})

    def add(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + v
        return Polynomial(self.dim, out)

    def partial(self, i: int) -> "Polynomial":
        out = {}
        for exp, coef in self.terms.items():
            e = exp[i]
            if e == 0:
                continue
            new = exp[:i] + (e - 1,) + exp[i + 1 :]
            out[new] = out.get(new, Fraction(0)) + coef * e
        return Polynomial(self.dim, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.partial(i) for i in range(self.dim)]

    def homogeneous_part(self) -> "Polynomial":
        """Top-degree homogeneous component."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading part")
        top = self.degree()
        return Polynomial(
            self.dim, {e: c for e, c in self.terms.items() if sum(e) == top}
        )

    def restrict_to_line(self, base: Point, direction: Point) -> list[Scalar]:
        """Coefficients of g(t) = f(base + t*direction), low degree first."""
        deg = self.degree()
        samples = [self.evaluate(tuple(b + Fraction(t) * u for b, u in zip(base, direction))) for t in range(deg + 1)]
        # Newton forward differences give exact polynomial coefficients, but a
        # direct Vandermonde solve on deg+1 exact samples is simpler and small.
        rows = [[Fraction(t) ** j for j in range(deg + 1)] for t in range(deg + 1)]
        from .linalg import rref

        aug = [row + [samples[i]] for i, row in enumerate(rows)]
        reduced, pivots = rref(aug)
        coeffs = [Fraction(0)] * (deg + 1)
        for i, pc in enumerate(pivots):
            if pc < deg + 1:
                coeffs[pc] = reduced[i][-1]
        return coeffs

    def sorted_terms(self):
        degree_then_revlex = lambda e: (sum(e), tuple(-x for x in e))
        return sorted(self.terms.items(), key=lambda kv: degree_then_revlex(kv[0]))

    def coefficient_vector(self, basis: MonomialBasis) -> tuple[Scalar, ...]:
        if basis.dim != self.dim or self.degree() > basis.max_degree:
            raise ValueError("basis does not cover this polynomial")
        idx = basis.index_of()
        vec = [Fraction(0)] * len(basis)
        for exp, coef in self.terms.items():
            vec[idx[exp]] = coef
        return tuple(vec)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        parts = []
        for exp, coef in self.sorted_terms():
            mono = "*".join(
                f"x{i+1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e > 0
            )
            parts.append(f"({coef}){'*' + mono if mono else ''}")
        return "Polynomial(" + " + ".join(parts) + ")"


def poly_from_coeff_vector(basis: MonomialBasis, vec) -> Polynomial:
    if len(vec) != len(basis):
        raise ValueError("coefficient vector does not match basis")
    return Polynomial(basis.dim, dict(zip(basis.exponents, vec)))


def inner_eval(vec, p: Point, r: int) -> Scalar:
    """<w, veronese(p)> for a coefficient vector w in the degree-r basis."""
    return sum(
        (w * phi for w, phi in zip(vec, veronese_point(p, r))), Fraction(0)
    )


def schwartz_zippel_count(
    f: Polynomial, values, homogeneous_slice: bool = False
) -> int:
    """Exact zero count of f on S^d, or on {1} x S^(d-1) in slice mode.

    The classical bounds deg(f)*|S|^(d-1) (and deg(f)*|S|^(d-2) for the
    homogeneous slice) are enforced: a violation means broken arithmetic,
    so it raises.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    vals = list(dict.fromkeys(values))
    d = f.dim
    r = f.degree()
    s = len(vals)
    if homogeneous_slice:
        if not f.is_homogeneous():
            raise ValueError("slice mode needs a homogeneous polynomial")
        if d < 2:
            raise ValueError("slice mode needs d >= 2")
        count = sum(
            1
            for tail in itertools.product(vals, repeat=d - 1)
            if f.evaluate((Fraction(1),) + tail) == 0
        )
        bound = r * s ** (d - 2)
    else:
        count = sum(
            1 for p in itertools.product(vals, repeat=d) if f.evaluate(p) == 0
        )
        bound = r * s ** (d - 1)
    if count > bound:
        raise AssertionError(
            f"zero count {count} exceeds the degree bound {bound}; arithmetic bug"
        )
    return count
