"""Exact field elements: rationals and Gaussian rationals.

Plain rationals are ``fractions.Fraction``; the Gaussian field Q(i) gets a
small immutable wrapper with the same operator surface, so every algorithm
in the package works over either field by duck typing.  Coordinates never
touch floating point.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction

FIELD_RATIONAL = "Q"
FIELD_GAUSSIAN = "Qi"


@dataclass(frozen=True)
class GaussianRational:
    """Element of Q(i) stored as exact real and imaginary rationals."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "GaussianRational | None":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x), Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nrm = o.re * o.re + o.im * o.im
        if nrm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / nrm,
            (self.im * o.re - self.re * o.im) / nrm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            return GaussianRational(Fraction(1), Fraction(0)) / self ** (-n)
        out = GaussianRational(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


Scalar = Fraction | GaussianRational

I = GaussianRational(Fraction(0), Fraction(1))


def field_of(x: Scalar) -> str:
    return FIELD_GAUSSIAN if isinstance(x, GaussianRational) else FIELD_RATIONAL


def zero(field: str = FIELD_RATIONAL) -> Scalar:
    if field == FIELD_GAUSSIAN:
        return GaussianRational(Fraction(0), Fraction(0))
    return Fraction(0)


def one(field: str = FIELD_RATIONAL) -> Scalar:
    if field == FIELD_GAUSSIAN:
        return GaussianRational(Fraction(1), Fraction(0))
    return Fraction(1)


def coerce(x, field: str = FIELD_RATIONAL) -> Scalar:
    """Coerce an int/Fraction/GaussianRational/string into the given field."""
    if isinstance(x, str):
        return parse_scalar(x, field)
    if field == FIELD_GAUSSIAN:
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(Fraction(x), Fraction(0))
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError(f"cannot coerce {x!r} into the rational field")
        return x.re
    return Fraction(x)


def real_part(x: Scalar) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else x


def imag_part(x: Scalar) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def scalar_key(x: Scalar) -> tuple[Fraction, Fraction]:
    """Total order key: real part first, imaginary part as tie break."""
    return (real_part(x), imag_part(x))


def sign_positive(x: Scalar) -> bool:
    """Sign convention used to canonicalize directions and differences.

    A nonzero scalar counts as positive when its real part is positive,
    or the real part is zero and the imaginary part is positive.
    """
    r, i = real_part(x), imag_part(x)
    return r > 0 or (r == 0 and i > 0)


def canonical_sign_vector(vec: tuple[Scalar, ...]) -> tuple[Scalar, ...]:
    """Negate a nonzero vector if needed so its first nonzero entry is positive."""
    for c in vec:
        if c != 0:
            if sign_positive(c):
                return tuple(vec)
            return tuple(-c for c in vec)
    raise ValueError("zero vector has no canonical sign")


# -- serialization -----------------------------------------------------------

_RAT_RE = _re.compile(r"^(-?\d+)(?:/(\d+))?$")
_GAUSS_RE = _re.compile(r"^(-?\d+)/(\d+)([+-]\d+)/(\d+)\*i$")


def format_scalar(x: Scalar) -> str:
    """Render a scalar as "p/q" or "p/q+r/s*i" (denominators always shown)."""
    if isinstance(x, GaussianRational):
        re_s = f"{x.re.numerator}/{x.re.denominator}"
        sign = "+" if x.im >= 0 else "-"
        im = abs(x.im)
        return f"{re_s}{sign}{im.numerator}/{im.denominator}*i"
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_scalar(s: str, field: str = FIELD_RATIONAL) -> Scalar:
    s = s.strip()
    m = _GAUSS_RE.match(s)
    if m:
        re_p = Fraction(int(m.group(1)), int(m.group(2)))
        im_p = Fraction(int(m.group(3)), int(m.group(4)))
        g = GaussianRational(re_p, im_p)
        if field == FIELD_RATIONAL:
            return coerce(g, field)
        return g
    m = _RAT_RE.match(s)
    if m:
        val = Fraction(int(m.group(1)), int(m.group(2) or 1))
        return coerce(val, field)
    raise ValueError(f"cannot parse scalar {s!r}")


def parse_scalar_lenient(s: str) -> Scalar:
    """Parse without a field tag: plain fractions stay rational, gaussian
    strings come back gaussian."""
    s = s.strip()
    if _RAT_RE.match(s):
        return parse_scalar(s, FIELD_RATIONAL)
    return parse_scalar(s, FIELD_GAUSSIAN)


def format_point(p: tuple[Scalar, ...]) -> list[str]:
    return [format_scalar(c) for c in p]


def parse_point(coords, field: str) -> tuple[Scalar, ...]:
    return tuple(parse_scalar(c, field) if isinstance(c, str) else coerce(c, field) for c in coords)
