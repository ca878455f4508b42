"""Exact rational / Gaussian-rational scalars and the float tolerance policy.

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
(elements of Q(i)) are :class:`GaussianRational`.  Floats never mix with
exact scalars implicitly: converting is one-way, through :func:`gr_to_float`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction
ExactScalar = Union[int, Fraction, "GaussianRational"]


class FloatOverflowError(OverflowError):
    """An exact value is outside the binary64 range."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: an exact value must never silently come from a double.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(as_rational(x), 0)

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return _gr(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return _gr(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return _gr(a * c - b * d, a * d + b * c)
        try:
            r = as_rational(other)
        except TypeError:
            return NotImplemented
        return _gr(self.re * r, self.im * r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by the Gaussian rational 0")
        a, b, c, d = self.re, self.im, o.re, o.im
        return _gr((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / self ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussianRational":
        return _gr(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return gr_to_float(self)

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _gr(re: Fraction, im: Fraction) -> GaussianRational:
    # trusted constructor: both parts are already Fractions
    x = object.__new__(GaussianRational)
    object.__setattr__(x, "re", re)
    object.__setattr__(x, "im", im)
    return x


I = GaussianRational(0, 1)
ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)


def rational_to_float(r: Fraction) -> float:
    # int / int true division is correctly rounded in CPython
    try:
        return r.numerator / r.denominator
    except OverflowError as exc:
        raise FloatOverflowError(f"{r} does not fit in binary64") from exc


def gr_to_float(x) -> complex:
    """Nearest binary64 per component of an exact scalar."""
    x = GaussianRational.coerce(x)
    return complex(rational_to_float(x.re), rational_to_float(x.im))


def check_finite(z: complex) -> complex:
    if not cmath.isfinite(z):
        raise FloatOverflowError(f"non-finite float result {z!r}")
    return z


@dataclass(frozen=True)
class TolerancePolicy:
    root_residual_tol: float = 1e-9
    contour_margin: float = 1e-3
    max_iterations: int = 200

    def __post_init__(self):
        for name in ("root_residual_tol", "contour_margin"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        if not isinstance(self.max_iterations, int) or self.max_iterations <= 0:
            raise ValueError("max_iterations must be a positive integer")


DEFAULT_POLICY = TolerancePolicy()


# -- JSON encodings ------------------------------------------------------------

def rational_to_json(r) -> str:
    r = as_rational(r)
    return f"{r.numerator}/{r.denominator}"


def rational_from_json(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("exact rationals must be given as integers or 'p/q' strings")
    return as_rational(v)


def scalar_to_json(x) -> dict:
    x = GaussianRational.coerce(x)
    return {"re": rational_to_json(x.re), "im": rational_to_json(x.im)}


def scalar_from_json(v) -> GaussianRational:
    """Accepts ``{"re":, "im":}``, a bare integer, or a ``"p/q"`` string."""
    if isinstance(v, dict):
        return GaussianRational(rational_from_json(v.get("re", 0)), rational_from_json(v.get("im", 0)))
    return GaussianRational(rational_from_json(v), 0)


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(v) -> complex:
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    return complex(v)
