"""Dense univariate polynomials.

:class:`CPoly` carries complex coefficients, either exact (Gaussian rationals)
or float (Python ``complex``).  :class:`RPoly` carries rational coefficients.
Both store coefficients in ascending degree and trim trailing zeros eagerly, so
a cancelled leading term shows up as a lower degree.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .numeric_core import (
    ZERO,
    GaussianRational,
    as_rational,
    check_finite,
    complex_from_json,
    complex_to_json,
    gr_to_float,
    rational_from_json,
    rational_to_float,
    rational_to_json,
    scalar_from_json,
    scalar_to_json,
)

EXACT = "exact"
FLOAT = "float"


class BackendMismatchError(TypeError):
    """Exact and float polynomials were combined."""


# -- coefficient-list kernels (shared by CPoly and RPoly) --------------------

def _trim(c: list) -> list:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    del c[n:]
    return c


def _add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = out[i] + v
    return _trim(out)


def _sub(a: Sequence, b: Sequence) -> list:
    out = list(a) + [0] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = out[i] - v
    return _trim(out)


def _mul(a: Sequence, b: Sequence, zero) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division over a field; ``b`` must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        coef = r[k + db] / lead
        q[k] = coef
        if coef:
            for j in range(db + 1):
                r[k + j] = r[k + j] - coef * b[j]
    # the eliminated top coefficients are exactly zero in exact arithmetic
    del r[db:]
    return _trim(q), _trim(r)


def _horner(c: Sequence, x, zero):
    acc = zero
    for v in reversed(c):
        acc = acc * x + v
    return acc


def _derivative(c: Sequence) -> list:
    return _trim([c[k] * k for k in range(1, len(c))])


# -- CPoly -------------------------------------------------------------------

class CPoly:
    """Polynomial with complex coefficients over an exact or float backend."""

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable = (), backend: str = EXACT):
        if backend == EXACT:
            cs = [GaussianRational.coerce(c) for c in coeffs]
        elif backend == FLOAT:
            cs = []
            for c in coeffs:
                if isinstance(c, (GaussianRational, Fraction)):
                    raise TypeError("float CPoly needs float scalars; convert exact values with to_float()")
                cs.append(check_finite(complex(c)))
        else:
            raise ValueError(f"unknown backend {backend!r}")
        object.__setattr__(self, "coeffs", tuple(_trim(cs)))
        object.__setattr__(self, "backend", backend)

    @classmethod
    def _raw(cls, coeffs: list, backend: str) -> "CPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(coeffs))
        object.__setattr__(p, "backend", backend)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("CPoly is immutable")

    @classmethod
    def z(cls, backend: str = EXACT) -> "CPoly":
        """The identity polynomial."""
        return cls([0, 1], backend)

    @classmethod
    def const(cls, c, backend: str = EXACT) -> "CPoly":
        return cls([c], backend)

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1, backend: str = EXACT) -> "CPoly":
        p = cls([lead], backend)
        for r in roots:
            p = p * cls([-r if backend == FLOAT else -GaussianRational.coerce(r), 1], backend)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return self.backend == EXACT

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def _zero(self):
        return ZERO if self.backend == EXACT else 0j

    def _other(self, other) -> "CPoly":
        if isinstance(other, CPoly):
            if other.backend != self.backend:
                raise BackendMismatchError(f"cannot combine {self.backend} and {other.backend} polynomials")
            return other
        if isinstance(other, RPoly):
            return self._other(other.to_cpoly(self.backend))
        return CPoly([other], self.backend)

    def __add__(self, other):
        o = self._other(other)
        return CPoly._raw(_add(self.coeffs, o.coeffs), self.backend)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return CPoly._raw(_sub(self.coeffs, o.coeffs), self.backend)

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return CPoly._raw([-c for c in self.coeffs], self.backend)

    def __mul__(self, other):
        if isinstance(other, (CPoly, RPoly)):
            o = self._other(other)
            return CPoly._raw(_mul(self.coeffs, o.coeffs, self._zero), self.backend)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "CPoly":
        c = self._other(c).coeffs
        if not c:
            return CPoly._raw([], self.backend)
        return CPoly._raw(_trim([v * c[0] for v in self.coeffs]), self.backend)

    def __divmod__(self, other):
        o = self._other(other)
        if not self.is_exact:
            raise TypeError("polynomial division is only provided for the exact backend")
        q, r = _divmod(self.coeffs, o.coeffs)
        return CPoly._raw(q, EXACT), CPoly._raw(r, EXACT)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.backend == other.backend and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.backend, self.coeffs))

    def __repr__(self):
        return f"CPoly({[str(c) for c in self.coeffs]}, backend={self.backend!r})"

    def derivative(self) -> "CPoly":
        return CPoly._raw(_derivative(self.coeffs), self.backend)

    def star(self) -> "CPoly":
        return CPoly._raw([c.conjugate() if self.backend == FLOAT else c.conj() for c in self.coeffs], self.backend)

    def monic(self) -> "CPoly":
        lead = self.leading()
        return CPoly._raw([c / lead for c in self.coeffs], self.backend)

    def to_float(self) -> "CPoly":
        if self.backend == FLOAT:
            return self
        return CPoly._raw([gr_to_float(c) for c in self.coeffs], FLOAT)

    def is_real(self) -> bool:
        if self.backend == EXACT:
            return all(c.im == 0 for c in self.coeffs)
        return all(c.imag == 0 for c in self.coeffs)

    def to_rpoly(self) -> "RPoly":
        """Real part as an RPoly; the polynomial must have real coefficients."""
        if not self.is_exact:
            raise TypeError("to_rpoly needs the exact backend")
        if not self.is_real():
            raise ValueError("polynomial has non-real coefficients")
        return RPoly._raw([c.re for c in self.coeffs])


# -- RPoly -------------------------------------------------------------------

class RPoly:
    """Polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", tuple(_trim([as_rational(c) for c in coeffs])))

    @classmethod
    def _raw(cls, coeffs: list) -> "RPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(coeffs))
        return p

    def __setattr__(self, name, value):
        raise AttributeError("RPoly is immutable")

    @classmethod
    def z(cls) -> "RPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RPoly":
        c = [as_rational(lead)]
        for r in roots:
            c = _mul(c, [-as_rational(r), Fraction(1)], Fraction(0))
        return cls._raw(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @staticmethod
    def _other(other) -> "RPoly":
        if isinstance(other, RPoly):
            return other
        if isinstance(other, CPoly):
            return NotImplemented
        return RPoly([other])

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return RPoly._raw(_add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return RPoly._raw(_sub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return RPoly._other(other) - self

    def __neg__(self):
        return RPoly._raw([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, RPoly):
            return RPoly._raw(_mul(self.coeffs, other.coeffs, Fraction(0)))
        if isinstance(other, CPoly):
            return NotImplemented
        r = as_rational(other)
        return RPoly._raw(_trim([c * r for c in self.coeffs]))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = _divmod(self.coeffs, RPoly._other(other).coeffs)
        return RPoly._raw(q), RPoly._raw(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        if isinstance(x, (float, complex)):
            return _horner([rational_to_float(c) for c in self.coeffs], x, 0.0)
        if isinstance(x, GaussianRational):
            return _horner(self.coeffs, x, ZERO)
        return _horner(self.coeffs, as_rational(x), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, RPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RPoly({[str(c) for c in self.coeffs]})"

    def derivative(self) -> "RPoly":
        return RPoly._raw(_derivative(self.coeffs))

    def monic(self) -> "RPoly":
        lead = self.leading()
        return RPoly._raw([c / lead for c in self.coeffs])

    def primitive(self) -> "RPoly":
        """Positive rational multiple with coprime integer coefficients.

        Signs of values are unchanged, which is all Sturm counting needs.
        """
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = gcd(*ints)
        return RPoly._raw([Fraction(v // g) for v in ints])

    def to_cpoly(self, backend: str = EXACT) -> CPoly:
        if backend == EXACT:
            return CPoly._raw([GaussianRational(c, 0) for c in self.coeffs], EXACT)
        return CPoly._raw([complex(rational_to_float(c)) for c in self.coeffs], FLOAT)

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)


# -- free functions ----------------------------------------------------------

def poly_star(w: CPoly) -> CPoly:
    """Conjugate every coefficient, so that ``star(w)(z) == conj(w(conj(z)))``."""
    return w.star()


def poly_eval(p: CPoly, z):
    """Horner evaluation; exact for exact polynomials at exact points."""
    if p.backend == EXACT:
        if isinstance(z, (float, complex)):
            raise TypeError("evaluate a float point on p.to_float(), not on the exact polynomial")
        return _horner(p.coeffs, GaussianRational.coerce(z), ZERO)
    if isinstance(z, (GaussianRational, Fraction)):
        raise TypeError("float polynomial needs a float point")
    return _horner(p.coeffs, complex(z), 0j)


def poly_derivative(p):
    return p.derivative()


def poly_gcd(a, b):
    """Monic gcd by the Euclidean algorithm (exact CPoly or RPoly)."""
    if isinstance(a, CPoly) and not a.is_exact or isinstance(b, CPoly) and not b.is_exact:
        raise TypeError("poly_gcd needs exact polynomials")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if isinstance(a, RPoly) != isinstance(b, RPoly):
        raise BackendMismatchError("gcd of an RPoly and a CPoly")
    if a.degree < b.degree:
        a, b = b, a
    if b.is_zero():
        return a.monic()
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
        if not b.is_zero():
            b = b.monic()
    return a


def poly_split_real_imag(w: CPoly) -> tuple[RPoly, RPoly]:
    """Return ``(p, q)`` with ``w = p + i*q`` and p, q rational."""
    if not w.is_exact:
        raise TypeError("splitting needs the exact backend")
    return RPoly([c.re for c in w.coeffs]), RPoly([c.im for c in w.coeffs])


def poly_from_parts(p: RPoly, q: RPoly) -> CPoly:
    n = max(len(p.coeffs), len(q.coeffs))
    pc = list(p.coeffs) + [Fraction(0)] * (n - len(p.coeffs))
    qc = list(q.coeffs) + [Fraction(0)] * (n - len(q.coeffs))
    return CPoly([GaussianRational(x, y) for x, y in zip(pc, qc)])


# -- JSON --------------------------------------------------------------------

def poly_to_json(p: CPoly) -> dict:
    if p.backend == EXACT:
        coeffs = [scalar_to_json(c) for c in p.coeffs]
    else:
        coeffs = [complex_to_json(c) for c in p.coeffs]
    return {"backend": p.backend, "coeffs": coeffs}


def poly_from_json(d) -> CPoly:
    """Load ``{"backend":, "coeffs": [...]}``; a bare list means exact."""
    if isinstance(d, list):
        d = {"backend": EXACT, "coeffs": d}
    if not isinstance(d, dict) or "coeffs" not in d:
        raise ValueError("polynomial JSON must be an object with a 'coeffs' list")
    backend = d.get("backend", EXACT)
    if backend == EXACT:
        return CPoly([scalar_from_json(v) for v in d["coeffs"]], EXACT)
    if backend == FLOAT:
        return CPoly([complex_from_json(v) for v in d["coeffs"]], FLOAT)
    raise ValueError(f"unknown backend {backend!r}")


def rpoly_to_json(p: RPoly) -> list:
    return [rational_to_json(c) for c in p.coeffs]


def rpoly_from_json(v) -> RPoly:
    if isinstance(v, dict):
        cp = poly_from_json(v)
        return cp.to_rpoly()
    return RPoly([rational_from_json(c) for c in v])
