"""Builders for the sums of products of Hermite-Biehler functions.

``H_n(s, z)`` sums, over subsets S of {1..n}, the value
``G(s - i*sum_{k not in S} a_k + i*sum_{l in S} a_l)`` times the product of
``omega_l`` for l in S and ``omega_k^*`` for k outside S.  Everything here
with a polynomial result is exact; exponential sums and the Polya shift are
float-only because their phases are transcendental.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .hb_class import HBPoly, hb_from_pair
from .numeric_core import (
    ZERO,
    GaussianRational,
    _gr,
    as_rational,
    complex_to_json,
    gr_to_float,
    rational_from_json,
    rational_to_float,
    rational_to_json,
)
from .polynomial import EXACT, FLOAT, CPoly, RPoly

EXACT_CAP = 12
FLOAT_CAP = 20


class CapExceededError(RuntimeError):
    """Requested n is above the configured cap; cost grows like 2**n."""


class ExactModeError(ValueError):
    """An exact builder was given transcendental data (alpha != 0)."""


class HypothesisError(ValueError):
    """Lee-Yang couplings outside -1 < A_ij < 1, or a non-symmetric matrix."""


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the cap {cap}; the expansion has 2**{n} terms")


# -- G -----------------------------------------------------------------------

@dataclass(frozen=True)
class RealRootedG:
    """``G(z) = c * z**q * exp(alpha*z) * prod(1 - z/root)``."""

    c: Fraction
    q: int = 0
    alpha: Fraction = Fraction(0)
    roots: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "roots", tuple(as_rational(r) for r in self.roots))
        if self.c == 0:
            raise ValueError("G must not be identically zero (c = 0)")
        if not isinstance(self.q, int) or self.q < 0:
            raise ValueError("zero order q must be a nonnegative integer")
        if any(r == 0 for r in self.roots):
            raise ValueError("zeros at the origin belong in q, not in roots")

    @classmethod
    def from_monic_roots(cls, roots: Sequence, lead=1, q: int = 0) -> "RealRootedG":
        """Encode ``lead * z**q * prod(z - r)``; signs are absorbed into c."""
        roots = [as_rational(r) for r in roots]
        c = as_rational(lead)
        for r in roots:
            c *= -r
        return cls(c, q, Fraction(0), tuple(roots))

    @property
    def zero_count(self) -> int:
        return self.q + len(self.roots)

    @property
    def is_exact(self) -> bool:
        return self.alpha == 0

    def value(self, z) -> GaussianRational:
        if not self.is_exact:
            raise ExactModeError("G has alpha != 0, so exp(alpha*z) is transcendental; use float mode")
        z = GaussianRational.coerce(z)
        v = GaussianRational(self.c) * z ** self.q
        for r in self.roots:
            v = v * (1 - z / r)
        return v

    def value_float(self, z: complex) -> complex:
        z = complex(z)
        v = rational_to_float(self.c) * z ** self.q * cmath.exp(rational_to_float(self.alpha) * z)
        for r in self.roots:
            v *= 1 - z / rational_to_float(r)
        return v

    def as_polynomial(self) -> CPoly:
        if not self.is_exact:
            raise ExactModeError("G with alpha != 0 is not a polynomial")
        p = CPoly([0] * self.q + [self.c])
        for r in self.roots:
            p = p * CPoly([1, -1 / r])
        return p

    def to_json(self) -> dict:
        return {
            "c": rational_to_json(self.c),
            "q": self.q,
            "alpha": rational_to_json(self.alpha),
            "roots": [rational_to_json(r) for r in self.roots],
        }

    @classmethod
    def from_json(cls, d: dict) -> "RealRootedG":
        return cls(
            rational_from_json(d["c"]),
            int(d.get("q", 0)),
            rational_from_json(d.get("alpha", 0)),
            tuple(rational_from_json(r) for r in d.get("roots", [])),
        )


def _g_at_imaginary(G: RealRootedG, y: Fraction) -> GaussianRational:
    # G(i*y), specialised: (1 - i*y/r) has no Fraction division by a complex
    v = _gr(G.c, Fraction(0))
    iy = _gr(Fraction(0), y)
    for _ in range(G.q):
        v = v * iy
    for r in G.roots:
        v = v * _gr(Fraction(1), -y / r)
    return v


def eval_g_imaginary(G: RealRootedG, s, exact: bool = True):
    """``G(i*s)`` for real s: exact in Q(i), or a complex float when ``exact=False``."""
    if exact:
        if not G.is_exact:
            raise ExactModeError("alpha != 0: exp(i*alpha*s) is not exact; pass exact=False")
        return _g_at_imaginary(G, as_rational(s))
    return G.value_float(1j * float(s))


# -- instances ---------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    G: RealRootedG
    a: tuple
    omegas: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_rational(v) for v in self.a))
        object.__setattr__(self, "omegas", tuple(self.omegas))
        if len(self.a) != len(self.omegas) or not self.a:
            raise ValueError("need n >= 1 and len(a) == len(omegas)")
        if any(v <= 0 for v in self.a):
            raise ValueError("every a_k must be positive")
        if not all(isinstance(w, HBPoly) for w in self.omegas):
            raise TypeError("omegas must be certified HBPoly values")

    @property
    def n(self) -> int:
        return len(self.a)

    def to_json(self) -> dict:
        return {
            "G": self.G.to_json(),
            "a": [rational_to_json(v) for v in self.a],
            "omegas": [w.to_json() for w in self.omegas],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Instance":
        return cls(
            RealRootedG.from_json(d["G"]),
            tuple(rational_from_json(v) for v in d["a"]),
            tuple(HBPoly.from_json(w) for w in d["omegas"]),
        )


def _subset_offset(a: Sequence[Fraction], mask: int) -> Fraction:
    return sum((v if mask >> k & 1 else -v for k, v in enumerate(a)), Fraction(0))


def build_hn_subset(inst: Instance, s=0, cap: int = EXACT_CAP) -> CPoly:
    """``H_n(i*s, z)`` by the literal sum over all 2**n subsets."""
    _check_cap(inst.n, cap)
    if not inst.G.is_exact:
        raise ExactModeError("exact construction needs alpha = 0")
    s = as_rational(s)
    omegas = [w.omega for w in inst.omegas]
    stars = [w.star() for w in inst.omegas]
    total = CPoly([])
    for mask in range(1 << inst.n):
        g = _g_at_imaginary(inst.G, s + _subset_offset(inst.a, mask))
        if not g:
            continue
        term = CPoly([g])
        for k in range(inst.n):
            term = term * (omegas[k] if mask >> k & 1 else stars[k])
        total = total + term
    return total


def build_hn_recursive(inst: Instance, s=0, cap: int = EXACT_CAP) -> CPoly:
    """``H_n(i*s, z)`` from ``H_k(y) = H_{k-1}(y - a_k) omega_k^* + H_{k-1}(y + a_k) omega_k``."""
    _check_cap(inst.n, cap)
    if not inst.G.is_exact:
        raise ExactModeError("exact construction needs alpha = 0")
    omegas = [w.omega for w in inst.omegas]
    stars = [w.star() for w in inst.omegas]
    a = inst.a

    @lru_cache(maxsize=None)
    def h(k: int, y: Fraction) -> CPoly:
        if k == 0:
            return CPoly([_g_at_imaginary(inst.G, y)])
        return h(k - 1, y - a[k - 1]) * stars[k - 1] + h(k - 1, y + a[k - 1]) * omegas[k - 1]

    return h(inst.n, as_rational(s))


def build_hn(inst: Instance, s=0, method: str = "recursive", cap: int = EXACT_CAP) -> CPoly:
    if method == "recursive":
        return build_hn_recursive(inst, s, cap)
    if method == "subset":
        return build_hn_subset(inst, s, cap)
    raise ValueError(f"unknown method {method!r}")


def eval_pn(inst: Instance, s, x: Sequence[complex]) -> complex:
    """Float value of the multivariate polynomial ``P_n(s; x_1..x_n)``.

    ``s`` is the (complex, exact) argument offset of G.  Terms are summed in
    ascending subset-bitmask order.
    """
    if len(x) != inst.n:
        raise ValueError(f"expected {inst.n} variables, got {len(x)}")
    s = GaussianRational.coerce(s)
    x = [complex(v) for v in x]
    total = 0j
    for mask in range(1 << inst.n):
        arg = s + GaussianRational(0, _subset_offset(inst.a, mask))
        g = gr_to_float(inst.G.value(arg)) if inst.G.is_exact else inst.G.value_float(gr_to_float(arg))
        prod = 1 + 0j
        for k in range(inst.n):
            if mask >> k & 1:
                prod *= x[k]
        total += g * prod
    return total


def circle_poly(G: RealRootedG, a: Sequence, cap: int = EXACT_CAP) -> CPoly:
    """``P_n(t) = sum over sign vectors of G(sigma . (i a)) t**(number of plus signs)``."""
    a = [as_rational(v) for v in a]
    if not a or any(v <= 0 for v in a):
        raise ValueError("a must be a nonempty list of positive rationals")
    _check_cap(len(a), cap)
    if not G.is_exact:
        raise ExactModeError("exact construction needs alpha = 0")
    coeffs = [ZERO] * (len(a) + 1)
    for mask in range(1 << len(a)):
        j = bin(mask).count("1")
        coeffs[j] = coeffs[j] + _g_at_imaginary(G, _subset_offset(a, mask))
    return CPoly(coeffs)


# -- Lee-Yang ----------------------------------------------------------------

def _to_float(v) -> float:
    return v if isinstance(v, float) else rational_to_float(as_rational(v))


def _check_coupling(A, n=None, exact: bool = True):
    n = len(A) if n is None else n
    if len(A) != n or any(len(row) != n for row in A):
        raise HypothesisError(f"coupling matrix must be {n}x{n}")
    M = [[as_rational(v) if exact else _to_float(v) for v in row] for row in A]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if M[i][j] != M[j][i]:
                raise HypothesisError(f"A is not symmetric at ({i}, {j})")
            if not -1 < M[i][j] < 1:
                raise HypothesisError(f"A[{i}][{j}] = {M[i][j]} violates -1 < A_ij < 1")
    return M, n


def _coupling_product(M, mask: int, n: int, one):
    prod = one
    for i in range(n):
        if mask >> i & 1:
            for j in range(n):
                if not mask >> j & 1:
                    prod = prod * M[i][j]
    return prod


def lee_yang_poly(A, n: int | None = None) -> CPoly:
    """Diagonal Lee-Yang polynomial: coefficient of t**j sums the coupling products over |S| = j."""
    M, n = _check_coupling(A, n)
    coeffs = [Fraction(0)] * (n + 1)
    for mask in range(1 << n):
        coeffs[bin(mask).count("1")] += _coupling_product(M, mask, n, Fraction(1))
    return CPoly(coeffs)


def lee_yang_eval(A, x: Sequence[complex]) -> complex:
    """Float value of the multivariate Lee-Yang polynomial at ``x``."""
    M, n = _check_coupling(A, exact=False)
    if len(x) != n:
        raise ValueError(f"expected {n} variables, got {len(x)}")
    total = 0j
    for mask in range(1 << n):
        term = complex(_coupling_product(M, mask, n, 1.0))
        for k in range(n):
            if mask >> k & 1:
                term *= complex(x[k])
        total += term
    return total


# -- orthogonal polynomials --------------------------------------------------

def orthogonal_h2(p_km2: RPoly, p_km1: RPoly, A, B, C) -> CPoly:
    """Two-factor H built from consecutive orthogonal polynomials.

    With omega_1 = p_{n-2} + i p_{n-1}, omega_2 = z + B/A - i, G(z) = -z and
    offsets (A/4, C/4), the result is ``(A z + B) p_{n-1} - C p_{n-2}``.
    """
    A, B, C = as_rational(A), as_rational(B), as_rational(C)
    if A <= 0 or C <= 0:
        raise ValueError("three-term recurrence needs A > 0 and C > 0")
    w1 = hb_from_pair(p_km2, p_km1)
    w2 = hb_from_pair(RPoly([B / A, 1]), RPoly([-1]))
    inst = Instance(RealRootedG(Fraction(-1), q=1), (A / 4, C / 4), (w1, w2))
    return build_hn_recursive(inst)


# -- Polya shift -------------------------------------------------------------

def polya_shift(F: CPoly, a: float, b: float, alpha: float = 0.0, drop_tol: float = 1e-12) -> CPoly:
    """Polynomial part of ``G(z - ia) e^{-ib} + G(z + ia) e^{ib}`` for ``G = e^{alpha z} F``.

    Coefficient j of the result is
    ``sum_k c_k binom(k, j) a**(k-j) * 2 cos(b' + (k-j) pi/2)`` with ``b' = b + alpha*a``.
    When ``|cos b'| < drop_tol`` the cosine is taken as exactly zero, so the
    leading term vanishes and the degree drops by one.
    """
    if F.is_exact:
        F = F.to_float()
    if F.is_zero():
        raise ValueError("Polya shift of the zero polynomial")
    if not a > 0:
        raise ValueError("shift a must be positive")
    bp = float(b) + float(alpha) * float(a)
    cb, sb = math.cos(bp), math.sin(bp)
    if abs(cb) < drop_tol:
        cb, sb = 0.0, math.copysign(1.0, sb)
    # 2 cos(b' + m pi/2) for m = 0, 1, 2, 3
    phase = (2 * cb, -2 * sb, -2 * cb, 2 * sb)
    c = F.coeffs
    n = len(c)
    out = []
    for j in range(n):
        acc = 0j
        for k in range(j, n):
            m = k - j
            acc += c[k] * math.comb(k, j) * a ** m * phase[m % 4]
        out.append(acc)
    return CPoly(out, FLOAT)


# -- exponential sums --------------------------------------------------------

@dataclass(frozen=True)
class ExpSum:
    """``sum coeff_j * exp(i * freq_j * z)`` with sorted, distinct frequencies."""

    terms: tuple

    def __call__(self, z) -> complex:
        return exp_sum_eval(self, z)

    @property
    def _arrays(self):
        c = np.array([t[0] for t in self.terms], dtype=complex)
        f = np.array([t[1] for t in self.terms], dtype=float)
        return c, f

    def evaluate_array(self, z: np.ndarray) -> np.ndarray:
        c, f = self._arrays
        z = np.asarray(z, dtype=complex)
        return np.exp(1j * np.multiply.outer(z, f)) @ c

    def derivative_array(self, z: np.ndarray) -> np.ndarray:
        c, f = self._arrays
        z = np.asarray(z, dtype=complex)
        return np.exp(1j * np.multiply.outer(z, f)) @ (1j * f * c)

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {"terms": [dict(complex_to_json(c), freq=f) for c, f in self.terms]}


def exp_sum_build(G: RealRootedG, a: Sequence[float], b: Sequence[float], cap: int = FLOAT_CAP) -> ExpSum:
    """All 2**n sign choices, the same signs in G's argument and in the frequency."""
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    n = len(a)
    if n < 1 or len(b) != n:
        raise ValueError("need n >= 1 and len(a) == len(b)")
    if any(v <= 0 for v in a) or any(v <= 0 for v in b):
        raise ValueError("a and b must be positive")
    _check_cap(n, cap)
    merged: dict[float, complex] = {}
    for mask in range(1 << n):
        y = 0.0
        f = 0.0
        for k in range(n):
            sgn = 1.0 if mask >> k & 1 else -1.0
            y += sgn * a[k]
            f += sgn * b[k]
        f += 0.0  # normalise -0.0 so it merges with 0.0
        merged[f] = merged.get(f, 0j) + G.value_float(1j * y)
    terms = tuple((c, f) for f, c in sorted(merged.items()) if c != 0)
    return ExpSum(terms)


def exp_sum_eval(e: ExpSum, z) -> complex:
    z = complex(z)
    return sum((c * cmath.exp(1j * f * z) for c, f in e.terms), 0j)
