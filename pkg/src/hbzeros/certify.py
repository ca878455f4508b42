"""Exact zero-locus certificates.

Real roots are counted with Sturm chains over Q; unit-circle questions are
pulled back to the real line with the Cayley map ``t = (1 + iz) / (1 - iz)``.
Nothing here uses floating point except the optional witness attached to a
failing certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .numeric_core import GaussianRational, complex_to_json
from .polynomial import CPoly, RPoly, poly_gcd

PASS = "PASS"
FAIL = "FAIL"
REAL_LINE = "real_line"
UNIT_CIRCLE = "unit_circle"
UPPER_HALF_PLANE = "upper_half_plane"

NEG_INF = float("-inf")
POS_INF = float("inf")


class NotSquarefreeError(ValueError):
    """Sturm counting was asked about a polynomial with repeated roots."""


class InterlacingInputError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    verdict: str
    locus: str
    degree: int
    count_on_locus: int
    witness: Optional[complex] = None
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "locus": self.locus,
            "degree": self.degree,
            "count": self.count_on_locus,
            "witness": None if self.witness is None else complex_to_json(self.witness),
            "notes": self.notes,
        }


# -- Sturm chains ------------------------------------------------------------

def _int_coeffs(p: RPoly) -> tuple[int, ...]:
    return tuple(int(c) for c in p.primitive().coeffs)


def _sign_int_poly(c: tuple[int, ...], x) -> int:
    """Sign of the integer polynomial ``c`` at a rational or infinite ``x``."""
    if not c:
        return 0
    if isinstance(x, float):
        s = 1 if c[-1] > 0 else -1
        if x < 0 and (len(c) - 1) % 2:
            s = -s
        return s
    n, d = x.numerator, x.denominator
    # homogeneous Horner: sum c_j n^j d^(deg-j) has the sign of p(n/d) since d > 0
    acc = c[-1]
    dpow = 1
    for cj in reversed(c[:-1]):
        dpow *= d
        acc = acc * n + cj * dpow
    return (acc > 0) - (acc < 0)


@dataclass(frozen=True)
class SturmChain:
    chain: tuple

    def __post_init__(self):
        object.__setattr__(self, "_ints", tuple(_int_coeffs(p) for p in self.chain))

    def variations(self, x) -> int:
        """Sign changes of the chain at ``x`` (a rational, or +/-inf), zeros skipped."""
        changes = 0
        prev = 0
        for c in self._ints:
            s = _sign_int_poly(c, x)
            if s == 0:
                continue
            if prev and s != prev:
                changes += 1
            prev = s
        return changes

    @property
    def is_squarefree(self) -> bool:
        return self.chain[-1].degree == 0


def sturm_chain(p: RPoly) -> SturmChain:
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p]
    nxt = p.derivative()
    while not nxt.is_zero():
        chain.append(nxt)
        nxt = -(chain[-2] % chain[-1])
    return SturmChain(tuple(chain))


def _as_bound(x):
    if isinstance(x, float):
        if math.isinf(x):
            return x
        raise TypeError("finite interval endpoints must be exact rationals")
    return Fraction(x)


def count_real_roots(p: RPoly, lo=NEG_INF, hi=POS_INF, chain: Optional[SturmChain] = None) -> int:
    """Number of distinct real roots of squarefree ``p`` in ``(lo, hi]``."""
    if chain is None:
        chain = sturm_chain(p)
    if not chain.is_squarefree:
        raise NotSquarefreeError("polynomial has repeated roots; divide by gcd(p, p') before counting")
    lo, hi = _as_bound(lo), _as_bound(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi}]")
    return chain.variations(lo) - chain.variations(hi)


def _root_bound(p: RPoly) -> Fraction:
    """Power of two strictly above every root modulus (Cauchy bound)."""
    lead = abs(p.leading())
    b = 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    k = 1
    while k <= b:
        k *= 2
    return Fraction(k)


def isolate_real_roots(p: RPoly, chain: Optional[SturmChain] = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` with dyadic endpoints, one root each, sorted."""
    if chain is None:
        chain = sturm_chain(p)
    if not chain.is_squarefree:
        raise NotSquarefreeError("root isolation needs a squarefree polynomial")
    if p.degree < 1:
        return []
    b = _root_bound(p)
    out = []
    stack = [(-b, b, chain.variations(-b), chain.variations(b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        k = vlo - vhi
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = chain.variations(mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    out.sort()
    return out


def refine_root(chain: SturmChain, lo: Fraction, hi: Fraction, width=Fraction(1, 2**60)) -> Fraction:
    """Bisect an isolating interval ``(lo, hi]`` down to ``width``; returns the midpoint."""
    vhi = chain.variations(hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        vmid = chain.variations(mid)
        if vmid - vhi:
            lo = mid
        else:
            hi, vhi = mid, vmid
    return (lo + hi) / 2


# -- certificates ------------------------------------------------------------

def _float_witness(h: CPoly, score) -> Optional[complex]:
    from .numeric_roots import find_roots

    if h.degree < 1:
        return None
    try:
        rs = find_roots(h.to_float())
    except Exception:
        return None
    if not rs.roots:
        return None
    return max(rs.roots, key=score)


def _real_root_levels(f: RPoly) -> list[int]:
    """Distinct real-root counts of f, gcd(f, f'), gcd of that with its derivative, ...

    Entry k counts the real roots of multiplicity greater than k.
    """
    levels = []
    while f.degree > 0:
        g = poly_gcd(f, f.derivative())
        sqfree = f // g
        levels.append(count_real_roots(sqfree))
        f = g
    return levels


def _multiplicity_note(levels: list[int]) -> str:
    if not levels:
        return "no real roots"
    mult = {}
    for k, c in enumerate(levels):
        nxt = levels[k + 1] if k + 1 < len(levels) else 0
        if c - nxt:
            mult[k + 1] = c - nxt
    if set(mult) <= {1}:
        return "all real roots simple"
    parts = ", ".join(f"{v} of multiplicity {m}" for m, v in sorted(mult.items()))
    return f"real roots: {parts}"


def certify_real_rooted(h: CPoly) -> Certificate:
    """Exact check that every zero of ``h`` is real (multiplicities counted)."""
    if h.is_zero():
        raise ValueError("cannot certify the zero polynomial")
    if not h.is_exact:
        raise TypeError("certification needs an exact polynomial")
    deg = h.degree
    normalized = h.monic()
    if not normalized.is_real():
        # real roots of a complex polynomial are the common real roots of its parts
        re = RPoly([c.re for c in normalized.coeffs])
        im = RPoly([c.im for c in normalized.coeffs])
        common = poly_gcd(re, im)
        count = sum(_real_root_levels(common))
        return Certificate(
            FAIL, REAL_LINE, deg, count,
            witness=_float_witness(h, lambda r: (abs(r.imag), r.imag)),
            notes="coefficients are not a real multiple of a real polynomial",
        )
    levels = _real_root_levels(normalized.to_rpoly())
    count = sum(levels)
    if count == deg:
        return Certificate(PASS, REAL_LINE, deg, count, notes=_multiplicity_note(levels))
    return Certificate(
        FAIL, REAL_LINE, deg, count,
        witness=_float_witness(h, lambda r: (abs(r.imag), r.imag)),
        notes=f"{deg - count} non-real roots; {_multiplicity_note(levels)}",
    )


def cayley_transform(p: CPoly, degree: Optional[int] = None) -> CPoly:
    """``(1 - iz)**d * p((1 + iz) / (1 - iz))`` with d defaulting to deg p."""
    if p.is_zero():
        raise ValueError("Cayley transform of the zero polynomial")
    d = p.degree if degree is None else degree
    if d < p.degree:
        raise ValueError("degree must be at least deg p")
    plus = CPoly([1, GaussianRational(0, 1)])
    minus = CPoly([1, GaussianRational(0, -1)])
    minus_pows = [CPoly([1])]
    for _ in range(d):
        minus_pows.append(minus_pows[-1] * minus)
    out = CPoly([])
    plus_pow = CPoly([1])
    for k, c in enumerate(p.coeffs):
        if c:
            out = out + (plus_pow * minus_pows[d - k]).scale(c)
        plus_pow = plus_pow * plus
    return out


def certify_unit_circle(p: CPoly) -> Certificate:
    """Exact check that every zero of ``p`` has modulus one."""
    if p.is_zero():
        raise ValueError("cannot certify the zero polynomial")
    if not p.is_exact:
        raise TypeError("certification needs an exact polynomial")
    deg = p.degree
    at_minus_one = 0
    rest = p
    t_plus_one = CPoly([1, 1])
    while rest.degree > 0 and rest(-1) == 0:
        rest = rest // t_plus_one
        at_minus_one += 1
    image = cayley_transform(rest)
    inner = certify_real_rooted(image)
    count = at_minus_one + inner.count_on_locus
    note = f"{at_minus_one} root(s) at t=-1; Cayley image: {inner.notes}"
    if count == deg:
        return Certificate(PASS, UNIT_CIRCLE, deg, count, notes=note)
    return Certificate(
        FAIL, UNIT_CIRCLE, deg, count,
        witness=_float_witness(p, lambda r: abs(abs(r) - 1.0)),
        notes=note,
    )


def certify_interlacing(p: RPoly, q: RPoly) -> Certificate:
    """Exact check that p and q have simple real roots that strictly alternate."""
    if p.is_zero() or q.is_zero():
        raise InterlacingInputError("interlacing of a zero polynomial")
    if abs(p.degree - q.degree) > 1:
        raise InterlacingInputError(f"degree gap {abs(p.degree - q.degree)} exceeds 1")
    for name, f in (("p", p), ("q", q)):
        if f.degree > 0 and poly_gcd(f, f.derivative()).degree > 0:
            raise NotSquarefreeError(f"{name} has a repeated root")
    deg = p.degree + q.degree
    for f in (p, q):
        if f.degree > 0 and count_real_roots(f) != f.degree:
            total = sum(count_real_roots(g) for g in (p, q) if g.degree > 0)
            return Certificate(FAIL, REAL_LINE, deg, total, notes="a polynomial has non-real roots")
    if deg == 0 or p.degree == 0 or q.degree == 0:
        return Certificate(PASS, REAL_LINE, deg, deg, notes="vacuous interlacing")
    common = poly_gcd(p, q)
    if common.degree > 0:
        chain = sturm_chain(common)
        iv = isolate_real_roots(common, chain)
        w = complex(float(refine_root(chain, *iv[0])))
        return Certificate(FAIL, REAL_LINE, deg, 0, witness=w, notes="p and q share a root")
    prod = p * q
    chain_p = sturm_chain(p)
    labels = []
    intervals = isolate_real_roots(prod)
    for lo, hi in intervals:
        labels.append("p" if count_real_roots(p, lo, hi, chain=chain_p) == 1 else "q")
    ok = 1
    while ok < len(labels) and labels[ok] != labels[ok - 1]:
        ok += 1
    if ok == len(labels):
        return Certificate(PASS, REAL_LINE, deg, deg, notes="roots strictly interlace")
    witness = refine_root(sturm_chain(prod), *intervals[ok])
    return Certificate(
        FAIL, REAL_LINE, deg, ok,
        witness=complex(float(witness)),
        notes=f"two consecutive roots of {labels[ok]} with no root of the other between them",
    )


def check_simple(h) -> bool:
    """True iff gcd(h, h') is a nonzero constant.  Diagnostic only."""
    if h.is_zero():
        raise ValueError("simplicity of the zero polynomial")
    return poly_gcd(h, h.derivative()).degree == 0
