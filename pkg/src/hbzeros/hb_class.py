"""Hermite-Biehler polynomials: omega = p + i*q with all zeros in Im z > 0.

An HB polynomial is built from its real pair (p, q).  Membership is
certified exactly: p and q must have simple, real, strictly interlacing
roots, and the Wronskian ``p*q' - p'*q`` must be positive on the real line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .certify import (
    PASS,
    UPPER_HALF_PLANE,
    Certificate,
    NotSquarefreeError,
    certify_interlacing,
)
from .numeric_core import DEFAULT_POLICY, TolerancePolicy
from .numeric_roots import NotConvergedError, find_roots
from .polynomial import CPoly, RPoly, poly_from_parts, poly_split_real_imag, rpoly_from_json, rpoly_to_json


class NotHermiteBiehlerError(ValueError):
    def __init__(self, message: str, witness: Optional[complex] = None):
        super().__init__(message)
        self.witness = witness


class InterlacingError(NotHermiteBiehlerError):
    pass


class WronskianSignError(NotHermiteBiehlerError):
    pass


@dataclass(frozen=True)
class HBPoly:
    omega: CPoly
    p: RPoly
    q: RPoly
    certificate: Certificate

    @property
    def degree(self) -> int:
        return self.omega.degree

    def star(self) -> CPoly:
        return self.omega.star()

    def to_json(self) -> dict:
        return {"p": rpoly_to_json(self.p), "q": rpoly_to_json(self.q)}

    @classmethod
    def from_json(cls, d: dict) -> "HBPoly":
        # certificates are recomputed, never trusted from disk
        return hb_from_pair(rpoly_from_json(d["p"]), rpoly_from_json(d["q"]))


def wronskian(p: RPoly, q: RPoly) -> RPoly:
    return p * q.derivative() - p.derivative() * q


def hb_from_pair(p: RPoly, q: RPoly) -> HBPoly:
    """Certify ``p + i*q`` as Hermite-Biehler and wrap it."""
    if p.is_zero() or q.is_zero():
        raise NotHermiteBiehlerError("p and q must both be nonzero")
    if p.degree < 1 and q.degree < 1:
        raise NotHermiteBiehlerError("constant omega has no zeros; use exponential mode instead")
    try:
        inter = certify_interlacing(p, q)
    except NotSquarefreeError as exc:
        raise InterlacingError(str(exc)) from exc
    except ValueError as exc:
        raise InterlacingError(str(exc)) from exc
    if not inter.passed:
        raise InterlacingError(f"interlacing fails: {inter.notes}", inter.witness)
    # interlacing makes the Wronskian sign-constant, so one sample decides it
    w0 = wronskian(p, q)(0)
    if w0 <= 0:
        raise WronskianSignError(
            "p*q' - p'*q is negative; zeros would lie in the lower half-plane "
            "(swap p and q or negate q)"
        )
    omega = poly_from_parts(p, q)
    cert = Certificate(PASS, UPPER_HALF_PLANE, omega.degree, omega.degree, notes="interlacing with positive Wronskian")
    return HBPoly(omega, p, q, cert)


def hb_from_omega(omega: CPoly) -> HBPoly:
    p, q = poly_split_real_imag(omega)
    return hb_from_pair(p, q)


def _sample_points(omega: CPoly, count: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    c = np.abs(np.array(omega.to_float().coeffs))
    scale = 1.0 + float(np.max(c[:-1] / c[-1])) if len(c) > 1 else 1.0
    x = rng.uniform(-2 * scale, 2 * scale, count)
    y = rng.uniform(0.05 * scale, 2 * scale, count)
    return x + 1j * y


def hb_verify_numeric(w, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """Float cross-check of HB membership: roots above the axis, |w/w*| < 1 there.

    Accepts an :class:`HBPoly` or a bare exact ``CPoly``.
    """
    omega = w.omega if isinstance(w, HBPoly) else w
    rs = find_roots(omega, policy)
    if not rs.converged:
        raise NotConvergedError("root finder did not converge on omega")
    if any(r.imag <= policy.root_residual_tol for r in rs.roots):
        return False
    f = omega.to_float()
    fs = f.star()
    for z in _sample_points(omega, 64):
        z = complex(z)
        if not abs(f(z)) < abs(fs(z)):
            return False
    return True


def _distinct_rationals(rng: random.Random, k: int) -> list[Fraction]:
    seen = set()
    while len(seen) < k:
        seen.add(Fraction(rng.randint(-24, 24), rng.choice((1, 2, 3, 4))))
    return sorted(seen)


def hb_random(degree: int, seed: int) -> HBPoly:
    """Deterministic random HB polynomial of the given degree."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    rng = random.Random(seed)
    k = 2 * degree - rng.randint(0, 1)
    pts = _distinct_rationals(rng, k)
    p_roots, q_roots = pts[0::2], pts[1::2]
    lead_p = Fraction(rng.randint(1, 5), rng.randint(1, 3))
    lead_q = Fraction(rng.randint(1, 5), rng.randint(1, 3))
    p = RPoly.from_roots(p_roots, lead_p)
    q = RPoly.from_roots(q_roots, lead_q)
    if wronskian(p, q)(0) < 0:
        q = -q
    return hb_from_pair(p, q)
