"""Floating-point root finding and argument-principle zero counting.

These are cross-checks for the exact certificates, and the only way to
look at zeros of the exponential sums, which are not polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .numeric_core import DEFAULT_POLICY, TolerancePolicy, complex_to_json
from .polynomial import CPoly


class NotConvergedError(RuntimeError):
    pass


class ZeroNearContourError(RuntimeError):
    """A zero sits within the contour margin of the box boundary."""


class SubdivisionLimitError(RuntimeError):
    pass


@dataclass
class RootSet:
    roots: list[complex]
    residuals: list[float]
    converged: bool

    def to_json(self) -> dict:
        return {
            "roots": [complex_to_json(r) for r in self.roots],
            "residuals": list(self.residuals),
            "converged": self.converged,
        }


@dataclass(frozen=True)
class Box:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError(f"degenerate box {self}")

    def corners(self) -> list[complex]:
        return [
            complex(self.re_lo, self.im_lo),
            complex(self.re_hi, self.im_lo),
            complex(self.re_hi, self.im_hi),
            complex(self.re_lo, self.im_hi),
        ]


def _float_coeffs(p: CPoly) -> np.ndarray:
    if p.is_exact:
        p = p.to_float()
    return np.array(p.coeffs, dtype=complex)


def _backward_residuals(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``|p(z)| / sum |c_k| |z|^k`` for each z."""
    val = np.polyval(c[::-1], z)
    scale = np.polyval(np.abs(c[::-1]), np.abs(z))
    out = np.abs(val) / np.where(scale > 0, scale, 1.0)
    return np.where(np.abs(val) == 0, 0.0, out)


def find_roots(p: CPoly, policy: TolerancePolicy = DEFAULT_POLICY) -> RootSet:
    """All roots of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Converged means every backward residual is below ``policy.root_residual_tol``.
    """
    c = _float_coeffs(p)
    n = len(c) - 1
    if n < 1:
        raise ValueError("find_roots needs degree >= 1")
    c = c / c[-1]
    # zeros at the origin are peeled off exactly
    k0 = 0
    while c[k0] == 0:
        k0 += 1
    work = c[k0:]
    m = len(work) - 1
    roots = np.zeros(n, dtype=complex)
    if m > 0:
        radius = max(abs(work[k]) ** (1.0 / (m - k)) for k in range(m))
        angles = 2 * np.pi * np.arange(m) / m + 0.4
        z = radius * np.exp(1j * angles)
        rev = work[::-1]
        drev = (work[1:] * np.arange(1, m + 1))[::-1]
        for _ in range(policy.max_iterations):
            pv = np.polyval(rev, z)
            dv = np.polyval(drev, z)
            with np.errstate(divide="ignore", invalid="ignore"):
                newton = np.where(pv == 0, 0, pv / dv)
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, np.inf)
                repel = np.sum(1.0 / diff, axis=1)
                step = newton / (1 - newton * repel)
            step = np.where(np.isfinite(step), step, 0)
            z = z - step
            if np.all(np.abs(step) <= 4 * np.finfo(float).eps * (1 + np.abs(z))):
                break
        roots[:m] = z
    residuals = _backward_residuals(c, roots)
    converged = bool(np.all(np.isfinite(roots)) and np.all(residuals < policy.root_residual_tol))
    order = np.lexsort((roots.imag, roots.real))
    return RootSet([complex(r) for r in roots[order]], [float(r) for r in residuals[order]], converged)


def _require_converged(r: RootSet):
    if not r.converged:
        raise NotConvergedError("root set did not converge")


def max_imag_residual(r: RootSet) -> float:
    _require_converged(r)
    return max((abs(z.imag) for z in r.roots), default=0.0)


def max_circle_residual(r: RootSet) -> float:
    _require_converged(r)
    return max((abs(abs(z) - 1.0) for z in r.roots), default=0.0)


# -- argument principle ------------------------------------------------------

def _evaluators(f) -> tuple[Callable, Callable]:
    from .construct import ExpSum

    if isinstance(f, ExpSum):
        return f.evaluate_array, f.derivative_array
    if isinstance(f, CPoly):
        c = _float_coeffs(f)
        rev = c[::-1]
        drev = (c[1:] * np.arange(1, len(c)))[::-1] if len(c) > 1 else np.zeros(1, dtype=complex)
        return (lambda z: np.polyval(rev, z)), (lambda z: np.polyval(drev, z))
    raise TypeError(f"cannot count zeros of {type(f).__name__}")


def count_zeros_box(
    f: Union["ExpSum", CPoly],
    box: Box,
    policy: TolerancePolicy = DEFAULT_POLICY,
    max_points: int = 2_000_000,
) -> int:
    """Number of zeros of ``f`` inside ``box`` by the argument principle.

    The boundary is sampled at spacing ``policy.contour_margin``; any sample
    whose Newton step ``|f/f'|`` is shorter than the margin means a zero is
    too close to the contour.  Segments whose phase moves by pi/2 or more are
    bisected until the phase is tracked safely.
    """
    fval, fder = _evaluators(f)
    margin = policy.contour_margin
    corners = box.corners()
    pts = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        k = max(8, int(math.ceil(abs(b - a) / margin)))
        pts.append(a + (b - a) * np.arange(k) / k)
    z = np.concatenate(pts)
    z = np.append(z, corners[0])
    w = fval(z)
    if not np.all(np.isfinite(w)):
        raise ZeroNearContourError("f overflowed on the contour; shrink the box")
    dw = fder(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        dist = np.abs(w) / np.abs(dw)
    if np.any(w == 0) or np.any(dist < margin):
        i = int(np.argmin(np.where(np.isfinite(dist), dist, np.inf)))
        raise ZeroNearContourError(
            f"a zero lies within {margin} of the box boundary near {complex(z[i])}; perturb the box"
        )
    for _ in range(60):
        dphi = np.angle(w[1:] / w[:-1])
        bad = np.nonzero(np.abs(dphi) >= np.pi / 2)[0]
        if bad.size == 0:
            total = float(np.sum(dphi)) / (2 * np.pi)
            count = int(round(total))
            if abs(total - count) > 1e-6:
                raise SubdivisionLimitError(f"winding number {total} is not an integer")
            return count
        if z.size + bad.size > max_points:
            break
        mids = (z[bad] + z[bad + 1]) / 2
        wm = fval(mids)
        if np.any(wm == 0) or not np.all(np.isfinite(wm)):
            raise ZeroNearContourError("f vanished or overflowed on the contour; perturb the box")
        z = np.insert(z, bad + 1, mids)
        w = np.insert(w, bad + 1, wm)
    raise SubdivisionLimitError("phase tracking needed too many subdivisions")
