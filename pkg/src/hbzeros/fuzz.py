"""Randomized property driver.

Each trial draws a JSON-serializable *trial input* (an H_n instance, a
Lee-Yang coupling matrix, a Polya-shift case) from a per-trial seed, then
runs every check on it.  Because the input is plain JSON, any record can be
replayed to the same verdict without the generator.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .certify import certify_real_rooted, certify_unit_circle, sturm_chain
from .construct import (
    EXACT_CAP,
    Instance,
    RealRootedG,
    build_hn_recursive,
    build_hn_subset,
    circle_poly,
    lee_yang_poly,
    polya_shift,
)
from .hb_class import hb_random
from .numeric_core import DEFAULT_POLICY, TolerancePolicy, rational_from_json, rational_to_json
from .numeric_roots import find_roots, max_circle_residual, max_imag_residual
from .polynomial import FLOAT, CPoly, poly_gcd

MODES = ("exact", "float", "both")

# float cross-check thresholds; exact certificates are the ground truth
FLOAT_REAL_TOL = 1e-8
FLOAT_CIRCLE_TOL = 1e-8
POLYA_LEAD_RTOL = 1e-10
POLYA_DROP_TOL = 1e-12


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 100
    n_min: int = 1
    n_max: int = 4
    degree_max: int = 3
    seed: int = 0
    mode: str = "both"
    g_roots_max: int = 6
    cap: int = EXACT_CAP
    lee_yang_n_max: int = 8

    def validate(self):
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if not 1 <= self.n_min <= self.n_max:
            raise ConfigError("need 1 <= n_min <= n_max")
        if self.n_max > self.cap:
            raise ConfigError(f"n_max={self.n_max} exceeds the cap {self.cap}")
        if self.degree_max < 1:
            raise ConfigError("degree_max must be at least 1")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        return self


def trial_seed(seed: int, index: int) -> int:
    h = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]


# -- generators --------------------------------------------------------------

def random_rational(rng: random.Random, bound: int, nonzero: bool = False) -> Fraction:
    den = rng.randint(1, 4)
    while True:
        v = Fraction(rng.randint(-bound * den, bound * den), den)
        if v or not nonzero:
            return v


def random_g(rng: random.Random, roots_min: int, roots_max: int) -> RealRootedG:
    k = rng.randint(roots_min, max(roots_min, roots_max))
    q = rng.randint(0, min(2, k))
    roots = [random_rational(rng, 8, nonzero=True) for _ in range(k - q)]
    c = Fraction(rng.choice((-1, 1)) * rng.randint(1, 6), rng.randint(1, 3))
    return RealRootedG(c, q, Fraction(0), tuple(roots))


def random_instance(
    rng: random.Random, n: int, degree_max: int, g_roots_min: int = 0, g_roots_max: int = 6
) -> Instance:
    G = random_g(rng, g_roots_min, g_roots_max)
    a = [Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(n)]
    omegas = [hb_random(rng.randint(1, degree_max), rng.getrandbits(63)) for _ in range(n)]
    return Instance(G, tuple(a), tuple(omegas))


def random_coupling(rng: random.Random, n: int) -> list[list[Fraction]]:
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = A[j][i] = Fraction(rng.randint(-63, 63), 64)
    return A


def random_polya_case(rng: random.Random, degree_max: int = 6) -> dict:
    deg = rng.randint(1, degree_max)
    # roots on a grid with spacing >= 0.25 keep the float check well conditioned
    grid = rng.sample(range(-40, 41), deg)
    roots = [g / 4 + rng.uniform(-0.05, 0.05) for g in grid]
    lead = rng.uniform(0.5, 3.0) * rng.choice((-1, 1))
    a = rng.uniform(0.1, 2.0)
    alpha = rng.choice((0.0, rng.uniform(-1.0, 1.0)))
    if rng.random() < 0.25:
        b = math.pi / 2 - alpha * a
    else:
        while True:
            b = rng.uniform(-math.pi, math.pi)
            if abs(math.cos(b + alpha * a)) > 1e-3:
                break
    return {"roots": roots, "lead": lead, "a": a, "b": b, "alpha": alpha}


def generate_trial(config: FuzzConfig, index: int) -> dict:
    ts = trial_seed(config.seed, index)
    rng = random.Random(ts)
    n = rng.randint(config.n_min, config.n_max)
    inst = random_instance(rng, n, config.degree_max, 0, config.g_roots_max)
    ly_n = rng.randint(1, config.lee_yang_n_max)
    A = random_coupling(rng, ly_n)
    return {
        "index": index,
        "trial_seed": ts,
        "instance": inst.to_json(),
        "lee_yang": [[rational_to_json(v) for v in row] for row in A],
        "polya": random_polya_case(rng),
    }


# -- checks ------------------------------------------------------------------

def coefficient_bits(p) -> int:
    bits = 0
    for c in p.coeffs:
        for r in (c.re, c.im) if hasattr(c, "re") else (c,):
            bits = max(bits, r.numerator.bit_length(), r.denominator.bit_length())
    return bits


def sturm_bits(h: CPoly) -> int:
    if h.degree < 1 or not h.monic().is_real():
        return 0
    return max(coefficient_bits(p) for p in sturm_chain(h.monic().to_rpoly()).chain)


def squarefree_part(p: CPoly) -> CPoly:
    """``p / gcd(p, p')``: same zero set, all roots simple, so floats behave."""
    if p.degree < 1:
        return p
    return p // poly_gcd(p, p.derivative())


def polya_check(case: dict) -> dict:
    roots = case["roots"]
    F = CPoly.from_roots(roots, lead=case["lead"], backend=FLOAT)
    a, b, alpha = case["a"], case["b"], case["alpha"]
    out = polya_shift(F, a, b, alpha, drop_tol=POLYA_DROP_TOL)
    bp = b + alpha * a
    n = F.degree
    cn = F.coeffs[-1]
    dropped = out.degree == n - 1
    expect_drop = abs(math.cos(bp)) < POLYA_DROP_TOL
    if expect_drop:
        # cos b' is snapped to zero, leaving only the sine term of d_{n-1}
        expected_lead = -2 * a * n * cn * math.copysign(1.0, math.sin(bp))
    else:
        expected_lead = 2 * cn * math.cos(bp)
    lead_err = abs(out.leading() - expected_lead) / abs(expected_lead) if out.coeffs else math.inf
    imag = 0.0
    if out.degree >= 1:
        rs = find_roots(out)
        imag = max(abs(r.imag) for r in rs.roots) if rs.converged else math.inf
    ok = (dropped == expect_drop) and lead_err < POLYA_LEAD_RTOL and imag < FLOAT_REAL_TOL
    return {"ok": ok, "degree_in": n, "degree_out": out.degree, "expected_drop": expect_drop,
            "lead_rel_err": lead_err, "max_imag": imag}


def run_trial(trial: dict, mode: str = "both", policy: TolerancePolicy = DEFAULT_POLICY) -> dict:
    """Run every check on a trial input; returns a JSON-able record."""
    t0 = time.perf_counter()
    failures = []
    inst = Instance.from_json(trial["instance"])
    record = {
        "index": trial.get("index"),
        "trial_seed": trial.get("trial_seed"),
        "digest": digest(trial),
        "n": inst.n,
        "omega_degrees": [w.degree for w in inst.omegas],
        "g_zero_count": inst.G.zero_count,
    }
    residuals = {}
    h = build_hn_recursive(inst)
    if mode in ("exact", "both"):
        h_sub = build_hn_subset(inst)
        if h_sub != h:
            failures.append("subset and recursive expansions differ")
        if h.star() != h:
            failures.append("H_n has non-real coefficients")
        cert = certify_real_rooted(h)
        record["certificate"] = cert.to_json()
        record["coefficient_bits"] = coefficient_bits(h)
        record["sturm_bits"] = sturm_bits(h)
        if not cert.passed:
            failures.append("H_n is not real-rooted")
        P = circle_poly(inst.G, inst.a)
        if any(P.coeffs[j] != P.coeffs[P.degree - j].conj() for j in range(P.degree + 1)):
            failures.append("circle polynomial is not self-inversive")
        ccert = certify_unit_circle(P)
        record["circle_certificate"] = ccert.to_json()
        if not ccert.passed:
            failures.append("circle polynomial has a zero off the unit circle")
        A = [[rational_from_json(v) for v in row] for row in trial["lee_yang"]]
        L = lee_yang_poly(A)
        lcert = certify_unit_circle(L)
        record["lee_yang_certificate"] = lcert.to_json()
        if not lcert.passed:
            failures.append("Lee-Yang polynomial has a zero off the unit circle")
    if mode in ("float", "both"):
        if h.degree >= 1:
            rs = find_roots(squarefree_part(h), policy)
            residuals["hn_max_imag"] = max_imag_residual(rs) if rs.converged else math.inf
            if not residuals["hn_max_imag"] < FLOAT_REAL_TOL:
                failures.append("float roots of H_n are not real")
        P = squarefree_part(circle_poly(inst.G, inst.a))
        rs = find_roots(P, policy)
        residuals["circle_max_dev"] = max_circle_residual(rs) if rs.converged else math.inf
        if not residuals["circle_max_dev"] < FLOAT_CIRCLE_TOL:
            failures.append("float roots of the circle polynomial are off the circle")
        A = [[rational_from_json(v) for v in row] for row in trial["lee_yang"]]
        L = squarefree_part(lee_yang_poly(A))
        if L.degree >= 1:
            rs = find_roots(L, policy)
            residuals["lee_yang_max_dev"] = max_circle_residual(rs) if rs.converged else math.inf
            if not residuals["lee_yang_max_dev"] < FLOAT_CIRCLE_TOL:
                failures.append("float roots of the Lee-Yang polynomial are off the circle")
        pc = polya_check(trial["polya"])
        residuals["polya"] = pc
        if not pc["ok"]:
            failures.append("Polya shift check failed")
    record["residuals"] = residuals
    record["verdict"] = "FAIL" if failures else "PASS"
    record["failures"] = failures
    record["seconds"] = round(time.perf_counter() - t0, 6)
    record["input"] = trial
    return record


@dataclass
class Report:
    config: dict
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def pass_count(self) -> int:
        return sum(r["verdict"] == "PASS" for r in self.records)

    @property
    def fail_count(self) -> int:
        return len(self.records) - self.pass_count

    def summarize(self):
        strata = {}
        for r in self.records:
            key = f"n={r['n']},deg={max(r['omega_degrees'])},gzeros={r['g_zero_count']}"
            strata[key] = strata.get(key, 0) + 1
        res = [r["residuals"] for r in self.records]
        self.summary = {
            "trials": len(self.records),
            "pass_count": self.pass_count,
            "fail_count": self.fail_count,
            "max_hn_imag": max((x.get("hn_max_imag", 0.0) for x in res), default=0.0),
            "max_circle_dev": max((x.get("circle_max_dev", 0.0) for x in res), default=0.0),
            "max_lee_yang_dev": max((x.get("lee_yang_max_dev", 0.0) for x in res), default=0.0),
            "max_coefficient_bits": max((r.get("coefficient_bits", 0) for r in self.records), default=0),
            "max_sturm_bits": max((r.get("sturm_bits", 0) for r in self.records), default=0),
            "strata": dict(sorted(strata.items())),
        }
        return self

    def to_json(self) -> dict:
        return {"config": self.config, "records": self.records, "summary": self.summary}


def run_fuzz(config: FuzzConfig, policy: TolerancePolicy = DEFAULT_POLICY, progress=None) -> Report:
    config.validate()
    report = Report(config=asdict(config))
    for i in range(config.trials):
        report.records.append(run_trial(generate_trial(config, i), config.mode, policy))
        if progress:
            progress(i, report.records[-1])
    return report.summarize()


def replay(records_or_report, mode: str = "both", policy: TolerancePolicy = DEFAULT_POLICY) -> Report:
    """Re-run recorded trial inputs (a report, a record list, or a single record)."""
    if isinstance(records_or_report, dict) and "records" in records_or_report:
        items = records_or_report["records"]
        mode = records_or_report.get("config", {}).get("mode", mode)
    elif isinstance(records_or_report, dict):
        items = [records_or_report]
    else:
        items = list(records_or_report)
    inputs = [r["input"] if "input" in r else r for r in items if "input" in r or "instance" in r]
    report = Report(config={"replay": True, "mode": mode})
    for t in inputs:
        report.records.append(run_trial(t, mode, policy))
    return report.summarize()
