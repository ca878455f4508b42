from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from hbzeros.certify import (
    FAIL,
    PASS,
    InterlacingInputError,
    NotSquarefreeError,
    cayley_transform,
    certify_interlacing,
    certify_real_rooted,
    certify_unit_circle,
    check_simple,
    count_real_roots,
    isolate_real_roots,
    sturm_chain,
)
from hbzeros.numeric_core import GaussianRational
from hbzeros.polynomial import CPoly, RPoly

from conftest import small_rationals

I = GaussianRational(0, 1)


def rp(*c):
    return RPoly(list(c))


def test_sturm_chain_examples():
    assert sturm_chain(rp(-1, 0, 1)).chain == (rp(-1, 0, 1), rp(0, 2), rp(1))
    assert sturm_chain(rp(1, 0, 1)).chain == (rp(1, 0, 1), rp(0, 2), rp(-1))
    assert sturm_chain(rp(0, 1)).chain == (rp(0, 1), rp(1))


def test_count_examples():
    assert count_real_roots(rp(-1, 0, 1)) == 2
    assert count_real_roots(rp(1, 0, 1)) == 0
    assert count_real_roots(rp(0, -1, 0, 1), Fraction(0), float("inf")) == 1


def test_count_refuses_repeated_roots():
    with pytest.raises(NotSquarefreeError):
        count_real_roots(RPoly.from_roots([1, 1]))


def test_certify_real_examples():
    c = certify_real_rooted(CPoly([2, -2]))
    assert c.verdict == PASS and c.degree == 1 and c.count_on_locus == 1
    c = certify_real_rooted(CPoly([1, 0, 1]))
    assert c.verdict == FAIL and abs(c.witness - 1j) < 1e-9
    c = certify_real_rooted(CPoly([1, -2, 1]))
    assert c.verdict == PASS and c.count_on_locus == 2
    assert "multiplicity 2" in c.notes


def test_certify_nonreal_coefficients():
    # (z - 1)(z - i): one real root, one not
    p = CPoly([I, -1 - I, 1])
    c = certify_real_rooted(p)
    assert c.verdict == FAIL and c.count_on_locus == 1


def test_certify_rejects_float_backend():
    with pytest.raises(TypeError):
        certify_real_rooted(CPoly([1.0, 1.0], "float"))


def test_cayley_examples():
    assert cayley_transform(CPoly([-1, 1])) == CPoly([0, 2 * I])
    assert cayley_transform(CPoly([1, 1])) == CPoly([2])
    assert cayley_transform(CPoly([1, 0, 1])) == CPoly([2, 0, -2])


def test_unit_circle_examples():
    assert certify_unit_circle(CPoly([1, 0, 1])).passed
    c = certify_unit_circle(CPoly([1, 1, 1, 1]))
    assert c.passed and c.count_on_locus == 3
    c = certify_unit_circle(CPoly([-2, 1]))
    assert c.verdict == FAIL and abs(c.witness - 2) < 1e-9


def test_unit_circle_multiple_root_at_minus_one():
    assert certify_unit_circle(CPoly([1, 3, 3, 1])).passed


def test_interlacing_examples():
    assert certify_interlacing(rp(-1, 0, 1), rp(0, 1)).passed
    assert certify_interlacing(rp(1), rp(0, 1)).passed
    c = certify_interlacing(rp(-1, 0, 1), rp(-3, 1))
    assert c.verdict == FAIL and abs(c.witness - 1) < 1e-9


def test_interlacing_input_errors():
    with pytest.raises(InterlacingInputError):
        certify_interlacing(rp(1), rp(0, 0, 1))
    with pytest.raises(NotSquarefreeError):
        certify_interlacing(RPoly.from_roots([1, 1]), rp(0, 1))


def test_interlacing_common_root_fails():
    c = certify_interlacing(RPoly.from_roots([0, 2]), RPoly.from_roots([2]))
    assert c.verdict == FAIL and abs(c.witness - 2) < 1e-9


def test_check_simple_examples():
    assert check_simple(CPoly([-1, 0, 1]))
    assert not check_simple(CPoly([1, -2, 1]))
    assert check_simple(CPoly([-1, 0, 2]))


distinct_roots = st.lists(small_rationals, min_size=1, max_size=7, unique=True)


@given(distinct_roots, st.lists(st.tuples(small_rationals, small_rationals.filter(bool)), max_size=2, unique_by=lambda t: (t[0], abs(t[1]))))
def test_sturm_counts_planted_roots(roots, quads):
    # planted real roots times irreducible quadratics (z - u)^2 + v^2
    p = RPoly.from_roots(roots)
    for u, v in quads:
        p = p * rp(u * u + v * v, -2 * u, 1)
    assert count_real_roots(p) == len(roots)
    cert = certify_real_rooted(p.to_cpoly())
    assert cert.passed == (not quads)
    assert cert.count_on_locus == len(roots)


@given(distinct_roots, small_rationals, small_rationals)
def test_sturm_interval_counts(roots, lo, hi):
    assume(lo < hi)
    p = RPoly.from_roots(roots)
    assert count_real_roots(p, lo, hi) == sum(lo < r <= hi for r in roots)


@given(distinct_roots)
def test_isolation_intervals(roots):
    iv = isolate_real_roots(RPoly.from_roots(roots))
    assert len(iv) == len(roots)
    for (lo, hi), r in zip(iv, sorted(roots)):
        assert lo < r <= hi


@given(st.lists(st.tuples(small_rationals, small_rationals), min_size=1, max_size=5))
def test_cayley_maps_real_roots_to_circle(pairs):
    # roots t = (1 + i x) / (1 - i x) for real x lie on the circle and pull back to x
    xs = sorted({x for x, _ in pairs})
    p = CPoly([1])
    for x in xs:
        t = (1 + I * x) / (1 - I * x)
        assert t.norm() == 1
        p = p * CPoly([-t, 1])
    q = cayley_transform(p)
    for x in xs:
        assert q(GaussianRational(x)) == 0
    assert certify_unit_circle(p).passed


@given(st.lists(small_rationals, min_size=2, max_size=8, unique=True), st.lists(small_rationals, min_size=32, max_size=32))
def test_interlacing_wronskian_sign(pts, xs):
    pts = sorted(pts)
    p = RPoly.from_roots(pts[0::2])
    q = RPoly.from_roots(pts[1::2])
    assert certify_interlacing(p, q).passed
    w = p * q.derivative() - p.derivative() * q
    signs = {(w(x) > 0) - (w(x) < 0) for x in xs}
    assert len(signs) == 1 and 0 not in signs
