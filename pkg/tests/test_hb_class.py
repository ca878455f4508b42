import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hbzeros.certify import PASS
from hbzeros.hb_class import (
    HBPoly,
    InterlacingError,
    NotHermiteBiehlerError,
    WronskianSignError,
    hb_from_omega,
    hb_from_pair,
    hb_random,
    hb_verify_numeric,
)
from hbzeros.numeric_core import GaussianRational
from hbzeros.numeric_roots import find_roots
from hbzeros.polynomial import CPoly, RPoly, poly_from_parts

from conftest import small_rationals

I = GaussianRational(0, 1)


def test_pair_examples():
    w = hb_from_pair(RPoly([1]), RPoly([0, 1]))
    assert w.omega == CPoly([1, I])
    assert w.omega(I) == 0
    w = hb_from_pair(RPoly([0, 1]), RPoly([-1]))
    assert w.omega == CPoly([-I, 1])
    assert w.certificate.verdict == PASS


def test_pair_rejects_non_interlacing():
    with pytest.raises(InterlacingError):
        hb_from_pair(RPoly([-1, 0, 1]), RPoly([-3, 1]))


def test_pair_rejects_wrong_orientation():
    with pytest.raises(WronskianSignError):
        hb_from_pair(RPoly([0, 1]), RPoly([1]))


def test_pair_rejects_constants_and_zero():
    with pytest.raises(NotHermiteBiehlerError):
        hb_from_pair(RPoly([1]), RPoly([2]))
    with pytest.raises(NotHermiteBiehlerError):
        hb_from_pair(RPoly([0, 1]), RPoly([]))


def test_verify_numeric_examples():
    assert hb_verify_numeric(CPoly([-I, 1]))
    assert hb_verify_numeric(hb_from_pair(RPoly([1]), RPoly([0, 1])))
    assert not hb_verify_numeric(CPoly([I, 1]))


def test_from_omega_round_trip():
    w = hb_random(3, 5)
    assert hb_from_omega(w.omega).omega == w.omega


def test_json_round_trip_recertifies():
    w = hb_random(2, 11)
    back = HBPoly.from_json(w.to_json())
    assert back == w


def test_random_degree_one_shape():
    w = hb_random(1, 42)
    assert w.degree == 1 and w.certificate.passed
    const, lead = w.omega.coeffs
    assert (-const / lead).im > 0
    assert hb_random(1, 42).omega == w.omega


@given(st.integers(1, 5), st.integers(0, 2**63))
def test_random_is_hb(degree, seed):
    w = hb_random(degree, seed)
    assert w.degree == degree and w.certificate.passed
    rs = find_roots(w.omega)
    assert rs.converged and min(r.imag for r in rs.roots) > 0
    assert hb_verify_numeric(w)


@given(st.integers(1, 4), st.integers(0, 2**63))
def test_modulus_ratio(degree, seed):
    w = hb_random(degree, seed)
    f, fs = w.omega.to_float(), w.star().to_float()
    rng = np.random.default_rng(seed % 2**32)
    for x, y in zip(rng.uniform(-30, 30, 16), rng.uniform(0.01, 30, 16)):
        assert abs(f(complex(x, y))) < abs(fs(complex(x, y)))
        assert abs(abs(f(complex(x))) - abs(fs(complex(x)))) <= 1e-9 * abs(fs(complex(x)))


@given(
    st.lists(small_rationals, min_size=0, max_size=4, unique=True),
    st.lists(small_rationals, min_size=0, max_size=4, unique=True),
    st.sampled_from([1, -1]),
)
def test_exact_and_numeric_membership_agree(p_roots, q_roots, sign):
    p = RPoly.from_roots(p_roots)
    q = RPoly.from_roots(q_roots, sign)
    try:
        w = hb_from_pair(p, q)
        exact = True
        omega = w.omega
    except NotHermiteBiehlerError:
        exact = False
        omega = poly_from_parts(p, q)
    if omega.degree < 1:
        return
    assert hb_verify_numeric(omega) == exact
