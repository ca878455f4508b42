"""Exact construction and zero-locus certification of sums of products of
Hermite-Biehler polynomials."""

from .certify import (
    Certificate,
    SturmChain,
    cayley_transform,
    certify_interlacing,
    certify_real_rooted,
    certify_unit_circle,
    check_simple,
    count_real_roots,
    sturm_chain,
)
from .construct import (
    ExpSum,
    Instance,
    RealRootedG,
    build_hn,
    build_hn_recursive,
    build_hn_subset,
    circle_poly,
    eval_g_imaginary,
    eval_pn,
    exp_sum_build,
    exp_sum_eval,
    lee_yang_eval,
    lee_yang_poly,
    orthogonal_h2,
    polya_shift,
)
from .fuzz import FuzzConfig, Report, replay, run_fuzz
from .hb_class import HBPoly, hb_from_pair, hb_random, hb_verify_numeric
from .numeric_core import GaussianRational, TolerancePolicy, gr_to_float
from .numeric_roots import Box, RootSet, count_zeros_box, find_roots, max_circle_residual, max_imag_residual
from .polynomial import CPoly, RPoly, poly_eval, poly_gcd, poly_split_real_imag, poly_star

__version__ = "0.1.0"
