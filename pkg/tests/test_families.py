from math import cos, log, pi

import numpy as np
import pytest

from superzeta import families as F
from superzeta import primary as pr
from superzeta.errors import DomainError, PoleError, RouteUnavailable

GAMMA = 0.5772156649015329
ZETA1_AT_1 = 1 + GAMMA / 2 - 0.5 * log(4 * pi)
INSTANCES = ("riemann", "dirichlet:-4", "dedekind:-4")


def _st(P):
    return P.stirling


# --- family 1 -----------------------------------------------------------------------

def test_direct_vanishes_at_half_for_odd_order(zero_cache):
    P, c = zero_cache("riemann")
    r = F.z1_direct(P, c, 3, 0.5)
    assert r.method == "direct_sum" and r.zeros_used == len(c)
    assert abs(r.value) <= r.err_est + 1e-14


@pytest.mark.parametrize("spec", INSTANCES)
@pytest.mark.parametrize("s", [2, 3, 4])
@pytest.mark.parametrize("x", [1.0, 0.5, 2.0])
def test_direct_matches_closed(zero_cache, spec, s, x):
    P, c = zero_cache(spec)
    d = F.z1_direct(P, c, s, x)
    k = F.z1_closed(P, "plus_n", x, s)
    assert abs(d.value - k.value) <= d.err_est + 1e-8


@pytest.mark.parametrize("spec", INSTANCES)
def test_direct_reflection(zero_cache, spec):
    P, c = zero_cache(spec)
    a = F.z1_direct(P, c, 2, 2.0)
    b = F.z1_direct(P, c, 2, -1.0)
    assert abs(a.value - b.value) <= a.err_est + b.err_est


def test_direct_domain_errors(zero_cache):
    P, c = zero_cache("riemann")
    with pytest.raises(DomainError):
        F.z1_direct(P, c, 0.5, 2.0)
    with pytest.raises(DomainError):
        F.z1_direct(P, c, 2.5, 0.5)
    with pytest.raises(DomainError):
        F.z1_direct(P, c.truncate(5), 2, 2.0)


@pytest.mark.parametrize("spec", INSTANCES)
@pytest.mark.parametrize("x", [2.0, 0.7, 3 + 1j])
def test_integral_at_zero(spec, x):
    P = pr.build_primary(spec)
    st = _st(P)
    r = F.z1_integral(P, 0.0, x)
    assert r.method == "integral_rep"
    assert abs(r.value - (st.a1 * x + st.a0 + P.q)) < 1e-9


@pytest.mark.parametrize("spec", INSTANCES)
def test_integral_pole_residue(spec):
    P = pr.build_primary(spec)
    res = F.z1_laurent(P, 1.0, 2.0, -1)
    assert abs(res + _st(P).a1) < 1e-6
    s = 1 - 1e-4
    assert abs((s - 1) * F.z1_integral(P, s, 2.0).value + _st(P).a1) < 1e-3
    with pytest.raises(PoleError):
        F.z1_integral(P, 1.0, 2.0)


@pytest.mark.parametrize("spec", INSTANCES)
def test_integral_split_point_independence(spec):
    P = pr.build_primary(spec)
    a = F.z1_integral(P, 0.5, 2.0, Y=1.5).value
    b = F.z1_integral(P, 0.5, 2.0, Y=2.0).value
    c = F.z1_integral(P, 0.5, 2.0).value
    assert abs(a - b) < 1e-8 and abs(a - c) < 1e-8


@pytest.mark.parametrize("spec", INSTANCES)
@pytest.mark.parametrize("n", [2, 3])
def test_integral_reaches_closed_values(spec, n):
    # the representation is analytic at s = 2, 3, ...; it must reproduce
    # the log-derivative values there
    P = pr.build_primary(spec)
    a = F.z1_laurent(P, float(n), 2.0, 0, h=0.1)
    b = F.z1_closed(P, "plus_n", 2.0, n).value
    assert abs(a - b) < 1e-8


def test_integral_matches_direct_right_of_one(zero_cache):
    P, c = zero_cache("riemann", 500.0)
    for s in (1.5, 2.5 + 0.5j):
        d = F.z1_direct(P, c, s, 2.0)
        i = F.z1_integral(P, s, 2.0)
        assert abs(d.value - i.value) <= d.err_est + 1e-8


def test_continuity_across_one(zero_cache):
    P, c = zero_cache("riemann", 500.0)
    a1 = _st(P).a1
    left = F.z1_integral(P, 0.999, 2.0).value + a1 / (0.999 - 1)
    right = F.z1_direct(P, c, 1.001, 2.0).value + a1 / (1.001 - 1)
    # the two sides differ by twice the linear Laurent term, 2e-3 * c1;
    # the symmetric mean removes it and lands on the finite part
    assert abs(F.z1_integral(P, 1.001, 2.0).value + a1 / 0.001 - right) <= 1e-4
    assert abs(0.5 * (left + right) - F.z1_closed(P, "fp1", 2.0).value) <= 1e-4


def test_closed_examples():
    z = pr.build_primary("riemann")
    chi4 = pr.build_primary("dirichlet:-4")
    assert abs(F.z1_closed(z, "zero", 1.0).value - 2) < 1e-14
    assert abs(F.z1_closed(z, "plus_n", 1.0, 1).value - ZETA1_AT_1) < 1e-10
    assert abs(ZETA1_AT_1 - 0.0230957) < 1e-7
    assert abs(F.z1_closed(chi4, "deriv0", 1.0).value - (log(4) - 0.5 * log(pi))) < 1e-10
    assert abs(F.z1_closed(z, "fp1", 0.5).value - 0.5 * log(2 * pi)) < 1e-10
    assert F.z1_closed(z, "plus_n", 0.5, 5).value == 0
    with pytest.raises(DomainError):
        F.z1_closed(z, "plus_n", 2.0, 0)
    with pytest.raises(DomainError):
        F.z1_closed(z, "bogus", 2.0)


@pytest.mark.parametrize("spec", INSTANCES)
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_closed_minus_n_matches_integral(spec, n):
    P = pr.build_primary(spec)
    a = F.z1_closed(P, "minus_n", 2.0, n).value
    b = F.z1_integral(P, -n, 2.0).value
    assert abs(a - b) < 1e-8 * max(1, abs(a))


@pytest.mark.parametrize("spec", INSTANCES)
def test_closed_deriv0_and_fp_match_contour(spec):
    P = pr.build_primary(spec)
    assert abs(F.z1_closed(P, "deriv0", 2.0).value - F.z1_integral_deriv0(P, 2.0).value) < 1e-8
    assert abs(F.z1_closed(P, "fp1", 2.0).value - F.z1_integral_fp1(P, 2.0).value) < 1e-8


@pytest.mark.parametrize("spec", INSTANCES)
def test_anomaly(spec):
    P = pr.build_primary(spec)
    d = F.z1_closed(P, "plus_n", 2.0, 1).value - F.z1_closed(P, "fp1", 2.0).value
    assert abs(d - _st(P).b1) < 1e-12


def test_eval_records_route(zero_cache):
    P, c = zero_cache("riemann")
    assert F.z1_eval(P, 2, 2.0, c).method == "closed_form"
    assert F.z1_eval(P, -1, 2.0).method == "closed_form"
    assert F.z1_eval(P, 2.5, 2.0, c).method == "direct_sum"
    assert F.z1_eval(P, 2.5, 2.0).method == "integral_rep"
    assert F.z1_eval(P, 0.3, 2.0, c).method == "integral_rep"
    with pytest.raises(RouteUnavailable):
        F.z1_eval(P, 2.5, 2.0, method="closed_form")
    with pytest.raises(RouteUnavailable):
        F.z1_eval(P, 2.5, 2.0, method="direct_sum")


# --- family 2 -----------------------------------------------------------------------

def test_z2_origin_relation_example():
    z = pr.build_primary("riemann")
    r = F.z2_eval(z, None, 0.3, 0.0)
    assert r.method == "relation"
    ref = F.z1_integral(z, 0.6, 0.5).value / (2 * cos(0.3 * pi))
    assert abs(r.value - ref) < 1e-12


def test_z2_at_quarter_shift(zero_cache):
    P, c = zero_cache("riemann")
    closed = F.z2_closed(P, "plus_m", 0.25, 1).value
    assert abs(closed - ZETA1_AT_1) < 1e-10
    d = F.z2_eval(P, c, 1.0, 0.25)
    assert d.method == "direct_sum"
    assert abs(d.value - ZETA1_AT_1) <= d.err_est + 1e-8


@pytest.mark.parametrize("spec", INSTANCES)
@pytest.mark.parametrize("v", [0.0, 0.3, -2.0 + 1j])
def test_z2_at_zero_independent_of_shift(zero_cache, spec, v):
    P, c = zero_cache(spec)
    st = _st(P)
    ref = 0.5 * (0.5 * st.a1 + st.a0 + P.q)
    assert abs(F.z2_eval(P, c, 0.0, v).value - ref) < 1e-10
    assert abs(F.z2_closed(P, "zero", v).value - ref) < 1e-14


def test_z2_closed_examples():
    z = pr.build_primary("riemann")
    assert abs(F.z2_closed(z, "zero").value - 7 / 8) < 1e-14
    half = F.z1_closed(z, "plus_n", 0.5, 2).value
    assert abs(F.z2_closed(z, "plus_m", 0.0, 1).value + 0.5 * half) < 1e-12
    # degree-one polynomial in v
    vals = [F.z2_closed(z, "minus_m", v, 1).value for v in (0.0, 1.0, 2.5)]
    assert abs(vals[1] - vals[0] - F.z2_closed(z, "zero").value) < 1e-12
    assert abs((vals[2] - vals[0]) / 2.5 - (vals[1] - vals[0])) < 1e-12
    # below the first zero Xi stays positive on the line; beyond it log Xi has no preferred branch
    assert abs(F.z2_closed(z, "deriv0", -1.0).value.imag) < 1e-14
    with pytest.raises(DomainError):
        F.z2_closed(z, "deriv0", -300.0)


@pytest.mark.parametrize("spec", INSTANCES)
def test_z2_expansion_matches_direct(zero_cache, spec):
    P, c = zero_cache(spec)
    for sigma, v in ((2.0, 3.0), (1.5, -4.0 + 2j)):
        e = F.z2_expansion(P, c, sigma, v)
        d = F.z2_direct(P, c, sigma, v)
        assert abs(e.value - d.value) <= e.err_est + d.err_est + 1e-9
    with pytest.raises(RouteUnavailable):
        F.z2_expansion(P, c, 2.0, 0.9 * c.ordinates[0] ** 2)


@pytest.mark.parametrize("spec", INSTANCES)
@pytest.mark.parametrize("m", [1, 2])
def test_z2_closed_plus_m_matches_direct(zero_cache, spec, m):
    P, c = zero_cache(spec, 500.0)
    for v in (0.25, 2.0):
        k = F.z2_closed(P, "plus_m", v, m).value
        d = F.z2_direct(P, c, m, v)
        assert abs(k - d.value) <= d.err_est + 1e-8


@pytest.mark.parametrize("spec", INSTANCES)
def test_z2_branch_symmetry(spec):
    P = pr.build_primary(spec)
    v = 0.7 + 0.4j
    for marker, m in (("deriv0", None), ("plus_m", 2)):
        a = F.z2_closed(P, marker, v, m, branch=1).value
        b = F.z2_closed(P, marker, v, m, branch=-1).value
        assert abs(a - b) < 1e-9


@pytest.mark.parametrize("spec", INSTANCES)
def test_z2_polar_data(spec):
    P = pr.build_primary(spec)
    st = _st(P)
    d0 = F.z2_polar(P, 0)
    assert d0.order == 2 and d0.location == 0.5
    assert abs(d0.leading_coeff - st.a1 / (4 * pi)) < 1e-15
    assert abs(d0.residue - st.b1 / (2 * pi)) < 1e-15
    d1 = F.z2_polar(P, 1, 0.0)
    ref = -(pr.shadow_zeta(P, -1, 0.5) + P.q / 2) / (2 * pi)
    assert d1.order == 1 and abs(d1.residue - ref) < 1e-12
    # symmetric limit removes the simple-pole term
    eps = 1e-3
    lim = 0.5 * eps**2 * (F.z2_relation(P, 0.5 + eps).value + F.z2_relation(P, 0.5 - eps).value)
    assert abs(lim - st.a1 / (4 * pi)) < 1e-6


@pytest.mark.parametrize("spec", INSTANCES)
def test_z2_residue_off_half(spec):
    P = pr.build_primary(spec)
    f = lambda s: F.z1_integral_many(P, 2 * s, 0.5) / (2 * np.cos(pi * s))
    res = F.laurent_coefficient(f, -0.5, -1, h=0.1, nodes=32)
    assert abs(res - F.z2_polar(P, 1).residue) < 1e-8


# --- family 3 -----------------------------------------------------------------------

@pytest.mark.parametrize("spec", INSTANCES)
def test_z3_origin_equals_z2(zero_cache, spec):
    P, c = zero_cache(spec)
    a = F.z3_eval(P, c, 2.0, 0.0).value
    b = F.z2_eval(P, c, 2.0, 0.0).value
    assert abs(a - b) < 1e-14


@pytest.mark.parametrize("spec", INSTANCES)
def test_z3_binary_relation(zero_cache, spec):
    P, c = zero_cache(spec, 500.0)
    t = 0.3
    up = F.z3_direct(P, c, 1.0, 1j * t)
    dn = F.z3_direct(P, c, 1.0, -1j * t)
    rhs = F.z1_closed(P, "plus_n", 0.5 + t, 2).value
    assert abs(-(up.value + dn.value) - rhs) <= up.err_est + dn.err_est + 1e-8
    ue = F.z3_expansion(P, c, 1.0, 1j * t).value
    de = F.z3_expansion(P, c, 1.0, -1j * t).value
    assert abs(-(ue + de) - rhs) < 1e-8


def test_z3_partial_sums_increase_toward_value(zero_cache):
    P, c = zero_cache("riemann")
    full = F.z3_direct(P, c, 2.0, 1.0)
    partial = [F.z3_direct(P, c.truncate(T), 2.0, 1.0) for T in (20, 40, 60, 80, 100)]
    raw = [np.sum((c.truncate(T).ordinates + 1.0) ** -4.0) for T in (20, 40, 60, 80, 100)]
    assert all(a < b for a, b in zip(raw, raw[1:]))
    assert raw[-1] < full.value.real
    assert all(abs(p.value - full.value) <= p.err_est + full.err_est for p in partial[1:])


@pytest.mark.parametrize("spec", INSTANCES)
def test_z3_polar_data(spec):
    P = pr.build_primary(spec)
    st = _st(P)
    y = 0.3
    d = F.z3_polar(P, 1, y)
    assert abs(d.residue + st.a1 * y / (2 * pi)) < 1e-15
    assert d.location == 0
    assert abs(F.z3_polar(P, 1, 0.0).finite_part - (0.25 * st.a1 + 0.5 * (st.a0 + P.q))) < 1e-15
    assert abs(F.z3_polar(P, 2, 0.0).residue - F.z2_polar(P, 1, 0.0).residue) < 1e-15
    d0 = F.z3_polar(P, 0, y)
    assert d0.order == 2 and abs(d0.leading_coeff - st.a1 / (4 * pi)) < 1e-15


# --- multiplicativity ---------------------------------------------------------------

@pytest.mark.parametrize("marker,n", [("zero", None), ("deriv0", None), ("fp1", None),
                                      ("minus_n", 2), ("plus_n", 1), ("plus_n", 2), ("plus_n", 4)])
def test_gaussian_field_values_add_up(marker, n):
    K, z, b = (pr.build_primary(s) for s in ("dedekind:-4", "riemann", "dirichlet:-4"))
    for x in (2.0, 0.5 + 3j):
        a = F.z1_closed(K, marker, x, n).value
        ref = F.z1_closed(z, marker, x, n).value + F.z1_closed(b, marker, x, n).value
        assert abs(a - ref) < 1e-9
