import numpy as np
import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from superzeta import primary as pr
from superzeta import zeros as zr
from superzeta.errors import DomainError


def _riemann_ordinates(n):
    return np.array([float(mpmath.zetazero(k).imag) for k in range(1, n + 1)])


def test_riemann_low_zeros():
    P = pr.build_primary("riemann")
    c = zr.locate_zeros(P, 30)
    assert len(c) == 3
    lo, hi = c.enclosures[0]
    assert lo <= 14.134725141734693 <= hi
    assert c.width_bound <= 1e-9
    assert np.allclose(c.ordinates, _riemann_ordinates(3), atol=1e-9)


def test_beta_low_zeros():
    P = pr.build_primary("dirichlet:-4")
    c = zr.locate_zeros(P, 12)
    assert len(c) == 2
    lo, hi = c.enclosures[0]
    assert lo <= 6.020948904697597 <= hi
    assert abs(c.ordinates[1] - 10.243770304166555) < 1e-8


def test_gaussian_field_merges_factor_lists():
    K = pr.build_primary("dedekind:-4")
    c = zr.locate_zeros(K, 15)
    assert np.allclose(c.ordinates, [6.020948904697597, 10.243770304166555, 12.988098012312424, 14.134725141734693],
                       atol=1e-8)


@pytest.mark.parametrize("D", [-4, -3, 5])
def test_dedekind_cache_is_union(zero_cache, D):
    K, cK = zero_cache(f"dedekind:{D}")
    _, cz = zero_cache("riemann")
    _, cl = zero_cache(f"dirichlet:{D}")
    merged = np.sort(np.concatenate([cz.ordinates, cl.ordinates]))
    assert len(cK) == len(merged)
    assert np.max(np.abs(cK.ordinates - merged)) < 2e-9


def test_empty_cache_below_first_zero():
    P = pr.build_primary("riemann")
    c = zr.locate_zeros(P, 5)
    assert len(c) == 0
    cert = zr.verify_count(P, c)
    assert cert.passed and cert.expected == 0


@pytest.mark.parametrize("spec", ["riemann", "dirichlet:-4", "dedekind:-4"])
def test_cache_invariants(zero_cache, spec):
    P, c = zero_cache(spec)
    enc = c.enclosures
    assert enc[0, 0] > 0
    assert np.all(enc[1:, 0] > enc[:-1, 1])
    assert zr.recheck(P, c)
    cert = zr.verify_count(P, c)
    assert cert.passed and abs(cert.phase_count - len(c)) < 0.5


def test_count_mismatch_detected():
    P = pr.build_primary("riemann")
    c = zr.locate_zeros(P, 30)
    short = zr.ZeroCache(c.primary_id, c.enclosures[:-1], c.T_max)
    cert = zr.verify_count(P, short)
    assert not cert.passed and cert.expected == 3 and cert.found == 2


@pytest.mark.parametrize("spec", ["riemann", "dirichlet:-4", "dedekind:-4"])
def test_grid_doubling_is_stable(zero_cache, spec):
    P, c = zero_cache(spec)
    fine = zr.locate_zeros(P, 100, step=zr.SCAN_STEP / 2)
    assert len(fine) == len(c)
    assert np.max(np.abs(fine.ordinates - c.ordinates)) < 1e-8


def test_negative_height_rejected():
    with pytest.raises(DomainError):
        zr.locate_zeros(pr.build_primary("riemann"), -1)


_bounds = st.floats(min_value=1e-3, max_value=1e4, allow_nan=False)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(_bounds, st.floats(min_value=0, max_value=1e-9)), max_size=20),
       st.floats(min_value=0, max_value=1e5, allow_nan=False))
def test_cache_text_round_trip(rows, T):
    enc = np.array([[lo, lo + w] for lo, w in sorted(rows)]).reshape(-1, 2)
    c = zr.ZeroCache("dirichlet:-4", enc, T)
    back = zr.loads(zr.dumps(c))
    assert back.primary_id == c.primary_id and back.T_max == c.T_max
    assert back.enclosures.tobytes() == c.enclosures.tobytes()


def test_cache_file_format():
    P = pr.build_primary("riemann")
    text = zr.dumps(zr.locate_zeros(P, 30))
    lines = text.splitlines()
    assert lines[0] == "superzeta-zeros v1 riemann 30.0 3"
    k, lo, hi = lines[1].split()
    assert k == "1" and float(lo) < 14.134725141734693 < float(hi)


def test_loads_rejects_bad_input():
    with pytest.raises(DomainError):
        zr.loads("something else\n")
    with pytest.raises(DomainError):
        zr.loads("superzeta-zeros v1 riemann 30.0 2\n1 14.1 14.2\n")


def test_load_or_locate_reuses_and_truncates(tmp_path):
    P = pr.build_primary("riemann")
    c40 = zr.load_or_locate(P, 40, directory=tmp_path)
    assert (tmp_path / "riemann_40.zeros").exists()
    c30 = zr.load_or_locate(P, 30, directory=tmp_path)
    assert len(c30) == 3 and c30.T_max == 30
    assert np.array_equal(c30.enclosures, c40.enclosures[:3])
    assert not (tmp_path / "riemann_30.zeros").exists()


def test_tail_estimate_shrinks():
    P = pr.build_primary("riemann")
    a = zr.tail_sum_estimate(P, 2, 100)["estimate"].real
    b = zr.tail_sum_estimate(P, 2, 200)["estimate"].real
    assert 0 < b < a
    assert abs(zr.tail_sum_estimate(P, 3, 1e8)["estimate"]) < 1e-14


def test_tail_estimate_against_density_formula():
    P = pr.build_primary("riemann")
    T = 100.0
    ref, _ = integrate.quad(lambda t: t**-2 * np.log(t / (2 * np.pi)) / (2 * np.pi), T, np.inf)
    est = zr.tail_sum_estimate(P, 2, T)
    # the smooth density differs from the leading log form by O(1/tau^2)
    assert abs(est["estimate"] - ref) < 1e-6
    assert est["bound"] == pytest.approx(2 * T**-2)


def test_tail_estimate_against_zeros(zero_cache):
    P, c = zero_cache("riemann", 1000.0)
    tau = c.ordinates
    window = np.sum(tau[(tau > 100)] ** -2.0)
    est = zr.tail_sum_estimate(P, 2, 100)["estimate"] - zr.tail_sum_estimate(P, 2, 1000)["estimate"]
    assert abs(est.real - window) < zr.tail_sum_estimate(P, 2, 100)["bound"]


def test_tail_estimate_domain():
    with pytest.raises(DomainError):
        zr.tail_sum_estimate(pr.build_primary("riemann"), 1.0, 100)


def test_zero_sum_with_tail_converges(zero_cache):
    P, c = zero_cache("riemann", 1000.0)
    exact = None
    vals = []
    for T in (200.0, 500.0, 1000.0):
        v, err, n = zr.zero_sum(P, c.truncate(T), lambda t: t**-2.0)
        vals.append((v.real, err))
    exact = vals[-1][0]
    for v, err in vals[:-1]:
        assert abs(v - exact) < err
