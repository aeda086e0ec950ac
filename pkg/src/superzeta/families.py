"""Superzeta functions over the nontrivial zeros rho = 1/2 +- i tau_k:

    Z1(s, x)     = sum_rho (x - rho)^-s
    Z2(sigma, v) = sum_k (tau_k^2 + v)^-sigma
    Z3(sigma, y) = sum_k (tau_k + y)^-(2 sigma)

Direct (truncated + smooth tail) sums, an integral representation in s,
closed special values, expansions in the shift variable, and polar data.
"""

from dataclasses import dataclass, field
from math import comb, factorial, pi

import mpmath
import numpy as np
from scipy import special as sp

from . import primary as pr
from . import zeros as zz
from .errors import DomainError, PoleError, RouteUnavailable

METHODS = ("direct_sum", "integral_rep", "closed_form", "expansion", "relation")


@dataclass
class EvalResult:
    value: complex
    method: str
    err_est: float = 0.0
    zeros_used: int = 0

    def to_dict(self):
        return {"method": self.method, "value": {"re": self.value.real, "im": self.value.imag},
                "err_est": self.err_est, "zeros_used": self.zeros_used}


@dataclass
class PolarDatum:
    location: complex
    order: int
    leading_coeff: complex
    residue: complex
    finite_part: complex = None
    extra: dict = field(default_factory=dict)


def _pow(z, s):
    """Principal z**-s."""
    return np.exp(-s * np.log(z))


# --- family 1: direct sums ---------------------------------------------------

def z1_direct(P, cache, s, x, tail=True):
    s = complex(s)
    x = complex(x)
    integer = s.imag == 0 and s.real == round(s.real)
    if not (s.real > 1 or s == 1):
        raise DomainError("direct sum needs Re s > 1 (or s = 1 with paired zeros)")
    if not integer and x.imag == 0 and x.real <= 1:
        raise DomainError("x lies on the cut (-inf, 1]")
    if not len(cache):
        raise DomainError("empty zero cache")
    u = x - 0.5

    def f(tau):
        return _pow(u - 1j * tau, s) + _pow(u + 1j * tau, s)

    val, err, k = zz.zero_sum(P, cache, f, tail=tail)
    return EvalResult(val, "direct_sum", err, k)


# --- family 1: integral representation ---------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_GL_NODES_LO, _GL_WEIGHTS_LO = np.polynomial.legendre.leggauss(16)
_HEAD_TERMS = 60
_DEFAULT_REACH = 8.0


def _upper_gamma_cf(a, z, iters=300):
    """Legendre continued fraction for Gamma(a, z) (modified Lentz); returns
    (values, converged mask).  Good for z well beyond |a|."""
    tiny = 1e-300
    b = z + 1 - a
    c = np.full_like(b, 1 / tiny)
    d = 1 / b
    h = d.copy()
    done = np.zeros(z.shape, dtype=bool)
    for i in range(1, iters):
        an = -i * (i - a)
        b = b + 2
        d = an * d + b
        d = np.where(np.abs(d) < tiny, tiny, d)
        c = b + an / c
        c = np.where(np.abs(c) < tiny, tiny, c)
        d = 1 / d
        delta = d * c
        h = h * delta
        done = np.abs(delta - 1) < 1e-16
        if np.all(done):
            break
    return np.exp(-z + a * np.log(z)) * h, done


def _upper_gamma(a, z):
    """Gamma(a, z) for real z > 0 and complex a, vectorised over z."""
    z = np.asarray(z, dtype=float)
    if a.imag == 0 and a.real > 0:
        return sp.gammaincc(a.real, z) * sp.gamma(a.real) + 0j
    out = np.empty(z.shape, dtype=complex)
    ok = z > abs(a) + 2
    if np.any(ok):
        v, conv = _upper_gamma_cf(complex(a), z[ok].astype(complex))
        out[ok] = v
        ok[np.flatnonzero(ok)[~conv]] = False
    for i in np.flatnonzero(~ok):
        out[i] = complex(mpmath.gammainc(a, a=float(z[i])))
    return out


def _panels(lo, hi):
    edges = [lo]
    while edges[-1] < min(1.0, hi):
        edges.append(min(2 * edges[-1], hi))
    while edges[-1] < hi:
        edges.append(min(edges[-1] + 1.0, hi))
    return np.array(edges)


def _gl(edges, nodes, weights):
    a, b = edges[:-1, None], edges[1:, None]
    y = (0.5 * (b - a) * nodes + 0.5 * (a + b)).ravel()
    w = (0.5 * (b - a) * weights).ravel()
    return y, w


def _sin_over(s, m):
    """sin(pi s) / (pi (m - s)), analytic through s = m."""
    return -((-1) ** m) * np.sinc(s - m)


def _tail_nmax(xr, Y, nmax):
    excess = xr + Y - 1
    if excess <= 0:
        return nmax
    return int(min(nmax, np.ceil(np.exp(38.0 / excess)) + 2))


def sin_j(P, s, x, Y=None, regularized=None, zeros=None):
    """sin(pi s)/pi times the Mellin integral of the log-derivative of L.

    The integral over y in (0, inf) is split as: a Taylor head on (0, d)
    integrated termwise (this is what continues it to all s), Gauss-Legendre
    on (d, Y), and a tail using the Dirichlet series of L'/L integrated
    termwise to incomplete gamma functions.  With ``regularized`` the
    integrand is d/dz log[(z-1)^q L(z)], which stays regular at z = 1.

    Returns (values, err_est) for an array of s.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    x = complex(x)
    if regularized is None:
        regularized = bool(P.q) and abs(x.imag) < 1e-12 and x.real <= 1
    if x.imag == 0 and x.real <= 0:
        raise DomainError("x on the negative real axis")
    if not regularized and P.q and x.imag == 0 and x.real <= 1:
        raise DomainError("x lies on the cut (-inf, 1]; use the regularized form")
    if Y is None:
        Y = max(_DEFAULT_REACH - x.real, 1.0)
    if regularized and P.q and abs(1 - x) >= Y:
        raise DomainError("split point must exceed |1 - x|")

    # head
    r = pr.circle_radius(P, x, zeros, pole=not regularized)
    a = pr.log_l_reg_taylor(P, x, _HEAD_TERMS, zeros, r=r)
    k = np.arange(_HEAD_TERMS)
    fk = (k + 1) * a[1:]
    if not regularized and P.q:
        fk = fk - (-1.0) ** k / (x - 1) ** (k + 1)
    d = min(0.5 * r, 0.5 * Y)
    m = k + 1
    ld = np.log(d)
    head = np.array([np.sum(fk * np.exp((m - si) * ld) * _sin_over(si, m)) for si in s])

    # middle
    edges = _panels(d, Y)
    sin_pi = np.sin(pi * s) / pi
    mids = []
    for nodes, weights in ((_GL_NODES, _GL_WEIGHTS), (_GL_NODES_LO, _GL_WEIGHTS_LO)):
        y, w = _gl(edges, nodes, weights)
        f = pr.log_derivative(P, x + y, regularized=regularized)
        ly = np.log(y)
        mids.append(sin_pi * np.array([np.sum(w * f * np.exp(-si * ly)) for si in s]))
    middle = mids[0]
    err = np.abs(mids[0] - mids[1])

    # tail: L'/L(z) = -sum c_n n^-z
    nmax = _tail_nmax(x.real, Y, pr.SERIES_NMAX)
    c = pr.von_mangoldt_series(P, nmax)
    n = np.flatnonzero(c)
    ln = np.log(n)
    pref = c[n] * np.exp(-x * ln)
    tail = np.empty_like(s)
    for i, si in enumerate(s):
        g = _upper_gamma(1 - si, Y * ln)
        tail[i] = -sin_pi[i] * np.sum(pref * np.exp((si - 1) * np.log(ln)) * g)
    if regularized and P.q:
        # + q/(z-1) = q sum_j (1-x)^j y^(-1-j) on (Y, inf)
        ratio = (1 - x) / Y
        jmax = 1 if ratio == 0 else int(np.ceil(40 / max(1e-3, -np.log10(abs(ratio))))) + 1
        for j in range(jmax):
            tail += P.q * ratio**j * np.exp(-s * np.log(Y)) * (-1) ** j * np.sinc(s + j)
    if nmax < pr.SERIES_NMAX or x.real + Y <= 1:
        err = err + 1e-15
    else:
        err = err + nmax ** (1 - x.real - Y) * np.log(nmax) * np.abs(sin_pi)
    return head + middle + tail, err + 1e-14 * np.abs(head)


def z1_integral(P, s, x, Y=None, form="auto", zeros=None):
    """Z1(s,x) continued to all s != 1 through the Mellin-integral form."""
    s = complex(s)
    x = complex(x)
    if s == 1:
        raise PoleError("Z1(s,x) has a pole at s=1")
    regularized = None if form == "auto" else form == "regularized"
    vals, err = sin_j(P, [s], x, Y=Y, regularized=regularized, zeros=zeros)
    used_reg = bool(P.q) and (regularized if regularized is not None else (abs(x.imag) < 1e-12 and x.real <= 1))
    val = -pr.shadow_zeta(P, s, x) + vals[0]
    if P.q and not used_reg:
        val += P.q * _pow(x - 1, s)
    return EvalResult(complex(val), "integral_rep", float(err[0]) + 1e-13 * abs(val), 0)


# --- family 1: closed special values ------------------------------------------

def log_xi_derivatives(P, x, n, zeros=None):
    return pr.log_xi_derivative(P, x, n, zeros)


def z1_closed(P, marker, x, n=None, zeros=None):
    x = complex(x)
    st = P.stirling
    if marker == "minus_n":
        if n is None or n < 0:
            raise DomainError("minus_n needs n >= 0")
        val = -pr.shadow_trace(P, n, x) + P.q * (x - 1) ** n
    elif marker == "zero":
        val = st.a1 * x + st.a0 + P.q
    elif marker == "deriv0":
        val = st.b1 * x + st.b0 - log_xi(P, x)
    elif marker == "fp1":
        val = -st.b1 + pr.log_xi_derivative(P, x, 1, zeros)
    elif marker == "plus_n":
        if n is None or n < 1:
            raise DomainError("plus_n needs n >= 1")
        if n % 2 and x == 0.5:
            val = 0j
        else:
            val = (-1) ** (n - 1) / factorial(n - 1) * pr.log_xi_derivative(P, x, n, zeros)
    else:
        raise DomainError(f"unknown marker {marker!r}")
    if x.imag == 0:
        # Xi is real and positive on the real axis
        val = complex(val).real
    return EvalResult(complex(val), "closed_form", 1e-12 * max(1.0, abs(val)), 0)


def log_xi(P, x):
    """log Xi(x) continuous from Xi(1) along the real segment (real x > 0)."""
    return complex(np.log(complex(pr.xi_value(P, x))))


def z1_eval(P, s, x, cache=None, method="auto"):
    s = complex(s)
    if method == "auto":
        if s.imag == 0 and s.real == round(s.real):
            method = "closed_form"
        elif s.real > 1 and cache is not None:
            method = "direct_sum"
        else:
            method = "integral_rep"
    if method == "closed_form":
        if not (s.imag == 0 and s.real == round(s.real)):
            raise RouteUnavailable("closed form only at integer s")
        n = int(s.real)
        if n <= 0:
            return z1_closed(P, "minus_n", x, -n)
        return z1_closed(P, "plus_n", x, n)
    if method == "direct_sum":
        if cache is None:
            raise RouteUnavailable("direct sum needs a zero cache")
        return z1_direct(P, cache, s, x)
    if method == "integral_rep":
        return z1_integral(P, s, x)
    raise RouteUnavailable(f"unknown method {method!r}")


# --- family 2 ----------------------------------------------------------------------

def _first_tau(P, cache):
    if cache is not None and len(cache):
        return float(cache.ordinates[0])
    return pr.first_ordinate(P)


def z2_direct(P, cache, sigma, v):
    sigma = complex(sigma)
    v = complex(v)
    if sigma.real <= 0.5:
        raise DomainError("direct sum needs Re sigma > 1/2")
    if not len(cache):
        raise DomainError("empty zero cache")

    def f(tau):
        return _pow(tau**2 + v, sigma)

    val, err, k = zz.zero_sum(P, cache, f)
    return EvalResult(val, "direct_sum", err, k)


def z2_relation(P, sigma):
    """Z2(sigma, 0) = Z1(2 sigma, 1/2) / (2 cos pi sigma)."""
    sigma = complex(sigma)
    c = np.cos(pi * sigma)
    if abs(c) < 1e-3:
        raise RouteUnavailable("relation is 0/0 at half-integer sigma")
    if sigma == 0.5:
        raise PoleError("Z2 has a double pole at sigma=1/2")
    r = z1_integral(P, 2 * sigma, 0.5)
    return EvalResult(r.value / (2 * c), "relation", r.err_est / abs(2 * c), 0)


def _z2_origin(P, cache, sigma):
    """Z2(sigma, 0) by the most accurate available route."""
    sigma = complex(sigma)
    if (sigma.real < 3 or cache is None) and abs(np.cos(pi * sigma)) >= 1e-3:
        return z2_relation(P, sigma)
    if cache is None or sigma.real <= 0.5:
        raise RouteUnavailable(f"no route for Z2({sigma}, 0)")
    return z2_direct(P, cache, sigma, 0.0)


def _binom_neg(a, lmax):
    """Coefficients binom(-a, l), l = 0..lmax."""
    out = np.empty(lmax + 1, dtype=complex)
    out[0] = 1
    for l in range(1, lmax + 1):
        out[l] = out[l - 1] * (-a - l + 1) / l
    return out


def _expansion_terms(ratio, tol=1e-13, cap=400):
    if ratio == 0:
        return 1
    return int(min(cap, np.ceil(np.log(tol) / np.log(ratio)) + 8))


def z2_expansion(P, cache, sigma, v, max_ratio=0.8):
    sigma = complex(sigma)
    v = complex(v)
    tau1 = _first_tau(P, cache)
    ratio = abs(v) / tau1**2
    if ratio > max_ratio:
        raise RouteUnavailable(f"|v|/tau_1^2 = {ratio:.3g} exceeds {max_ratio}")
    L = _expansion_terms(ratio)
    coef = _binom_neg(sigma, L)
    total = 0j
    err = 0.0
    for l in range(L + 1):
        if coef[l] == 0:
            continue
        r = _z2_origin(P, cache, sigma + l)
        total += coef[l] * r.value * v**l
        err += abs(coef[l] * v**l) * r.err_est
    return EvalResult(total, "expansion", err + 1e-13 * abs(total), len(cache) if cache is not None else 0)


def z2_eval(P, cache, sigma, v, method="auto"):
    sigma = complex(sigma)
    v = complex(v)
    if method == "auto":
        if sigma.real > 0.5 and cache is not None:
            method = "direct_sum"
        elif v == 0:
            method = "relation"
        else:
            method = "expansion"
    if method == "direct_sum":
        if cache is None:
            raise RouteUnavailable("direct sum needs a zero cache")
        return z2_direct(P, cache, sigma, v)
    if method == "relation":
        if v != 0:
            raise RouteUnavailable("relation only at v=0")
        return z2_relation(P, sigma)
    if method == "expansion":
        return z2_expansion(P, cache, sigma, v)
    raise RouteUnavailable(f"unknown method {method!r}")


def _sqrt_branch(v, branch):
    w = np.sqrt(complex(v))
    return branch * w


def z2_closed(P, marker, v=0.0, m=None, branch=1, zeros=None):
    v = complex(v)
    st = P.stirling
    if marker == "minus_m":
        if m is None or m < 0:
            raise DomainError("minus_m needs m >= 0")
        val = 0j
        for j in range(m + 1):
            val += comb(m, j) * (-1) ** j * pr.shadow_trace(P, 2 * j, 0.5) * v ** (m - j)
        val = 0.5 * (-val + P.q * (v - 0.25) ** m)
    elif marker == "zero":
        val = 0.5 * (0.5 * st.a1 + st.a0 + P.q)
    elif marker == "deriv0":
        x = 0.5 + _sqrt_branch(v, branch)
        if v.imag == 0 and v.real < 0 and complex(pr.xi_value(P, x)).real <= 0:
            # x is on the critical line, where Xi is real: no branch of log
            # is singled out once Xi has turned negative
            raise DomainError("branch ambiguity for v on the negative axis")
        val = 0.5 * st.b1 + st.b0 - log_xi(P, x)
    elif marker == "plus_m":
        if m is None or m < 1:
            raise DomainError("plus_m needs m >= 1")
        if v == 0:
            val = 0.5 * (-1) ** m * z1_closed(P, "plus_n", 0.5, 2 * m, zeros).value
        else:
            x = 0.5 + _sqrt_branch(v, branch)
            val = 0j
            for l in range(m):
                val += comb(m + l - 1, m - 1) * (2 * x - 1) ** (-m - l) * z1_closed(P, "plus_n", x, m - l, zeros).value
    else:
        raise DomainError(f"unknown marker {marker!r}")
    if v.imag == 0 and v.real >= 0:
        val = complex(val).real
    return EvalResult(complex(val), "closed_form", 1e-12 * max(1.0, abs(val)), 0)


def residue_origin(P, m):
    """Residue of Z2(sigma, 0) at sigma = 1/2 - m, m >= 1."""
    return (-1) ** m / (2 * pi) * (pr.shadow_trace(P, 2 * m - 1, 0.5) + P.q * 2.0 ** (1 - 2 * m))


def _half_ratio(m, j=0):
    """Gamma(1/2 + m) / ((m - j)! Gamma(1/2 + j))."""
    return float(np.exp(sp.gammaln(0.5 + m) - sp.gammaln(m - j + 1) - sp.gammaln(0.5 + j)))


def z2_polar(P, m, v=0.0):
    v = complex(v)
    st = P.stirling
    if m == 0:
        return PolarDatum(0.5, 2, st.a1 / (4 * pi), st.b1 / (2 * pi))
    g = _half_ratio(m)
    lead = st.a1 / (4 * pi) * g * v**m
    harmonic = sum(1 / (2 * j - 1) for j in range(1, m + 1))
    res = -g * (st.a1 / (2 * pi) * harmonic - st.b1 / (2 * pi)) * v**m
    res += sum(_half_ratio(m, j) * residue_origin(P, j) * v ** (m - j) for j in range(1, m + 1))
    return PolarDatum(0.5 - m, 2 if lead != 0 else 1, lead, complex(res))


# --- family 3 ----------------------------------------------------------------------

def z3_direct(P, cache, sigma, y):
    sigma = complex(sigma)
    y = complex(y)
    if sigma.real <= 0.5:
        raise DomainError("direct sum needs Re sigma > 1/2")
    if not len(cache):
        raise DomainError("empty zero cache")

    def f(tau):
        return _pow(tau + y, 2 * sigma)

    val, err, k = zz.zero_sum(P, cache, f)
    return EvalResult(val, "direct_sum", err, k)


def z3_expansion(P, cache, sigma, y, max_ratio=0.8):
    sigma = complex(sigma)
    y = complex(y)
    tau1 = _first_tau(P, cache)
    ratio = abs(y) / tau1
    if ratio > max_ratio:
        raise RouteUnavailable(f"|y|/tau_1 = {ratio:.3g} exceeds {max_ratio}")
    L = _expansion_terms(ratio)
    coef = _binom_neg(2 * sigma, L)
    total = 0j
    err = 0.0
    for l in range(L + 1):
        if coef[l] == 0:
            continue
        r = _z2_origin(P, cache, sigma + 0.5 * l)
        total += coef[l] * r.value * y**l
        err += abs(coef[l] * y**l) * r.err_est
    return EvalResult(total, "expansion", err + 1e-13 * abs(total), len(cache) if cache is not None else 0)


def z3_eval(P, cache, sigma, y, method="auto"):
    sigma = complex(sigma)
    y = complex(y)
    if method == "auto":
        method = "direct_sum" if sigma.real > 0.5 and cache is not None else "expansion"
    if method == "direct_sum":
        if cache is None:
            raise RouteUnavailable("direct sum needs a zero cache")
        return z3_direct(P, cache, sigma, y)
    if method == "expansion":
        return z3_expansion(P, cache, sigma, y)
    raise RouteUnavailable(f"unknown method {method!r}")


def z3_polar(P, n, y=0.0):
    y = complex(y)
    st = P.stirling
    if n == 0:
        d = z2_polar(P, 0)
        return d
    res = -st.a1 / (2 * pi * n) * y**n
    res += sum(comb(n - 1, 2 * m - 1) * residue_origin(P, m) * y ** (n - 2 * m) for m in range(1, n // 2 + 1))
    fp = None
    if n == 1:
        fp = 0.25 * st.a1 + 0.5 * (st.a0 + P.q) - st.b1 / pi * y
    return PolarDatum(0.5 * (1 - n), 1, complex(res), complex(res), fp)


# --- Laurent data in s by contour integration ------------------------------------

def _ring(center, h, nodes):
    theta = 2 * pi * (np.arange(nodes) + 0.5) / nodes
    eps = h * np.exp(1j * theta)
    return complex(center) + eps, eps


def z1_integral_many(P, s, x, zeros=None):
    """Z1(s, x) by the integral representation for an array of s (s != 1)."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    x = complex(x)
    vals, _ = sin_j(P, s, x, zeros=zeros)
    reg = bool(P.q) and abs(x.imag) < 1e-12 and x.real <= 1
    out = vals - np.array([pr.shadow_zeta(P, si, x) for si in s])
    if P.q and not reg:
        out = out + P.q * _pow(x - 1, s)
    return out


def laurent_coefficient(func, center, k, h=0.25, nodes=24):
    """Coefficient of (s - center)^k in the Laurent series of a vectorised func."""
    pts, eps = _ring(center, h, nodes)
    return complex(np.mean(func(pts) * eps ** (-k)))


def z1_laurent(P, center, x, k, h=0.25, nodes=24):
    return laurent_coefficient(lambda s: z1_integral_many(P, s, x), center, k, h, nodes)


def z1_integral_deriv0(P, x):
    """d/ds Z1(s, x) at s = 0 from the integral representation."""
    return EvalResult(z1_laurent(P, 0.0, x, 1), "integral_rep", 1e-10, 0)


def z1_integral_fp1(P, x):
    """Finite part of Z1(s, x) at s = 1 from the integral representation."""
    return EvalResult(z1_laurent(P, 1.0, x, 0), "integral_rep", 1e-10, 0)
