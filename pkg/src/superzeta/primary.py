"""Primary functions L(x): Riemann zeta, Dirichlet L of a real primitive
character, and Dedekind zeta of a quadratic field.

A primary function is described by its trivial factor

    1/G(x) = exp(kappa x) * x**e * prod_i Gamma(c_i x + h_i)**m_i

so that Xi(x) = (x-1)**q L(x) / G(x) is entire and Xi(x) = Xi(1-x).
Everything else (Stirling coefficients, the shadow zeta function over the
trivial zeros, the smooth zero-counting function) is derived from that data.
"""

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, log, pi

import numpy as np
from scipy import special as sp

from . import specfun
from .characters import kronecker_character
from .errors import DomainError, NumericError, PoleError, RadiusError

GammaFactor = namedtuple("GammaFactor", "scale shift mult")
Stirling = namedtuple("Stirling", "a1 a0 b1 b0")

SERIES_NMAX = 100_000
SERIES_TOL = 1e-12


@dataclass(frozen=True)
class PrimaryFunction:
    id: str
    kind: str  # "dirichlet" or "dedekind"
    q: int
    gamma_factors: tuple
    log_x_coeff: int
    linear_coeff: float
    stirling: Stirling
    character: object = None
    field: tuple = None  # (r1, r2, n_K, d_K) for Dedekind
    sigma0: float = 1.0

    @property
    def parity(self):
        return None if self.character is None else self.character.parity

    @property
    def modulus(self):
        return None if self.character is None else self.character.modulus


def stirling_coefficients(factors, e, kappa):
    """Leading coefficients of the large-x expansion of -log G(x)."""
    a1 = a0 = b1 = b0 = 0.0
    for c, h, m in factors:
        a1 += m * c
        b1 += m * c * log(c)
        a0 += m * (h - 0.5)
        b0 += m * ((h - 0.5) * log(c) + 0.5 * specfun.LOG_2PI)
    return Stirling(a1, a0 + e, b1 + kappa, b0)


def stirling_tail(P, kmax):
    """Coefficients a_{-k}, k = 1..kmax, of x**-k in -log G(x)."""
    out = []
    for k in range(1, kmax + 1):
        acc = 0.0
        for c, h, m in P.gamma_factors:
            bk = specfun.bernoulli_polynomial(k + 1, Fraction(h).limit_denominator(10**6))
            acc += m * (-1) ** (k + 1) * float(bk) / (k * (k + 1) * c**k)
        out.append(acc)
    return out


def stirling_closed_form(P):
    """Stirling coefficients from the published per-class formulas."""
    if P.kind == "dirichlet":
        d, a = P.modulus, P.parity
        return Stirling(0.5, 0.5 * (a - 1), -0.5 * log(2 * pi / d), 0.5 * log(2 ** (2 - a) * pi))
    r1, r2, nk, dk = P.field
    return Stirling(0.5 * nk, 1 - 0.5 * (r1 + r2), -0.5 * log((2 * pi) ** nk / abs(dk)),
                    (r1 + 0.5 * r2) * log(2) + 0.5 * (r1 + r2) * log(pi))


def _dedekind(pid, r1, r2, dk, character):
    nk = r1 + 2 * r2
    factors = []
    if r1:
        factors.append(GammaFactor(0.5, 0.0, r1))
    if r2:
        factors.append(GammaFactor(1.0, 0.0, r2))
    kappa = -0.5 * log(4**r2 * pi**nk / abs(dk))
    return PrimaryFunction(pid, "dedekind", 1, tuple(factors), 1, kappa,
                           stirling_coefficients(factors, 1, kappa), character, (r1, r2, nk, dk))


def build_primary(spec):
    """Build from ``riemann``, ``dirichlet:<D>``, ``dedekind:<D>`` (or a dict)."""
    if isinstance(spec, dict):
        key, val = next(iter(spec.items()))
        spec = key if key == "riemann" else f"{key}:{val}"
    spec = spec.strip().lower()
    if spec in ("riemann", "zeta", "dedekind:1"):
        return _dedekind("riemann", 1, 0, 1, None)
    kind, _, arg = spec.partition(":")
    if kind == "dedekind_quadratic":
        kind = "dedekind"
    try:
        D = int(arg)
    except ValueError:
        raise DomainError(f"cannot parse primary {spec!r}") from None
    chi = kronecker_character(D)
    if kind == "dirichlet":
        a = chi.parity
        factors = (GammaFactor(0.5, 0.5 * a, 1),)
        kappa = -0.5 * log(pi / chi.modulus)
        return PrimaryFunction(f"dirichlet:{D}", "dirichlet", 0, factors, 0, kappa,
                               stirling_coefficients(factors, 0, kappa), chi)
    if kind == "dedekind":
        r1, r2 = (2, 0) if D > 0 else (0, 1)
        return _dedekind(f"dedekind:{D}", r1, r2, D, chi)
    raise DomainError(f"unknown primary kind {kind!r}")


def components(P):
    """Primary functions whose product is P (used for additivity checks)."""
    if P.kind == "dedekind" and P.character is not None:
        return [build_primary("riemann"), build_primary(f"dirichlet:{P.character.discriminant}")]
    return [P]


# --- trivial factor -------------------------------------------------------------

def log_g_inv(P, x, n=0):
    """n-th derivative of -log G(x)."""
    x = np.asarray(x, dtype=complex)
    if n == 0:
        out = P.linear_coeff * x + P.log_x_coeff * np.log(x)
        for c, h, m in P.gamma_factors:
            out = out + m * specfun.log_gamma(c * x + h)
    elif n == 1:
        out = P.linear_coeff + P.log_x_coeff / x
        for c, h, m in P.gamma_factors:
            out = out + m * c * specfun.digamma(c * x + h)
    else:
        out = P.log_x_coeff * (-1) ** (n - 1) * factorial(n - 1) / x**n
        for c, h, m in P.gamma_factors:
            vals = np.vectorize(lambda z: specfun.polygamma(n - 1, z), otypes=[complex])(c * x + h)
            out = out + m * c**n * vals
    return out if np.ndim(out) else complex(out)


def g_value(P, x):
    """G(x) itself; vanishes at the trivial zeros."""
    x = np.asarray(x, dtype=complex)
    out = np.exp(-P.linear_coeff * x)
    absorbed = P.log_x_coeff == 0
    for c, h, m in P.gamma_factors:
        if not absorbed and h == 0:
            # 1/(x Gamma(cx)) = c / Gamma(cx + 1)
            out = out * c * sp.rgamma(c * x + 1) * sp.rgamma(c * x) ** (m - 1)
            absorbed = True
        else:
            out = out * sp.rgamma(c * x + h) ** m
    return out if np.ndim(out) else complex(out)


def trivial_zeros(P, count=60):
    """Trivial zeros of L (poles of the Gamma factors, minus the x**e factor)."""
    mult = {}
    for c, h, m in P.gamma_factors:
        for k in range(count):
            z = -(k + h) / c
            mult[z] = mult.get(z, 0) + m
    mult[0.0] = mult.get(0.0, 0) - P.log_x_coeff
    return np.array(sorted((z for z, m in mult.items() if m > 0), reverse=True))


# --- the L-function ----------------------------------------------------------------

def _zeta_reg(x, deriv):
    """(x-1) zeta(x), smooth through x = 1, with its derivative."""
    v, dv = specfun.hurwitz_zeta_regular_deriv(x, 1.0) if deriv else (specfun.hurwitz_zeta_regular(x, 1.0), 0)
    val = (x - 1) * v + 1
    return val, (v + (x - 1) * dv if deriv else None)


def _dirichlet_l(chi, x, deriv):
    d = chi.modulus
    val = 0
    dval = 0
    for n in range(1, d):
        if chi.values[n] == 0:
            continue
        # the 1/(x-1) poles cancel because sum chi(n) = 0
        if deriv:
            v, dv = specfun.hurwitz_zeta_regular_deriv(x, n / d)
            dval = dval + chi.values[n] * dv
        else:
            v = specfun.hurwitz_zeta_regular(x, n / d)
        val = val + chi.values[n] * v
    scale = np.exp(-x * log(d))
    if deriv:
        return scale * val, scale * (dval - log(d) * val)
    return scale * val, None


def l_reg(P, x, deriv=False):
    """(x-1)**q L(x) (and its derivative when ``deriv``); analytic at x = 1."""
    x = np.asarray(x, dtype=complex)
    if P.kind == "dirichlet":
        val, dval = _dirichlet_l(P.character, x, deriv)
    else:
        val, dval = _zeta_reg(x, deriv)
        if P.character is not None:
            lv, ldv = _dirichlet_l(P.character, x, deriv)
            if deriv:
                dval = dval * lv + val * ldv
            val = val * lv
    if np.ndim(val) == 0:
        val = complex(val)
        dval = complex(dval) if deriv else None
    return (val, dval) if deriv else val


def l_value(P, x):
    x = np.asarray(x, dtype=complex)
    if P.q and np.any(x == 1):
        raise PoleError(f"{P.id}: L(x) has a pole at x=1")
    out = l_reg(P, x) / (x - 1) ** P.q
    return out if np.ndim(out) else complex(out)


def log_derivative(P, x, regularized=False):
    """L'/L(x), or d/dx log[(x-1)^q L(x)] when ``regularized``."""
    x = np.asarray(x, dtype=complex)
    v, dv = l_reg(P, x, deriv=True)
    out = dv / v
    if not regularized and P.q:
        out = out - P.q / (x - 1)
    return out if np.ndim(out) else complex(out)


def xi_value(P, x):
    """Completed function Xi(x) = (x-1)^q L(x) / G(x)."""
    xs = np.atleast_1d(np.asarray(x, dtype=complex))
    out = np.empty_like(xs)
    tz = trivial_zeros(P)
    # 0/0 cancellation costs about eps/distance; the ring mean is exact
    near = np.min(np.abs(tz[:, None] - xs[None, :]), axis=0) < 1e-3
    if np.any(~near):
        out[~near] = l_reg(P, xs[~near]) / g_value(P, xs[~near])
    for i in np.flatnonzero(near):
        # 0/0 at a trivial zero: mean value over a small circle
        ring = xs[i] + 0.1 * np.exp(2j * pi * np.arange(32) / 32)
        out[i] = np.mean(l_reg(P, ring) / g_value(P, ring))
    if np.ndim(x) == 0:
        val = complex(out[0])
        return val.real if complex(x).real == 0.5 else val
    return out


def hardy(P, t):
    """Real function of t with the sign of Xi(1/2 + it), of size |L(1/2+it)|."""
    t = np.asarray(t, dtype=float)
    x = 0.5 + 1j * t
    phase = np.imag(log_g_inv(P, x))
    val = np.exp(1j * phase) * l_reg(P, x) / np.abs(x - 1) ** P.q
    return np.real(val)


def smooth_count(P, T):
    """Smooth part of the zero-counting function N(T)."""
    x = 0.5 + 1j * np.asarray(T, dtype=float)
    return (np.imag(log_g_inv(P, x)) + P.q * np.angle(x - 1)) / pi


def smooth_density(P, tau):
    """d/dtau of smooth_count."""
    tau = np.asarray(tau, dtype=float)
    x = 0.5 + 1j * tau
    return (np.real(log_g_inv(P, x, 1)) - P.q * 0.5 / (0.25 + tau**2)) / pi


@lru_cache(maxsize=None)
def first_ordinate(P, step=0.05, tmax=200.0):
    """Lower end of the bracket of the lowest zero ordinate (coarse scan)."""
    t0 = 0.0
    prev = hardy(P, [t0])[0]
    while t0 < tmax:
        ts = t0 + step * np.arange(1, 201)
        vals = hardy(P, ts)
        signs = np.sign(np.concatenate([[prev], vals]))
        idx = np.flatnonzero(signs[:-1] * signs[1:] < 0)
        if idx.size:
            return float(t0 + step * idx[0])
        t0 = ts[-1]
        prev = vals[-1]
    raise NumericError(f"{P.id}: no zero found below t={tmax}")


# --- von Mangoldt series ----------------------------------------------------------

@lru_cache(maxsize=4)
def _mangoldt(nmax):
    lam = np.zeros(nmax + 1)
    sieve = np.ones(nmax + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(nmax**0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    for p in np.flatnonzero(sieve):
        pk = p
        lp = log(p)
        while pk <= nmax:
            lam[pk] = lp
            pk *= p
    return lam


def von_mangoldt_series(P, nmax=SERIES_NMAX):
    """Coefficients c_n with -L'/L(x) = sum c_n n^-x (index = n)."""
    lam = _mangoldt(nmax).copy()
    if P.character is None:
        return lam
    n = np.arange(nmax + 1)
    chi = P.character.array[n % P.character.modulus]
    if P.kind == "dirichlet":
        return chi * lam
    return (1 + chi) * lam


def series_tail_bound(P, sigma, n, nmax=SERIES_NMAX):
    """Bound on the omitted part of the n-th log-derivative Dirichlet series."""
    if sigma <= 1:
        return np.inf
    cmax = 2.0 if P.kind == "dedekind" and P.character is not None else 1.0
    a = (sigma - 1) * log(nmax)
    k = max(n, 1)
    return cmax * sp.gammaincc(k + 1, a) * factorial(k) / (sigma - 1) ** (k + 1)


def log_l_derivatives_series(P, x, n, nmax=SERIES_NMAX):
    x = complex(x)
    c = von_mangoldt_series(P, nmax)
    m = np.flatnonzero(c)
    lm = np.log(m)
    terms = c[m] * np.exp(-x * lm)
    if n == 0:
        return complex(np.sum(terms / lm))
    return complex((-1) ** n * np.sum(terms * lm ** (n - 1)))


# --- Cauchy-circle Taylor extraction --------------------------------------------

def singularity_distance(P, x, zeros=None, pole=True):
    """Distance from x to the nearest zero or pole of L (lower bound)."""
    x = complex(x)
    d = np.min(np.abs(trivial_zeros(P) - x))
    if pole and P.q:
        d = min(d, abs(x - 1))
    if zeros is not None and len(zeros):
        tau = np.asarray(zeros)
        d = min(d, np.min(np.abs(x - 0.5 - 1j * tau)), np.min(np.abs(x - 0.5 + 1j * tau)))
    else:
        tau1 = first_ordinate(P)
        gap = max(0.0, tau1 - abs(x.imag))
        d = min(d, np.hypot(x.real - 0.5, gap))
    return d


def circle_radius(P, x, zeros=None, pole=True, rmax=0.45):
    r = min(rmax, 0.5 * singularity_distance(P, x, zeros, pole))
    if r < 1e-3:
        raise RadiusError(f"{P.id}: a zero or pole lies within {2 * r:.3g} of x={x}")
    return r


def taylor_coefficients(func, x, r, nmax, take_log=False, tol=1e-13, kmin=64, kmax=4096):
    """Taylor coefficients a_0..a_nmax of func (or log func) at x by the
    trapezoidal rule on the circle |z - x| = r, doubling nodes to converge."""
    k = kmin
    prev = None
    while True:
        theta = 2 * pi * np.arange(k) / k
        vals = np.asarray(func(x + r * np.exp(1j * theta)), dtype=complex)
        if take_log:
            logs = np.log(vals)
            ph = np.unwrap(np.concatenate([logs.imag, logs.imag[:1]]))
            if abs(ph[-1] - ph[0]) > 1:
                raise RadiusError(f"log winds around the circle at x={x}, r={r}: zero inside")
            vals = logs.real + 1j * ph[:-1]
        coef = np.fft.fft(vals) / k
        a = coef[: nmax + 1] / r ** np.arange(nmax + 1)
        if prev is not None:
            scale = max(1.0, np.max(np.abs(a)))
            if np.max(np.abs(a - prev)) < tol * scale:
                return a
        if k >= kmax:
            return a
        prev = a
        k *= 2


def log_l_derivatives(P, x, n, zeros=None, route="auto"):
    """n-th derivative of log L at x (Dirichlet series far right, else a
    Cauchy circle around x)."""
    x = complex(x)
    if route == "auto":
        route = "series" if series_tail_bound(P, x.real, n) < SERIES_TOL else "circle"
    if route == "series":
        return log_l_derivatives_series(P, x, n)
    if n == 0:
        return complex(np.log(l_value(P, x)))
    r = circle_radius(P, x, zeros)
    a = taylor_coefficients(lambda z: l_value(P, z), x, r, n, take_log=True)
    return complex(a[n] * factorial(n))


def log_l_reg_taylor(P, x, nmax, zeros=None, r=None):
    """Taylor coefficients of log[(x-1)^q L(x)] at x."""
    if r is None:
        r = circle_radius(P, x, zeros, pole=False)
    return taylor_coefficients(lambda z: l_reg(P, z), complex(x), r, nmax, take_log=True)


def log_xi_derivative(P, x, n, zeros=None, route="auto"):
    """n-th derivative of log Xi at x.

    ``split``: polygamma closed form for the trivial factor plus a circle on
    log[(x-1)^q L]; ``circle``: a circle directly on Xi (valid anywhere off
    the nontrivial zeros).
    """
    x = complex(x)
    if route == "auto":
        route = "split" if x.real >= 0.5 and singularity_distance(P, x, zeros, pole=False) > 0.2 else "circle"
    if route == "split":
        a = log_l_reg_taylor(P, x, n, zeros)
        return complex(log_g_inv(P, x, n) + a[n] * factorial(n))
    tau1 = first_ordinate(P) if zeros is None or not len(zeros) else float(np.min(zeros))
    if zeros is not None and len(zeros):
        dist = min(np.min(np.abs(x - 0.5 - 1j * np.asarray(zeros))), np.min(np.abs(x - 0.5 + 1j * np.asarray(zeros))))
    else:
        dist = np.hypot(x.real - 0.5, max(0.0, tau1 - abs(x.imag)))
    r = min(0.45, 0.5 * dist)
    if r < 1e-3:
        raise RadiusError(f"{P.id}: a nontrivial zero lies within {dist:.3g} of x={x}")
    a = taylor_coefficients(lambda z: xi_value(P, z), x, r, n, take_log=True)
    if n == 0:
        return complex(np.log(xi_value(P, x)))
    return complex(a[n] * factorial(n))


# --- shadow zeta function over the trivial zeros ----------------------------------

def _hurwitz_any(s, w, deriv=False):
    """zeta(s,w) (and d/ds) continued to Re w <= 0 by peeling off terms."""
    w = complex(w)
    extra = 0j
    dextra = 0j
    while w.real <= 0.25:
        if w == 0:
            raise PoleError("shadow zeta evaluated at a trivial zero")
        term = np.exp(-s * np.log(w))
        extra += term
        dextra -= np.log(w) * term
        w += 1
    if deriv:
        return specfun.hurwitz_zeta_deriv(s, w) + dextra
    return specfun.hurwitz_zeta(s, w) + extra


def shadow_zeta(P, s, x):
    """Z(s,x) = sum over trivial zeros x_k of (x - x_k)^-s."""
    s = complex(s)
    x = complex(x)
    if s == 1:
        raise PoleError("shadow zeta has a pole at s=1")
    out = -P.log_x_coeff * np.exp(-s * np.log(x)) if P.log_x_coeff else 0j
    for c, h, m in P.gamma_factors:
        out += m * np.exp(s * log(c)) * _hurwitz_any(s, c * x + h)
    return complex(out)


def shadow_zeta_deriv(P, s, x):
    """d/ds Z(s,x), from Hurwitz s-derivatives."""
    s = complex(s)
    x = complex(x)
    out = P.log_x_coeff * np.log(x) * np.exp(-s * np.log(x)) if P.log_x_coeff else 0j
    for c, h, m in P.gamma_factors:
        cs = np.exp(s * log(c))
        out += m * cs * (log(c) * _hurwitz_any(s, c * x + h) + _hurwitz_any(s, c * x + h, deriv=True))
    return complex(out)


def shadow_trace(P, n, x):
    """Z(-n, x) as the closed polynomial in x built from Stirling data."""
    x = complex(x)
    st = P.stirling
    tail = stirling_tail(P, max(n, 1))
    out = -st.a1 / (n + 1) * x ** (n + 1) - st.a0 * x**n
    out += n * sum((-1) ** j * comb(n - 1, j - 1) * tail[j - 1] * x ** (n - j) for j in range(1, n + 1))
    return complex(out)


def shadow_markers(P, x, nmax=6):
    x = complex(x)
    st = P.stirling
    return {
        "algebraic": [shadow_trace(P, n, x) for n in range(nmax + 1)],
        "fp_at_1": complex(-log_g_inv(P, x, 1) + st.b1),
        "s_deriv_at_0": complex(-st.b1 * x - st.b0 + log_g_inv(P, x)),
    }
