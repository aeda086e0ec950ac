"""Special functions on binary64: Bernoulli/Euler data, gamma family,
Hurwitz zeta with full continuation, Riemann zeta and Dirichlet beta.

The Hurwitz kernel is Euler-Maclaurin summation.  Everything works on
``complex`` and vectorises over the exponent ``s`` (numpy arrays) for a
fixed shift ``w``.
"""

from fractions import Fraction
from math import comb, factorial, log, pi

import numpy as np
from scipy import special as sp

from .errors import DomainError, IndexOutOfRange, PoleError

MAX_INDEX = 64
EULER_GAMMA = 0.57721566490153286061
LOG_2PI = log(2 * pi)


def _bernoulli_table(nmax):
    b = [Fraction(1)]
    for m in range(1, nmax + 1):
        b.append(-sum(comb(m + 1, k) * b[k] for k in range(m)) / (m + 1))
    return tuple(b)


def _euler_table(nmax):
    # 1 = cosh(t) sech(t): sum over even j of C(n, j) E_{n-j} vanishes for n > 0
    e = [1]
    for n in range(1, nmax + 1):
        if n % 2:
            e.append(0)
        else:
            e.append(-sum(comb(n, k) * e[k] for k in range(0, n, 2)))
    return tuple(e)


BERNOULLI = _bernoulli_table(MAX_INDEX)
EULER = _euler_table(MAX_INDEX)
_B2J_OVER_FACT = np.array([float(BERNOULLI[2 * j] / factorial(2 * j)) for j in range(1, MAX_INDEX // 2 + 1)])
_B2J_WIDE = np.array([np.longdouble(f.numerator) / np.longdouble(f.denominator)
                      for f in (BERNOULLI[2 * j] / factorial(2 * j) for j in range(1, MAX_INDEX // 2 + 1))])


def bernoulli_number(n):
    if not 0 <= n <= MAX_INDEX:
        raise IndexOutOfRange(f"Bernoulli index {n} outside [0, {MAX_INDEX}]")
    return BERNOULLI[n]


def euler_number(n):
    if not 0 <= n <= MAX_INDEX:
        raise IndexOutOfRange(f"Euler index {n} outside [0, {MAX_INDEX}]")
    return EULER[n]


def bernoulli_polynomial(n, w):
    """B_n(w).  Exact when ``w`` is a Fraction or int, complex otherwise."""
    if not 0 <= n <= MAX_INDEX:
        raise IndexOutOfRange(f"Bernoulli index {n} outside [0, {MAX_INDEX}]")
    if isinstance(w, (int, Fraction)):
        w = Fraction(w)
        return sum(comb(n, k) * BERNOULLI[k] * w ** (n - k) for k in range(n + 1))
    w = complex(w)
    if w.imag == 0:
        # the monomial sum cancels badly in floating point; real w is exact
        return complex(float(bernoulli_polynomial(n, Fraction(w.real))))
    # Horner in w
    acc = 0j
    for k in range(n + 1):
        acc = acc * w + comb(n, k) * float(BERNOULLI[k])
    return acc


# --- gamma family ---------------------------------------------------------

def _check_gamma_pole(z):
    z = np.asarray(z, dtype=complex)
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(bad):
        raise PoleError(f"gamma function pole at z={z[bad].ravel()[0].real:g}")


def log_gamma(z):
    """Principal log Gamma, continuous off the negative real axis."""
    _check_gamma_pole(z)
    out = sp.loggamma(np.asarray(z, dtype=complex))
    return out if np.ndim(out) else complex(out)


def digamma(z):
    _check_gamma_pole(z)
    out = sp.psi(np.asarray(z, dtype=complex))
    return out if np.ndim(out) else complex(out)


def polygamma(m, z):
    """psi^{(m)}(z) for complex z.  m >= 1 goes through the Hurwitz kernel."""
    if m < 0:
        raise DomainError("polygamma order must be >= 0")
    if m == 0:
        return digamma(z)
    _check_gamma_pole(z)
    z = complex(z)
    corr = 0j
    sign = (-1) ** m * factorial(m)
    while z.real < 0.5:
        corr -= sign * z ** (-m - 1)
        z += 1
    return (-1) ** (m + 1) * factorial(m) * complex(hurwitz_zeta(m + 1, z)) + corr


# --- Hurwitz zeta -------------------------------------------------------------

_EM_TERMS = 24


def _e1(u):
    """(e^u - 1)/u and its derivative, stable near u = 0."""
    u = np.asarray(u)
    u = u.astype(np.result_type(u.dtype, complex))
    small = np.abs(u) < 0.5
    e1 = np.empty_like(u)
    de1 = np.empty_like(u)
    if np.any(small):
        us = u[small]
        a = np.zeros_like(us)
        da = np.zeros_like(us)
        for k in range(22, -1, -1):
            a = a * us + 1.0 / factorial(k + 1)
        for k in range(22, 0, -1):
            da = da * us + k / factorial(k + 1)
        e1[small] = a
        de1[small] = da
    big = ~small
    if np.any(big):
        ub = u[big]
        em = np.expm1(ub)
        e1[big] = em / ub
        de1[big] = (ub * (em + 1) - em) / ub ** 2
    return e1, de1


def _is_nonpos_int(s):
    return s.imag == 0 and s.real <= 0 and s.real == round(s.real)


def _em(s, w, deriv, regular, wide=False):
    """Euler-Maclaurin for zeta(s,w), or zeta(s,w) - 1/(s-1) when ``regular``.

    With ``wide`` the arithmetic runs in extended precision: for Re s < 0 the
    partial sum and the integral term are both far larger than the result.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    smax = float(np.max(np.abs(s)))
    coeffs = _B2J_WIDE if wide else _B2J_OVER_FACT
    if wide:
        s = s.astype(np.clongdouble)
        w = np.clongdouble(w)
    if s.size == 1 and not deriv and _is_nonpos_int(s[0]):
        # remainder vanishes identically: the sum terminates at N = 0
        n_shift = 0
        m_terms = int(-s[0].real) // 2 + 1
    else:
        n_shift = max(0, int(np.ceil(12 + 0.4 * smax - w.real)))
        m_terms = _EM_TERMS
    val = np.zeros_like(s)
    dval = np.zeros_like(s)
    if n_shift:
        logs = np.log(w + np.arange(n_shift))
        powers = np.exp(-np.outer(s, logs))
        val += powers.sum(axis=1)
        if deriv:
            dval -= (powers * logs).sum(axis=1)
    a = w + n_shift
    la = np.log(a)
    if regular:
        u = (1 - s) * la
        e1, de1 = _e1(u)
        val += -la * e1
        if deriv:
            dval += la * la * de1
    else:
        tail = np.exp((1 - s) * la) / (s - 1)
        val += tail
        if deriv:
            dval -= tail * (la + 1 / (s - 1))
    base = np.exp(-s * la)
    val += 0.5 * base
    if deriv:
        dval -= 0.5 * la * base
    p = s.copy()
    dp = np.ones_like(s)
    for j in range(1, m_terms + 1):
        fac = coeffs[j - 1] * np.exp(-(s + 2 * j - 1) * la)
        val += fac * p
        if deriv:
            dval += fac * (dp - la * p)
        k1 = s + 2 * j - 1
        k2 = s + 2 * j
        dp = dp * k1 * k2 + p * (k1 + k2)
        p = p * k1 * k2
    if wide:
        return val.astype(complex), dval.astype(complex)
    return val, dval


def _periodic_route(s, w, deriv):
    """zeta(s, w) for Re s < -4 and real 0 < w <= 1 via Hurwitz's formula."""
    t = 1 - s
    kmax = int(min(2e5, np.ceil((1e-17 * (t.real - 1)) ** (1.0 / (1 - t.real))))) + 8
    k = np.arange(1, kmax + 1, dtype=float)
    lk = np.log(k)
    ph = np.exp(2j * pi * k * w.real)
    amp = np.exp(-t * lk)
    f_plus = np.sum(ph * amp)
    f_minus = np.sum(np.conj(ph) * amp)
    lg = sp.loggamma(t)
    cp = np.exp(lg - t * LOG_2PI - 0.5j * pi * t)
    cm = np.exp(lg - t * LOG_2PI + 0.5j * pi * t)
    val = cp * f_plus + cm * f_minus
    if not deriv:
        return val, 0j
    # d/ds = -d/dt
    dlg = sp.psi(t)
    df_plus = -np.sum(ph * amp * lk)
    df_minus = -np.sum(np.conj(ph) * amp * lk)
    dval_t = (cp * ((dlg - LOG_2PI - 0.5j * pi) * f_plus + df_plus)
              + cm * ((dlg - LOG_2PI + 0.5j * pi) * f_minus + df_minus))
    return val, -dval_t


def _hurwitz_core(s, w, deriv, regular=True):
    w = complex(w)
    if not w.real > 0:
        raise DomainError(f"Hurwitz zeta needs Re w > 0, got w={w}")
    scalar = np.ndim(s) == 0
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    val = np.empty_like(s_arr)
    dval = np.empty_like(s_arr)
    periodic = (s_arr.real < -4) & (w.imag == 0)
    for sel, wide in ((~periodic & (s_arr.real >= -0.5), False), (~periodic & (s_arr.real < -0.5), True)):
        if np.any(sel):
            v, dv = _em(s_arr[sel], w, deriv, regular, wide)
            val[sel] = v
            dval[sel] = dv
    for idx in np.flatnonzero(periodic):
        si = s_arr[idx]
        m = int(np.ceil(w.real)) - 1
        w0 = w - m
        v, dv = _periodic_route(si, w0, deriv)
        # zeta(s,w) = zeta(s,w0) - sum_{k<m} (w0+k)^{-s}
        for k in range(m):
            term = np.exp(-si * np.log(w0 + k))
            v -= term
            dv += np.log(w0 + k) * term
        pole = 1.0 / (si - 1) if regular else 0.0
        val[idx] = v - pole
        dval[idx] = dv + pole * pole
    if w.imag == 0:
        # nonpositive integers: -B_{n+1}(w)/(n+1) in exact rationals
        for idx in np.flatnonzero((s_arr.imag == 0) & (s_arr.real <= 0) & (s_arr.real == np.round(s_arr.real))):
            n = int(-s_arr[idx].real)
            if n + 1 > MAX_INDEX:
                continue
            exact = -bernoulli_polynomial(n + 1, Fraction(w.real)) / (n + 1)
            val[idx] = float(exact) - (1.0 / (s_arr[idx] - 1) if regular else 0.0)
    if scalar:
        return complex(val[0]), complex(dval[0])
    return val, dval


def hurwitz_zeta_regular(s, w):
    """zeta(s,w) - 1/(s-1); entire in s, equals -digamma(w) at s = 1."""
    return _hurwitz_core(s, w, False)[0]


def hurwitz_zeta_regular_deriv(s, w):
    """(value, s-derivative) of zeta(s,w) - 1/(s-1)."""
    return _hurwitz_core(s, w, True)


def hurwitz_zeta(s, w):
    if np.any(np.asarray(s) == 1):
        raise PoleError("Hurwitz zeta has a pole at s=1")
    return _hurwitz_core(s, w, False, regular=False)[0]


def hurwitz_zeta_deriv(s, w):
    """d/ds zeta(s, w)."""
    if np.any(np.asarray(s) == 1):
        raise PoleError("Hurwitz zeta has a pole at s=1")
    return _hurwitz_core(s, w, True, regular=False)[1]


def hurwitz_zeta_markers(w):
    """Finite part at s=1 and s-derivative at s=0, by the Gamma closed forms."""
    w = complex(w)
    if not w.real > 0:
        raise DomainError(f"Hurwitz zeta needs Re w > 0, got w={w}")
    return {"fp_at_1": -digamma(w), "s_deriv_at_0": log_gamma(w) - 0.5 * LOG_2PI}


def riemann_zeta(s):
    return hurwitz_zeta(s, 1.0)


def dirichlet_beta(s):
    """beta(s) = 4^{-s} [zeta(s,1/4) - zeta(s,3/4)], entire."""
    s = np.asarray(s, dtype=complex)
    out = np.exp(-s * log(4)) * (hurwitz_zeta_regular(s, 0.25) - hurwitz_zeta_regular(s, 0.75))
    return out if np.ndim(out) else complex(out)


def dirichlet_beta_deriv(s):
    s = np.asarray(s, dtype=complex)
    v1, d1 = hurwitz_zeta_regular_deriv(s, 0.25)
    v3, d3 = hurwitz_zeta_regular_deriv(s, 0.75)
    out = np.exp(-s * log(4)) * (d1 - d3 - log(4) * (v1 - v3))
    return out if np.ndim(out) else complex(out)


def dirichlet_beta_prime_zero():
    """beta'(0) in closed form."""
    return -1.5 * log(2) - log(pi) + 2 * float(sp.gammaln(0.25))
