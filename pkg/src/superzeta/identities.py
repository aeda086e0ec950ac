"""Machine-checked identity battery.  Each check evaluates both sides by
routes that do not share the identity being tested and reports the
deviation; failures are reported, never raised."""

from dataclasses import dataclass
from math import comb, factorial, pi

import numpy as np

from . import families as F
from . import primary as pr
from .errors import SuperzetaError

TOL = 1e-6


@dataclass
class IdentityCheck:
    name: str
    deviation: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self):
        return bool(np.isfinite(self.deviation) and self.deviation <= self.tolerance)

    def to_dict(self):
        return {"name": self.name, "deviation": self.deviation, "tolerance": self.tolerance,
                "passed": self.passed, "detail": self.detail}


def _plus(P, n, x):
    return F.z1_closed(P, "plus_n", x, n).value


def check_reflection(P, cache, x=2.0, nmax=4):
    """Z1(n, x) = (-1)^n Z1(n, 1 - x), closed values and (n=2) direct sums."""
    dev = max(abs(_plus(P, n, x) - (-1) ** n * _plus(P, n, 1 - x)) for n in range(1, nmax + 1))
    tol = TOL
    if cache is not None and len(cache):
        a = F.z1_direct(P, cache, 2, x)
        b = F.z1_direct(P, cache, 2, 1 - x)
        dev = max(dev, abs(a.value - b.value))
        tol += a.err_est + b.err_est
    return IdentityCheck("reflection", float(dev), tol, f"x={x}, n<={nmax}")


def check_odd_series(P, k=1, x=0.6, lmax=40):
    """Z1(k, x) = -1/2 sum_{l>k} C(l-1, k-1) (2x-1)^(l-k) Z1(l, x), odd k."""
    rhs = sum(comb(l - 1, k - 1) * (2 * x - 1) ** (l - k) * _plus(P, l, x) for l in range(k + 1, lmax + 1))
    dev = abs(_plus(P, k, x) + 0.5 * rhs)
    return IdentityCheck("odd_series", float(dev), TOL, f"k={k}, x={x}, l<={lmax}")


def check_origin_relation(P, cache, sigma=2.25):
    """Z2(sigma, 0) by direct sum vs Z1(2 sigma, 1/2) / (2 cos pi sigma)."""
    if cache is None or not len(cache):
        return IdentityCheck("origin_relation", float("nan"), TOL, "needs a zero cache")
    d = F.z2_direct(P, cache, sigma, 0.0)
    r = F.z2_relation(P, sigma)
    return IdentityCheck("origin_relation", float(abs(d.value - r.value)), TOL + d.err_est, f"sigma={sigma}")


def check_half_sum(P, cache, s=0.7, t=0.4):
    """Z1(s, 1/2 + t) = e^(i pi s/2) Z3(s/2, it) + e^(-i pi s/2) Z3(s/2, -it)."""
    lhs = F.z1_integral(P, s, 0.5 + t).value
    ph = np.exp(0.5j * pi * s)
    up = F.z3_expansion(P, cache, 0.5 * s, 1j * t)
    dn = F.z3_expansion(P, cache, 0.5 * s, -1j * t)
    rhs = ph * up.value + dn.value / ph
    return IdentityCheck("half_sum", float(abs(lhs - rhs)), TOL, f"s={s}, t={t}")


def check_inverse_pair(P, x=2.0, nmax=4):
    """Z1(n, x) -> Z2(m, v) by the inverse binomial relation, then back."""
    z1 = {n: _plus(P, n, x) for n in range(1, nmax + 1)}
    w = 2 * x - 1
    z2 = {m: sum(comb(m + l - 1, m - 1) * w ** (-m - l) * z1[m - l] for l in range(m)) for m in range(1, nmax + 1)}
    dev = 0.0
    for n in range(1, nmax + 1):
        back = n * sum((-1) ** l * comb(n - l, l) * w ** (n - 2 * l) * z2[n - l] / (n - l)
                       for l in range(n // 2 + 1))
        dev = max(dev, abs(back - z1[n]) / max(1.0, abs(z1[n])))
    return IdentityCheck("inverse_pair", float(dev), 1e-10, f"x={x}, n,m<={nmax}")


def check_anomaly(P, x=2.0):
    """Z1(1, x) minus the finite part of Z1(s, x) at s=1 equals b1."""
    val = F.z1_closed(P, "plus_n", x, 1).value
    fp = F.z1_integral_fp1(P, x).value
    return IdentityCheck("anomaly", float(abs(val - fp - P.stirling.b1)), TOL, f"x={x}")


def check_odd_vanishing(P, cache, nmax=5):
    """Z1(n, 1/2) = 0 for odd n, numerically from log Xi and from direct sums."""
    dev = 0.0
    for n in range(1, nmax + 1, 2):
        d = pr.log_xi_derivative(P, 0.5, n, route="circle") / factorial(n - 1)
        dev = max(dev, abs(d))
    tol = TOL
    if cache is not None and len(cache):
        r = F.z1_direct(P, cache, 3, 0.5)
        dev = max(dev, abs(r.value))
        tol += r.err_est
    return IdentityCheck("odd_vanishing", float(dev), tol, f"n odd <= {nmax}")


def check_integral_residues(P, x=2.0, nmax=2):
    """Residue of the Mellin integral at s=n against -(log|L|)^(n)(x)/(n-1)!."""
    dev = 0.0

    def mellin(s):
        vals, _ = F.sin_j(P, s, x)
        return pi / np.sin(pi * s) * vals

    for n in range(1, nmax + 1):
        res = F.laurent_coefficient(mellin, n, -1)
        ref = -pr.log_l_derivatives(P, x, n).real / factorial(n - 1)
        dev = max(dev, abs(res - ref))
    return IdentityCheck("integral_residues", float(dev), TOL, f"x={x}, n<={nmax}")


def _safe(name, fn, *args):
    try:
        return fn(*args)
    except SuperzetaError as e:
        return IdentityCheck(name, float("nan"), TOL, f"error: {e}")


def identity_suite(P, cache):
    # sequential on purpose: mpmath keeps its working precision in a global
    # context, and concurrent incomplete-gamma calls interfere with it
    jobs = [
        ("reflection", check_reflection, P, cache),
        ("odd_series", check_odd_series, P),
        ("origin_relation", check_origin_relation, P, cache),
        ("half_sum", check_half_sum, P, cache),
        ("inverse_pair", check_inverse_pair, P),
        ("anomaly", check_anomaly, P),
        ("odd_vanishing", check_odd_vanishing, P, cache),
        ("integral_residues", check_integral_residues, P),
    ]
    return [_safe(*job) for job in jobs]
