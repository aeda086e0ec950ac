"""Rows of the special-value tables, each evaluated twice: once from the
tabulated closed formula, once by an independent numerical route."""

from dataclasses import dataclass
from math import factorial, log, pi

import numpy as np
from scipy import special as sp

from . import cumulants as cu
from . import families as F
from . import primary as pr
from . import specfun
from .errors import DomainError
from .specfun import EULER_GAMMA

TOL_INTEGRAL = 1e-6
TOL_DIRECT = 1e-4
TABLES = ("table1", "table2", "table3", "table4", "table5", "table6", "table7")


@dataclass
class Row:
    marker: str
    closed_form_value: complex
    direct_value: complex
    tolerance: float
    route: str
    note: str = ""

    @property
    def abs_diff(self):
        return abs(self.closed_form_value - self.direct_value)

    @property
    def passed(self):
        return bool(self.abs_diff <= self.tolerance)

    def as_csv(self):
        return [self.marker, _fmt(self.closed_form_value), _fmt(self.direct_value),
                f"{self.abs_diff:.3e}", f"{self.tolerance:.1e}", "pass" if self.passed else "FAIL"]


def _fmt(z):
    z = complex(z)
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
        return f"{z.real:.15g}"
    return f"{z.real:.15g}{z.imag:+.15g}j"


def _b(n):
    return float(specfun.bernoulli_number(n))


def _e(n):
    return float(specfun.euler_number(n))


def _zeta(n):
    return specfun.riemann_zeta(n).real


def _beta(n):
    return specfun.dirichlet_beta(n).real


def _log_abs_l_deriv(P, x, n):
    if n == 0:
        return float(np.log(abs(pr.l_value(P, x))))
    return pr.log_l_derivatives(P, x, n).real


def _numeric_rows(P, x, nmax, cache, rows):
    """Attach the independent numerical value to each (marker, closed) pair."""
    out = []
    for marker, closed, note in rows:
        if marker.startswith("-") or marker == "0":
            n = 0 if marker == "0" else int(marker[1:])
            val = F.z1_integral(P, -n, x).value
            route, tol = "integral_rep", TOL_INTEGRAL
        elif marker == "deriv0":
            val = F.z1_integral_deriv0(P, x).value
            route, tol = "integral_rep", TOL_INTEGRAL
        elif marker == "fp1":
            val = F.z1_integral_fp1(P, x).value
            route, tol = "integral_rep", TOL_INTEGRAL
        elif marker == "+1":
            if cache is None:
                continue
            r = F.z1_direct(P, cache, 1, x)
            val = r.value
            route, tol = "direct_sum", max(TOL_DIRECT, r.err_est)
        else:
            val = F.z1_integral(P, int(marker[1:]), x).value
            route, tol = "integral_rep", TOL_INTEGRAL
        out.append(Row(marker, complex(closed), complex(val), tol, route, note))
    return out


def _markers(nmax):
    return [f"-{n}" for n in range(nmax, 0, -1)] + ["0", "deriv0", "fp1", "+1"] + [f"+{n}" for n in range(2, nmax + 1)]


def table1(P, x, nmax=3, cache=None):
    rows = []
    for m in _markers(nmax):
        if m.startswith("-"):
            v = F.z1_closed(P, "minus_n", x, int(m[1:])).value
        elif m == "0":
            v = F.z1_closed(P, "zero", x).value
        elif m in ("deriv0", "fp1"):
            v = F.z1_closed(P, m, x).value
        else:
            v = F.z1_closed(P, "plus_n", x, int(m[1:])).value
        rows.append((m, v, ""))
    return _numeric_rows(P, x, nmax, cache, rows)


def _cumulant_list(P, nmax):
    seq = cu.cumulants(P, max(nmax, 1))
    return seq.g, seq.provenance


def table4(P, nmax=3, cache=None):
    """Dirichlet L-function, x = 1."""
    if P.kind != "dirichlet":
        raise DomainError("table4 is for Dirichlet L-functions")
    a, d = P.parity, P.modulus
    g, prov = _cumulant_list(P, nmax)
    rows = []
    for n in range(nmax, 0, -1):
        rows.append((f"-{n}", ((a - 1) * (2**n - 1) + a * 2**n) * _b(n + 1) / (n + 1), ""))
    rows.append(("0", 0.5 * a, ""))
    rows.append(("deriv0", 0.5 * ((1 - a) * log(2) + a * log(pi)) + g[0], f"g0 {prov[0]}"))
    rows.append(("fp1", (a - 0.5) * log(2) - 0.5 * EULER_GAMMA + g[1], f"g1 {prov[1]}"))
    rows.append(("+1", (a - 1) * log(2) - 0.5 * log(pi / d) - 0.5 * EULER_GAMMA + g[1], f"g1 {prov[1]}"))
    for n in range(2, nmax + 1):
        v = ((a - 1) * (1 - 2.0**-n) - a * 2.0**-n) * _zeta(n) + g[n] / factorial(n - 1)
        rows.append((f"+{n}", v, f"g{n} {prov[n]}"))
    return _numeric_rows(P, 1.0, nmax, cache, rows)


def table5(P, nmax=4, cache=None):
    """Dirichlet L-function, x = 1/2."""
    if P.kind != "dirichlet":
        raise DomainError("table5 is for Dirichlet L-functions")
    a, d = P.parity, P.modulus
    rows = []
    for n in range(nmax, 0, -1):
        if n % 2 == 0:
            v = 2.0 ** (-n - 1) * (a - 0.5) * _e(n)
        else:
            v = -0.5 * (1 - 2.0**-n) * _b(n + 1) / (n + 1)
        rows.append((f"-{n}", v, ""))
    rows.append(("0", 0.5 * (a - 0.5), ""))
    lg = 2 * sp.gammaln(0.25) - log(pi)
    rows.append(("deriv0", (0.75 - a) * log(2) + (a - 0.5) * lg - _log_abs_l_deriv(P, 0.5, 0), ""))
    rows.append(("fp1", 0.5 * log(2 * pi / d), ""))
    rows.append(("+1", 0.0, ""))
    for n in range(2, nmax + 1):
        if n % 2:
            v = 0.0
        else:
            v = -0.5 * ((2**n - 1) * _zeta(n) + (1 - 2 * a) * 2**n * _beta(n)) \
                - _log_abs_l_deriv(P, 0.5, n) / factorial(n - 1)
        rows.append((f"+{n}", v, ""))
    return _numeric_rows(P, 0.5, nmax, cache, rows)


def _field(P):
    if P.kind != "dedekind":
        raise DomainError("tables 6 and 7 are for Dedekind zeta functions")
    return P.field


def table6(P, nmax=3, cache=None):
    """Dedekind zeta function, x = 1."""
    r1, r2, nk, dk = _field(P)
    g, prov = _cumulant_list(P, nmax)
    rows = []
    for n in range(nmax, 0, -1):
        rows.append((f"-{n}", (-r1 * (2**n - 1) + r2) * _b(n + 1) / (n + 1) + 1, ""))
    rows.append(("0", 0.5 * r2 + 2, ""))
    rows.append(("deriv0", 0.5 * ((r1 + r2) * log(2) + r2 * log(pi)) + g[0], f"g0 {prov[0]}"))
    rows.append(("fp1", -0.5 * r1 * log(2) + 1 - 0.5 * nk * EULER_GAMMA + g[1], f"g1 {prov[1]}"))
    rows.append(("+1", 0.5 * log(abs(dk)) - (r1 + r2) * log(2) - 0.5 * nk * log(pi) + 1
                 - 0.5 * nk * EULER_GAMMA + g[1], f"g1 {prov[1]}"))
    for n in range(2, nmax + 1):
        v = -(r1 * (1 - 2.0**-n) + r2) * _zeta(n) + 1 + g[n] / factorial(n - 1)
        rows.append((f"+{n}", v, f"g{n} {prov[n]}"))
    return _numeric_rows(P, 1.0, nmax, cache, rows)


def table7(P, nmax=4, cache=None):
    """Dedekind zeta function, x = 1/2."""
    r1, r2, nk, dk = _field(P)
    rows = []
    for n in range(nmax, 0, -1):
        if n % 2 == 0:
            v = 2.0 ** (-n + 1) * (1 - r1 * _e(n) / 8)
        else:
            v = -0.5 * nk * (1 - 2.0**-n) * _b(n + 1) / (n + 1)
        rows.append((f"-{n}", v, ""))
    rows.append(("0", 2 - 0.25 * r1, ""))
    lg = 2 * sp.gammaln(0.25) - log(pi)
    rows.append(("deriv0", (2 + 0.75 * r1 + 0.5 * r2) * log(2) - 0.5 * r1 * lg - _log_abs_l_deriv(P, 0.5, 0), ""))
    rows.append(("fp1", 0.5 * (nk * log(2 * pi) - log(abs(dk))), ""))
    rows.append(("+1", 0.0, ""))
    for n in range(2, nmax + 1):
        if n % 2:
            v = 0.0
        else:
            v = (-0.5 * nk * (2**n - 1) * _zeta(n) - 0.5 * r1 * 2**n * _beta(n) + 2 ** (n + 1)
                 - _log_abs_l_deriv(P, 0.5, n) / factorial(n - 1))
        rows.append((f"+{n}", v, ""))
    return _numeric_rows(P, 0.5, nmax, cache, rows)


def table2(P, v, mmax=2, cache=None):
    """Z2(sigma, v) at integer sigma and the sigma-derivative at 0."""
    v = complex(v)
    rows = []
    for m in range(mmax, 0, -1):
        closed = F.z2_closed(P, "minus_m", v, m).value
        rows.append(Row(f"-{m}", closed, F.z2_eval(P, cache, -m, v, method="relation" if v == 0 else "expansion").value,
                        TOL_INTEGRAL, "expansion" if v != 0 else "relation"))
    rows.append(Row("0", F.z2_closed(P, "zero", v).value,
                    F.z2_eval(P, cache, 0, v, method="relation" if v == 0 else "expansion").value,
                    TOL_INTEGRAL, "expansion" if v != 0 else "relation"))
    if v == 0:
        num = F.z1_integral_deriv0(P, 0.5).value
        rows.append(Row("deriv0", F.z2_closed(P, "deriv0", v).value, num, TOL_INTEGRAL, "relation"))
    else:
        num = F.laurent_coefficient(
            lambda s: np.array([F.z2_expansion(P, cache, si, v).value for si in s]), 0.0, 1, h=0.1, nodes=24)
        rows.append(Row("deriv0", F.z2_closed(P, "deriv0", v).value, num, TOL_INTEGRAL, "expansion"))
    if cache is not None:
        for m in range(1, mmax + 1):
            r = F.z2_direct(P, cache, m, v)
            rows.append(Row(f"+{m}", F.z2_closed(P, "plus_m", v, m).value, r.value,
                            max(TOL_DIRECT, r.err_est), "direct_sum"))
    return rows


def table3(P, mmax=2, cache=None):
    """Z2 at v = 0 and v = 1/4 expressed through Z1 at x = 1/2 and x = 1."""
    rows = []
    st = P.stirling
    for m in range(mmax, 0, -1):
        c0 = 0.5 * (-1) ** m * F.z1_closed(P, "minus_n", 0.5, 2 * m).value
        rows.append(Row(f"-{m} v=0", c0, F.z2_closed(P, "minus_m", 0, m).value, 1e-12, "closed_form"))
        c4 = 0.5 * sum(sp.comb(m, j) * (-1) ** j * 2.0 ** (-2 * (m - j)) * F.z1_closed(P, "minus_n", 0.5, 2 * j).value
                       for j in range(m + 1))
        rows.append(Row(f"-{m} v=1/4", c4, F.z2_closed(P, "minus_m", 0.25, m).value, 1e-12, "closed_form"))
    z0 = 0.5 * F.z1_closed(P, "zero", 0.5).value
    rows.append(Row("0 v=0", z0, F.z2_closed(P, "zero", 0).value, 1e-12, "closed_form"))
    rows.append(Row("deriv0 v=0", F.z1_closed(P, "deriv0", 0.5).value, F.z1_integral_deriv0(P, 0.5).value,
                    TOL_INTEGRAL, "integral_rep"))
    rows.append(Row("deriv0 v=1/4", -0.5 * st.b1 + F.z1_closed(P, "deriv0", 1.0).value,
                    F.z2_closed(P, "deriv0", 0.25).value, 1e-10, "closed_form"))
    for m in range(1, mmax + 1):
        c0 = 0.5 * (-1) ** m * F.z1_closed(P, "plus_n", 0.5, 2 * m).value
        c4 = sum(sp.comb(m + l - 1, m - 1) * F.z1_closed(P, "plus_n", 1.0, m - l).value for l in range(m))
        if cache is not None:
            r0 = F.z2_direct(P, cache, m, 0.0)
            r4 = F.z2_direct(P, cache, m, 0.25)
            rows.append(Row(f"+{m} v=0", c0, r0.value, max(TOL_DIRECT, r0.err_est), "direct_sum"))
            rows.append(Row(f"+{m} v=1/4", c4, r4.value, max(TOL_DIRECT, r4.err_est), "direct_sum"))
        else:
            rows.append(Row(f"+{m} v=1/4", c4, F.z2_closed(P, "plus_m", 0.25, m).value, 1e-10, "closed_form"))
    return rows


def build_table(P, which, cache=None, x=2.0, v=0.25, nmax=3):
    which = which.lower()
    if which == "table1":
        return table1(P, x, nmax, cache)
    if which == "table2":
        return table2(P, v, min(nmax, 3), cache)
    if which == "table3":
        return table3(P, min(nmax, 3), cache)
    if which == "table4":
        return table4(P, nmax, cache)
    if which == "table5":
        return table5(P, max(nmax, 2), cache)
    if which == "table6":
        return table6(P, nmax, cache)
    if which == "table7":
        return table7(P, max(nmax, 2), cache)
    raise DomainError(f"unknown table {which!r}; choose from {', '.join(TABLES)}")
