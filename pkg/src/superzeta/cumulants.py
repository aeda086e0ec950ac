"""Taylor coefficients of log[(x-1)^q L(x)] at x = 1 in the normalisation

    log[(x-1)^q L(x)] = sum_n (-1)^(n-1)/n! g_n (x-1)^n

(generalised Stieltjes cumulants), numerically and in closed form."""

from dataclasses import dataclass
from math import factorial, log, pi

import numpy as np
from scipy import special as sp

from . import primary as pr
from .errors import DomainError, NumericError, RadiusError
from .specfun import EULER_GAMMA

MAX_ORDER = 12


@dataclass
class CumulantSequence:
    primary_id: str
    g: list
    provenance: list

    def __getitem__(self, n):
        return self.g[n]


def cumulants_numeric(P, N=6, radius=0.4, nodes=1024, zeros=None):
    if not 0 <= N <= MAX_ORDER:
        raise DomainError(f"cumulant order must be in [0, {MAX_ORDER}]")
    dist = pr.singularity_distance(P, 1.0, zeros, pole=False)
    if radius >= 0.5 * dist:
        raise RadiusError(f"circle of radius {radius} too close to a zero at distance {dist:.3g}")
    a = pr.taylor_coefficients(lambda z: pr.l_reg(P, z), 1.0, radius, N, take_log=True,
                               kmin=nodes, kmax=nodes)
    g = []
    for n in range(N + 1):
        c = (-1) ** (n - 1) * factorial(n) * a[n]
        # trapezoid noise on the n-th coefficient grows like n!/radius^n
        if abs(c.imag) > 1e-9 * max(1.0, abs(c.real)) + 1e-14 * factorial(n) / radius**n:
            raise NumericError(f"cumulant g_{n} has imaginary part {c.imag:.3g}")
        g.append(float(c.real))
    return CumulantSequence(P.id, g, ["numeric"] * (N + 1))


def _dirichlet_closed(chi):
    d = chi.modulus
    n = np.arange(1, d)
    v = chi.array[1:]
    if chi.parity == 1:
        s1 = np.sum(v * n)
        g0 = -log(-pi / d**1.5 * s1)
        g1 = EULER_GAMMA + log(2 * pi) + np.sum(v * sp.gammaln(n / d)) / np.sum(v * n / d)
        return [g0, float(g1)]
    g0 = -log(-np.sum(v * np.log(np.sin(pi * n / d))) / d**0.5)
    return [g0, None]


def cumulants_closed(P):
    """g_0 and g_1 where a closed formula exists (None marks unavailable)."""
    if P.kind == "dirichlet":
        g = _dirichlet_closed(P.character)
    elif P.character is None:
        g = [0.0, EULER_GAMMA]
    else:
        g0, g1 = _dirichlet_closed(P.character)
        g = [g0, None if g1 is None else EULER_GAMMA + g1]
    prov = ["closed_form" if v is not None else "unavailable" for v in g]
    return CumulantSequence(P.id, g, prov)


def cumulants(P, N=6, zeros=None):
    """Closed values where available, numeric otherwise."""
    num = cumulants_numeric(P, N, zeros=zeros)
    closed = cumulants_closed(P)
    g = list(num.g)
    prov = list(num.provenance)
    for n, v in enumerate(closed.g[: N + 1]):
        if v is not None:
            g[n] = v
            prov[n] = "closed_form"
    return CumulantSequence(P.id, g, prov)
