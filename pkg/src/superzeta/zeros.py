"""Ordinates of the nontrivial zeros on the critical line: scan, bisection,
argument-principle count check, a plain-text disk cache, and smooth tail
estimates for truncated sums over zeros."""

import os
from dataclasses import dataclass
from math import ceil, pi
from pathlib import Path

import numpy as np
from scipy import integrate, optimize

from . import primary as pr
from .errors import CountMismatch, DomainError, NumericError

SCAN_STEP = 0.05
BISECT_WIDTH = 1e-9
HEADER = "superzeta-zeros v1"


@dataclass(frozen=True)
class ZeroCache:
    primary_id: str
    enclosures: np.ndarray  # shape (K, 2), rows (lo, hi)
    T_max: float

    @property
    def ordinates(self):
        return self.enclosures.mean(axis=1) if len(self.enclosures) else np.zeros(0)

    @property
    def width_bound(self):
        return float(np.max(np.diff(self.enclosures, axis=1))) if len(self.enclosures) else 0.0

    def __len__(self):
        return len(self.enclosures)

    def truncate(self, T):
        keep = self.enclosures[:, 1] <= T
        return ZeroCache(self.primary_id, self.enclosures[keep], float(T))


@dataclass
class CountCertificate:
    passed: bool
    expected: int
    found: int
    phase_count: float


def _bisect(P, lo, hi, flo):
    lo = lo.copy()
    hi = hi.copy()
    while np.max(hi - lo) > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        fm = pr.hardy(P, mid)
        same = np.sign(fm) == np.sign(flo)
        lo = np.where(same, mid, lo)
        flo = np.where(same, fm, flo)
        hi = np.where(same, hi, mid)
    return lo, hi


def _scan(P, T_max, step):
    n = int(ceil(T_max / step))
    t = np.linspace(0.0, n * step, n + 1)
    t[0] = 1e-3
    vals = np.concatenate([pr.hardy(P, chunk) for chunk in np.array_split(t, max(1, len(t) // 2000))])
    idx = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    idx = idx[t[idx + 1] <= T_max + step]
    if not idx.size:
        return np.zeros((0, 2))
    lo, hi = _bisect(P, t[idx], t[idx + 1], vals[idx])
    enc = np.column_stack([lo, hi])
    return enc[enc[:, 1] <= T_max]


def phase_count(P, T):
    """N(T) = smooth count + arg L(1/2+iT)/pi, with arg L tracked continuously
    from x = 2 (where L is close to 1) along Im x = T to the critical line."""
    if T <= 0:
        return 0.0
    # vertical leg at Re x = 2 stays in the right half-plane of the Euler product
    x = 2 + 1j * T
    arg = np.angle(pr.l_value(P, x))
    n = 64
    while True:
        xs = np.linspace(2, 0.5, n) + 1j * T
        ph = np.angle(pr.l_value(P, xs))
        jumps = np.abs(np.diff(np.unwrap(ph)))
        if np.max(jumps) < pi / 4 or n >= 2**16:
            break
        n *= 4
    total = arg + np.unwrap(ph)[-1] - ph[0]
    return float(pr.smooth_count(P, T) + total / pi)


def verify_count(P, cache):
    T = cache.T_max
    if len(cache) and cache.enclosures[-1, 1] > T:
        raise DomainError("cache extends beyond its certified height")
    # move the horizontal leg off any ordinate sitting at T
    if len(cache) and T - cache.enclosures[-1, 1] < 1e-6:
        T += 1e-5
    nc = phase_count(P, T)
    expected = int(round(nc))
    if abs(nc - expected) > 0.25:
        raise NumericError(f"phase count {nc:.4f} is not close to an integer at T={T}")
    return CountCertificate(expected == len(cache), expected, len(cache), nc)


def locate_zeros(P, T_max, step=SCAN_STEP, max_halvings=4):
    if T_max < 0:
        raise DomainError("T_max must be nonnegative")
    parts = pr.components(P)
    if len(parts) > 1:
        # zeros of different factors can sit closer than any scan step; locate
        # each factor separately and certify the merged list against P
        enc = np.concatenate([locate_zeros(Q, T_max, step, max_halvings).enclosures for Q in parts])
        cache = ZeroCache(P.id, enc[np.argsort(enc[:, 0])], float(T_max))
        cert = verify_count(P, cache)
        if not cert.passed:
            raise CountMismatch(cert.expected, cert.found)
        return cache
    for _ in range(max_halvings + 1):
        cache = ZeroCache(P.id, _scan(P, T_max, step), float(T_max))
        cert = verify_count(P, cache)
        if cert.passed:
            return cache
        step /= 2
    raise CountMismatch(cert.expected, cert.found)


def recheck(P, cache):
    """Sign change at both ends of every enclosure, and disjointness."""
    enc = cache.enclosures
    if not len(enc):
        return True
    a = pr.hardy(P, enc[:, 0])
    b = pr.hardy(P, enc[:, 1])
    return bool(np.all(a * b < 0) and np.all(enc[1:, 0] > enc[:-1, 1]) and enc[0, 0] > 0)


# --- disk cache -------------------------------------------------------------------

def cache_dir():
    return Path(os.environ.get("SUPERZETA_CACHE_DIR", Path.home() / ".cache" / "superzeta"))


def _filename(primary_id, T_max):
    return f"{primary_id.replace(':', '_')}_{T_max:g}.zeros"


def dumps(cache):
    lines = [f"{HEADER} {cache.primary_id} {cache.T_max!r} {len(cache)}"]
    lines += [f"{k + 1} {lo:.17g} {hi:.17g}" for k, (lo, hi) in enumerate(cache.enclosures)]
    return "\n".join(lines) + "\n"


def loads(text):
    lines = text.strip().splitlines()
    head = lines[0].split()
    if " ".join(head[:2]) != HEADER or len(head) != 5:
        raise DomainError("not a zero-cache file")
    pid, T, count = head[2], float(head[3]), int(head[4])
    rows = [ln.split() for ln in lines[1:]]
    enc = np.array([[float(r[1]), float(r[2])] for r in rows]).reshape(-1, 2)
    if len(enc) != count:
        raise DomainError(f"cache header says {count} zeros, file has {len(enc)}")
    return ZeroCache(pid, enc, T)


def save(cache, directory=None):
    d = Path(directory) if directory else cache_dir()
    d.mkdir(parents=True, exist_ok=True)
    path = d / _filename(cache.primary_id, cache.T_max)
    path.write_text(dumps(cache))
    return path


def load_or_locate(P, T_max, directory=None, persist=True):
    """Reuse a cached list at this or a larger height, else locate and save."""
    d = Path(directory) if directory else cache_dir()
    prefix = P.id.replace(":", "_") + "_"
    best = None
    if d.is_dir():
        for f in d.glob(prefix + "*.zeros"):
            try:
                c = loads(f.read_text())
            except (DomainError, ValueError, IndexError):
                continue
            if c.primary_id == P.id and c.T_max >= T_max and (best is None or c.T_max < best.T_max):
                best = c
    if best is not None:
        cache = best.truncate(T_max) if best.T_max > T_max else best
        if best.T_max == T_max or verify_count(P, cache).passed:
            return cache
    cache = locate_zeros(P, T_max)
    if persist:
        try:
            save(cache, d)
        except OSError:
            pass
    return cache


# --- tails --------------------------------------------------------------------------

def inverse_smooth_count(P, n):
    """Height T with smooth_count(T) = n."""
    hi = 10.0
    while pr.smooth_count(P, hi) < n:
        hi *= 2
    return optimize.brentq(lambda t: pr.smooth_count(P, t) - n, 1e-3, hi, xtol=1e-12)


def tail_sum_estimate(P, s, T):
    """Integral over (T, inf) of tau^-s against the smooth zero density, with a
    heuristic bound (twice the first omitted smooth term)."""
    s = complex(s)
    if s.real <= 1:
        raise DomainError("tail estimate needs Re s > 1")
    return tail_integral(P, lambda tau: tau ** (-s), T)


def tail_integral(P, f, T):
    """(estimate, bound) for the sum of f(tau_k) over tau_k > T, f decaying
    faster than 1/tau."""
    def part(fn):
        v, _ = integrate.quad(lambda u: fn(T / u) * pr.smooth_density(P, T / u) * T / u**2, 0, 1, limit=200)
        return v

    re = part(lambda t: np.real(f(t)))
    im = part(lambda t: np.imag(f(t)))
    est = complex(re, im)
    return {"estimate": est, "bound": float(2 * abs(f(T)))}


def zero_sum(P, cache, f, tail=True):
    """Sum of f over the ordinates (real or complex f), plus a smooth tail.

    The tail starts at the height where the smooth count reaches the number of
    zeros used, which treats the last zero as the midpoint of its density cell.
    Returns (value, err_est, zeros_used)."""
    tau = cache.ordinates
    total = complex(np.sum(f(tau))) if len(tau) else 0j
    if not tail:
        return total, 0.0, len(tau)
    Ts = inverse_smooth_count(P, len(tau)) if len(tau) else max(cache.T_max, 1.0)
    t = tail_integral(P, f, Ts)
    return total + t["estimate"], t["bound"], len(tau)
