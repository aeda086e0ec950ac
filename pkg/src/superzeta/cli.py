"""Command-line front end.

    superzeta zeros     --primary riemann --tmax 100
    superzeta eval      --family z1 --primary riemann --s 2 --x 1 --method direct
    superzeta table     --primary dirichlet:-4 --which table4 --format csv
    superzeta cumulants --primary dirichlet:-3 --N 6
    superzeta verify    --primary dedekind:-4 --tmax 60

Exit codes: 0 success, 1 verification failure, 2 domain error, 3 numeric failure.
"""

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import cumulants as cu
from . import families as F
from . import identities
from . import primary as pr
from . import tables
from . import zeros as zz
from .errors import DomainError, RouteUnavailable, SuperzetaError

COMMANDS = ("zeros", "eval", "table", "cumulants", "verify")
FAMILIES = ("z1", "z2", "z3")
METHOD_NAMES = {"auto": "auto", "direct": "direct_sum", "closed": "closed_form", "integral": "integral_rep",
                "expansion": "expansion", "relation": "relation"}
FORMATS = ("json", "csv", "text")
CSV_COLUMNS = ["marker", "closed_form_value", "direct_value", "abs_diff", "tolerance", "pass"]
DEFAULT_TMAX = 100.0


def parse_complex(text):
    if isinstance(text, (int, float, complex)):
        return complex(text)
    t = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise DomainError(f"cannot parse {text!r} as a complex number") from None


def _cstr(z):
    if z is None:
        return None
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    im = repr(z.imag)
    return f"{z.real!r}{im if im.startswith('-') else '+' + im}j"


@dataclass
class CommandConfig:
    command: str
    primary_spec: str = "riemann"
    family: str = "z1"
    s: complex = None
    x: complex = None
    v: complex = None
    y: complex = None
    T_max: float = DEFAULT_TMAX
    method: str = "auto"
    output_format: str = "json"
    cache_path: str = None
    which: str = None
    N: int = 6
    nmax: int = 3
    tolerances: dict = field(default_factory=dict)

    def validate(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if self.method not in METHOD_NAMES:
            raise DomainError(f"unknown method {self.method!r}")
        if self.output_format not in FORMATS:
            raise DomainError(f"unknown output format {self.output_format!r}")
        if self.T_max <= 0:
            raise DomainError("--tmax must be positive")
        if self.command == "eval":
            if self.s is None:
                raise DomainError("eval needs --s (the exponent; sigma for z2/z3)")
            shift = {"z1": "x", "z2": "v", "z3": "y"}[self.family]
            if getattr(self, shift) is None:
                raise DomainError(f"eval --family {self.family} needs --{shift}")
            others = {"x", "v", "y"} - {shift}
            extra = [o for o in others if getattr(self, o) is not None]
            if extra:
                raise DomainError(f"--{extra[0]} does not apply to family {self.family}")
        if self.command == "table" and self.which is None:
            raise DomainError("table needs --which")
        if not 0 <= self.N <= cu.MAX_ORDER:
            raise DomainError(f"--N must be in [0, {cu.MAX_ORDER}]")
        pr.build_primary(self.primary_spec)
        return self

    def to_json(self):
        d = asdict(self)
        for k in ("s", "x", "v", "y"):
            d[k] = _cstr(d[k])
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise DomainError(f"unknown config keys {sorted(unknown)}")
        for k in ("s", "x", "v", "y"):
            if d.get(k) is not None:
                d[k] = parse_complex(d[k])
        return cls(**d)


def build_parser():
    p = argparse.ArgumentParser(prog="superzeta", description="Superzeta functions over zeros of L-functions")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--primary", default="riemann", help="riemann, dirichlet:D or dedekind:D")
        sp.add_argument("--tmax", type=float, default=DEFAULT_TMAX, help="height of the zero list")
        sp.add_argument("--format", dest="output_format", choices=FORMATS, default=None)
        sp.add_argument("--cache-dir", dest="cache_path", default=None,
                        help="zero cache directory (default $SUPERZETA_CACHE_DIR or ~/.cache/superzeta)")

    sp = sub.add_parser("zeros", help="locate (or load) and certify the zero list")
    common(sp)

    sp = sub.add_parser("eval", help="evaluate one value of a family")
    common(sp)
    sp.add_argument("--family", choices=FAMILIES, default="z1")
    sp.add_argument("--s", "--sigma", dest="s", help="exponent s (z1) or sigma (z2, z3)")
    sp.add_argument("--x")
    sp.add_argument("--v")
    sp.add_argument("--y")
    sp.add_argument("--method", choices=list(METHOD_NAMES), default="auto")

    sp = sub.add_parser("table", help="special-value table rows, closed vs numerical")
    common(sp)
    sp.add_argument("--which", required=True, choices=tables.TABLES)
    sp.add_argument("--x", default=None, help="x column for table1 (default 2)")
    sp.add_argument("--v", default=None, help="v column for table2 (default 1/4)")
    sp.add_argument("--nmax", type=int, default=3)
    sp.add_argument("--tol-integral", type=float, default=None)
    sp.add_argument("--tol-direct", type=float, default=None)

    sp = sub.add_parser("cumulants", help="generalised Stieltjes cumulants")
    common(sp)
    sp.add_argument("--N", type=int, default=6)

    sp = sub.add_parser("verify", help="identity battery and cross-method checks")
    common(sp)
    sp.add_argument("--tol-identity", type=float, default=None)
    return p


def config_from_args(argv=None):
    a = build_parser().parse_args(argv)
    fmt = a.output_format or ("csv" if a.command == "table" else "json" if a.command == "eval" else "text")
    tol = {}
    for key in ("tol_integral", "tol_direct", "tol_identity"):
        if getattr(a, key, None) is not None:
            tol[key] = getattr(a, key)
    cfg = CommandConfig(
        command=a.command, primary_spec=a.primary, T_max=a.tmax, output_format=fmt, cache_path=a.cache_path,
        family=getattr(a, "family", "z1"), method=getattr(a, "method", "auto"),
        which=getattr(a, "which", None), N=getattr(a, "N", 6), nmax=getattr(a, "nmax", 3), tolerances=tol)
    for k in ("s", "x", "v", "y"):
        val = getattr(a, k, None)
        setattr(cfg, k, None if val is None else parse_complex(val))
    return cfg.validate()


# --- commands -----------------------------------------------------------------------

def _cache(cfg, P):
    return zz.load_or_locate(P, cfg.T_max, directory=cfg.cache_path)


def _eval_result(cfg, P, cache):
    method = METHOD_NAMES[cfg.method]
    s = cfg.s
    if cfg.family == "z1":
        if method in ("expansion", "relation"):
            raise RouteUnavailable(f"method {cfg.method} does not apply to z1")
        return F.z1_eval(P, s, cfg.x, cache, method)
    if cfg.family == "z2":
        if method == "closed_form":
            if s.imag != 0 or s.real != round(s.real):
                raise RouteUnavailable("closed form only at integer sigma")
            m = int(s.real)
            if m < 0:
                return F.z2_closed(P, "minus_m", cfg.v, -m)
            if m == 0:
                return F.z2_closed(P, "zero", cfg.v)
            return F.z2_closed(P, "plus_m", cfg.v, m)
        if method == "integral_rep":
            raise RouteUnavailable("integral representation is for z1; use relation or expansion")
        return F.z2_eval(P, cache, s, cfg.v, method)
    if method not in ("auto", "direct_sum", "expansion"):
        raise RouteUnavailable(f"method {cfg.method} does not apply to z3")
    return F.z3_eval(P, cache, s, cfg.y, method)


def cmd_eval(cfg, P, out):
    cache = _cache(cfg, P)
    r = _eval_result(cfg, P, cache)
    shift = {"z1": "x", "z2": "v", "z3": "y"}[cfg.family]
    params = {"primary": P.id, ("s" if cfg.family == "z1" else "sigma"): _cstr(cfg.s),
              shift: _cstr(getattr(cfg, shift)), "T_max": cfg.T_max}
    rec = {"family": cfg.family, "parameters": params, **r.to_dict()}
    if cfg.output_format == "json":
        out.write(json.dumps(rec) + "\n")
    elif cfg.output_format == "csv":
        w = csv.writer(out)
        w.writerow(["family", "method", "re", "im", "err_est", "zeros_used"])
        w.writerow([cfg.family, r.method, repr(r.value.real), repr(r.value.imag), r.err_est, r.zeros_used])
    else:
        out.write(f"{cfg.family}{params} = {r.value.real:.15g} {r.value.imag:+.15g}i  "
                  f"[{r.method}, err_est {r.err_est:.2e}, zeros {r.zeros_used}]\n")
    return 0


def cmd_zeros(cfg, P, out):
    cache = _cache(cfg, P)
    cert = zz.verify_count(P, cache)
    if cfg.output_format == "json":
        out.write(json.dumps({"primary": P.id, "T_max": cache.T_max, "count": len(cache),
                              "phase_count": cert.phase_count, "certified": cert.passed,
                              "width_bound": cache.width_bound, "ordinates": cache.ordinates.tolist()}) + "\n")
    elif cfg.output_format == "csv":
        w = csv.writer(out)
        w.writerow(["k", "lo", "hi"])
        for k, (lo, hi) in enumerate(cache.enclosures, 1):
            w.writerow([k, repr(lo), repr(hi)])
    else:
        out.write(f"{P.id}: {len(cache)} zeros up to T={cache.T_max:g} "
                  f"(phase count {cert.phase_count:.6f}, {'certified' if cert.passed else 'MISMATCH'})\n")
        for k, t in enumerate(cache.ordinates[:10], 1):
            out.write(f"  {k:4d}  {t:.12f}\n")
        if len(cache) > 10:
            out.write("  ...\n")
    return 0 if cert.passed else 1


def cmd_table(cfg, P, out):
    cache = _cache(cfg, P)
    x = 2.0 if cfg.x is None else cfg.x
    v = 0.25 if cfg.v is None else cfg.v
    rows = tables.build_table(P, cfg.which, cache, x=x, v=v, nmax=cfg.nmax)
    ti = cfg.tolerances.get("tol_integral")
    td = cfg.tolerances.get("tol_direct")
    for r in rows:
        if r.route == "direct_sum" and td is not None:
            r.tolerance = max(td, r.tolerance if r.tolerance > tables.TOL_DIRECT else 0)
        elif r.route != "direct_sum" and ti is not None:
            r.tolerance = ti
    if cfg.output_format == "csv":
        w = csv.writer(out)
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow(r.as_csv())
    elif cfg.output_format == "json":
        out.write(json.dumps([dict(zip(CSV_COLUMNS, r.as_csv()), route=r.route, note=r.note) for r in rows]) + "\n")
    else:
        for r in rows:
            c = r.as_csv()
            out.write(f"{c[0]:>14}  {c[1]:>28}  {c[2]:>28}  {c[3]:>10}  {c[5]}  ({r.route})\n")
    return 0 if all(r.passed for r in rows) else 1


def cmd_cumulants(cfg, P, out):
    seq = cu.cumulants(P, cfg.N)
    if cfg.output_format == "json":
        out.write(json.dumps({"primary": P.id, "g": seq.g, "provenance": seq.provenance}) + "\n")
    elif cfg.output_format == "csv":
        w = csv.writer(out)
        w.writerow(["n", "g", "provenance"])
        for n, (g, p) in enumerate(zip(seq.g, seq.provenance)):
            w.writerow([n, repr(g), p])
    else:
        for n, (g, p) in enumerate(zip(seq.g, seq.provenance)):
            out.write(f"g_{n} = {g:.15g}  ({p})\n")
    return 0


def cross_method_checks(P, cache, extra_tol=1e-8):
    """Direct sums vs closed values at s = 2, 3, 4 and x = 1, 1/2, 2."""
    out = []
    for x in (1.0, 0.5, 2.0):
        for s in (2, 3, 4):
            d = F.z1_direct(P, cache, s, x)
            c = F.z1_closed(P, "plus_n", x, s)
            dev = abs(d.value - c.value)
            out.append(identities.IdentityCheck(f"direct_vs_closed s={s} x={x}", float(dev),
                                                d.err_est + extra_tol))
    return out


def cmd_verify(cfg, P, out):
    cache = _cache(cfg, P)
    checks = []
    cert = zz.verify_count(P, cache)
    checks.append(identities.IdentityCheck("zero_count", float(abs(cert.expected - cert.found)), 0.0,
                                           f"phase {cert.phase_count:.6f}, located {cert.found}"))
    tol = cfg.tolerances.get("tol_identity")
    for c in identities.identity_suite(P, cache):
        if tol is not None:
            c.tolerance = tol
        checks.append(c)
    checks.extend(cross_method_checks(P, cache))
    ok = all(c.passed for c in checks)
    if cfg.output_format == "json":
        out.write(json.dumps({"primary": P.id, "T_max": cfg.T_max, "passed": ok,
                              "checks": [c.to_dict() for c in checks]}) + "\n")
    elif cfg.output_format == "csv":
        w = csv.writer(out)
        w.writerow(["name", "deviation", "tolerance", "pass"])
        for c in checks:
            w.writerow([c.name, f"{c.deviation:.3e}", f"{c.tolerance:.1e}", "pass" if c.passed else "FAIL"])
    else:
        for c in checks:
            out.write(f"{'pass' if c.passed else 'FAIL'}  {c.name:<32} dev {c.deviation:.2e}  tol {c.tolerance:.1e}\n")
        out.write(f"{P.id}: {'all checks passed' if ok else 'verification FAILED'}\n")
    return 0 if ok else 1


HANDLERS = {"zeros": cmd_zeros, "eval": cmd_eval, "table": cmd_table, "cumulants": cmd_cumulants,
            "verify": cmd_verify}


def run(cfg, out=None):
    out = out or sys.stdout
    P = pr.build_primary(cfg.primary_spec)
    return HANDLERS[cfg.command](cfg, P, out)


def _describe(cfg):
    parts = [f"primary={cfg.primary_spec}"]
    for k in ("family", "s", "x", "v", "y", "which", "method"):
        val = getattr(cfg, k)
        if val is not None and not (k in ("family", "method") and cfg.command != "eval"):
            parts.append(f"{k}={_cstr(val) if isinstance(val, complex) else val}")
    parts.append(f"T_max={cfg.T_max:g}")
    return ", ".join(parts)


def main(argv=None):
    try:
        cfg = config_from_args(argv)
    except SuperzetaError as e:
        args = sys.argv[1:] if argv is None else list(argv)
        print(f"superzeta {args[0] if args else ''}: {type(e).__name__}: {e} (arguments: {' '.join(args[1:])})",
              file=sys.stderr)
        return e.exit_code
    try:
        return run(cfg)
    except SuperzetaError as e:
        print(f"superzeta {cfg.command}: {type(e).__name__}: {e} ({_describe(cfg)})", file=sys.stderr)
        return e.exit_code
    except (ArithmeticError, np.linalg.LinAlgError) as e:
        print(f"superzeta {cfg.command}: numeric failure: {e} ({_describe(cfg)})", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
