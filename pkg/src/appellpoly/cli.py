"""Command-line front end.

    appellpoly family hermite --m-max 3
    appellpoly verify bernoulli-euler --N 8 --m-max 10
    appellpoly converge bernoulli-hermite --m 4 --N 16,32,64,128
    appellpoly bspline 4 moments --k-max 2

Exit codes: 0 success/pass, 1 failed check or internal precondition, 2 usage error.
Rationals are printed as ``p/q``; floats with 17 significant digits.
Environment: ``REPORT_DIR`` (where ``--save`` writes JSON reports, default ``.``)
and ``SERIES_ORDER_CAP`` (largest accepted truncation order, default 64).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import bspline as bs
from . import families as fam
from . import verify as vf
from .appell import (
    appell_from_distribution,
    binomial_distribution,
    biorthogonality_check,
    bspline_distribution,
    is_appell,
)

SCHEMA_VERSION = "1"


class UsageError(Exception):
    """Bad arguments: exit 2."""


def _order_cap() -> int:
    try:
        return int(os.environ.get("SERIES_ORDER_CAP", "64"))
    except ValueError:
        raise UsageError("SERIES_ORDER_CAP must be an integer")


def _check_order(n: int, what: str = "--m-max") -> int:
    if n < 0:
        raise UsageError(f"{what} must be >= 0")
    cap = _order_cap()
    if n > cap:
        raise UsageError(f"{what}={n} exceeds SERIES_ORDER_CAP={cap}")
    return n


def fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def json_value(v):
    """Exact rationals become ``"p/q"`` strings; ints and floats stay numbers."""
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _parse_list(text: str, conv=Fraction) -> list:
    try:
        return [conv(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse list {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}")


def _int_or_frac(v: Fraction):
    return int(v) if v.denominator == 1 else v


# --- family ------------------------------------------------------------------

def _build_family(a) -> list:
    m = _check_order(a.m_max)
    name = a.name
    if name == "hermite":
        return fam.hermite(m)
    if name == "laguerre":
        return fam.laguerre(_rational(a.alpha), m)
    if name in ("bernoulli", "euler", "buchholz"):
        N = int(a.N)
        if N < 1:
            raise UsageError("--N must be >= 1")
        return {"bernoulli": fam.gen_bernoulli, "euler": fam.gen_euler, "buchholz": fam.buchholz}[name](N, m)
    if name == "gegenbauer":
        return fam.gegenbauer(_int_or_frac(_rational(a.N)), m)
    if name == "meixner":
        return fam.meixner(_rational(a.beta), _rational(a.c), m)
    if name == "meixner-pollaczek":
        omega = float(a.omega)
        if not 0 < omega < math.pi:
            raise UsageError("--omega must lie in (0, pi)")
        return fam.meixner_pollaczek(float(_rational(a.lam)), omega, m)
    raise UsageError(f"unknown family {name!r}")


def cmd_family(a, out) -> int:
    polys = _build_family(a)
    width = max(p.degree for p in polys) + 1
    if a.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "family": a.name,
            "params": _family_params(a),
            "polys": [[json_value(c) for c in p.coeffs] for p in polys],
        }
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(_csv([[fmt(c) for c in p.coeffs] or ["0"] for p in polys], [f"c_{k}" for k in range(width)]))
    return 0


def _family_params(a) -> dict:
    keys = {
        "laguerre": ("alpha",),
        "bernoulli": ("N",),
        "euler": ("N",),
        "buchholz": ("N",),
        "gegenbauer": ("N",),
        "meixner": ("beta", "c"),
        "meixner-pollaczek": ("lam", "omega"),
    }.get(a.name, ())
    d = {"m_max": a.m_max}
    for k in keys:
        d[k] = getattr(a, k)
    return d


# --- verify --------------------------------------------------------------------

def _verdict(out, suite, check, passed, **params) -> bool:
    rec = {"suite": suite, "check": check, "params": {k: json_value(v) for k, v in params.items()}, "passed": passed}
    out.write(json.dumps(rec) + "\n")
    if not passed:
        sys.stderr.write(f"FAILED {suite}/{check} {json.dumps(rec['params'])}\n")
    return passed


def cmd_verify(a, out) -> int:
    suite = a.suite
    m_max = _check_order(a.m_max)
    N = a.N
    if suite in ("appell", "biorthogonality", "bernoulli-euler", "scaling", "refinement", "moments", "mgf") and N < 1:
        raise UsageError("--N must be >= 1")
    ok = True
    if suite == "appell":
        for name, build in (("bernoulli", fam.gen_bernoulli), ("euler", fam.gen_euler)):
            ok &= _verdict(out, suite, name, is_appell(build(N, m_max)), N=N, m_max=m_max)
    elif suite == "biorthogonality":
        k = _check_order(a.max, "--max")
        phi = bspline_distribution(N, k)
        G = biorthogonality_check(phi, appell_from_distribution(phi, k), k, k)
        spline = bs.bspline(N)
        B = fam.gen_bernoulli(N, k)
        for n in range(k + 1):
            for m in range(k + 1):
                expected = 1 if m == n else 0
                via_spline = bs.pp_integrate_against(spline, (B[m] / math.factorial(m)).derivative(n))
                ok &= _verdict(out, suite, "delta", G[n][m] == expected and via_spline == expected,
                               N=N, n=n, m=m, value=G[n][m])
    elif suite == "bernoulli-euler":
        ok &= _verdict(out, suite, "identity", vf.identity_bernoulli_euler(N, m_max), N=N, m_max=m_max)
    elif suite == "scaling":
        alpha = _rational(a.alpha) if a.alpha is not None else Fraction(2)
        P, Qs = fam.gen_euler(N, m_max), fam.gen_bernoulli(N, m_max)
        ok &= _verdict(out, suite, "euler-bernoulli", vf.scaling_characterization(P, Qs, alpha, m_max),
                       N=N, alpha=alpha, m_max=m_max)
    elif suite == "laguerre":
        alpha = int(_rational(a.alpha)) if a.alpha is not None else 0
        if alpha < 0:
            raise UsageError("--alpha must be a non-negative integer")
        ok &= _verdict(out, suite, "recurrence", vf.identity_laguerre_recurrence(alpha, m_max),
                       alpha=alpha, n_max=m_max)
        G = vf.laguerre_orthogonality(alpha, m_max)
        norms = vf.laguerre_norms(alpha, m_max)
        good = all(G[i][j] == (norms[i] if i == j else 0) for i in range(m_max + 1) for j in range(m_max + 1))
        ok &= _verdict(out, suite, "orthogonality", good, alpha=alpha, m_max=m_max)
    elif suite == "refinement":
        ok &= _verdict(out, suite, "two-scale", bs.refinement_check(N), N=N)
    elif suite == "moments":
        mu = bs.pp_moments(bs.bspline(N), 2)
        ok &= _verdict(out, suite, "mean", mu[1] == Fraction(N, 2), N=N, value=mu[1])
        ok &= _verdict(out, suite, "variance", mu[2] - mu[1] ** 2 == Fraction(N, 12), N=N, value=mu[2] - mu[1] ** 2)
    elif suite == "mgf":
        ok &= _verdict(out, suite, "mgf", bs.mgf_consistency(N, m_max), N=N, order=m_max)
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return 0 if ok else 1


# --- converge ------------------------------------------------------------------

CASES = (
    "bernoulli-hermite",
    "euler-hermite",
    "buchholz-hermite",
    "gegenbauer-hermite",
    "laguerre-hermite",
    "mp-laguerre",
    "meixner-laguerre",
    "sinc-lemma",
    "bspline-gauss",
)


def run_case(a) -> vf.ConvergenceReport:
    case = a.case
    try:
        grid = vf.Grid.parse(a.grid) if a.grid else None
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad --grid: {e}")
    degree = a.m if a.m is not None else a.n
    if case in ("bernoulli-hermite", "euler-hermite", "buchholz-hermite", "gegenbauer-hermite", "laguerre-hermite"):
        m = _check_order(degree if degree is not None else 4, "--m")
        Ns = _parse_list(a.N or "16,32,64,128")
        if any(N <= 0 for N in Ns):
            raise UsageError("--N entries must be positive")
        fn = {
            "bernoulli-hermite": vf.converge_bernoulli_hermite,
            "euler-hermite": vf.converge_euler_hermite,
            "buchholz-hermite": vf.converge_buchholz_hermite,
            "gegenbauer-hermite": vf.converge_gegenbauer_hermite,
            "laguerre-hermite": vf.converge_laguerre_hermite,
        }[case]
        Ns = [_int_or_frac(N) for N in Ns]
        if case == "laguerre-hermite":
            return fn(m, Ns, grid, normalization=a.normalization)
        if case != "gegenbauer-hermite" and any(not isinstance(N, int) for N in Ns):
            raise UsageError("--N entries must be integers for this case")
        return fn(m, Ns, grid)
    if case == "mp-laguerre":
        n = _check_order(degree if degree is not None else 3, "--n")
        omegas = _parse_list(a.omega or "0.2,0.1,0.05,0.025", float)
        if any(not 0 < w < math.pi for w in omegas):
            raise UsageError("--omega entries must lie in (0, pi)")
        return vf.converge_mp_laguerre(n, _rational(a.alpha or "0"), omegas, grid)
    if case == "meixner-laguerre":
        n = _check_order(degree if degree is not None else 3, "--n")
        cs = _parse_list(a.c or "0.9,0.95,0.975,0.9875")
        if any(not 0 < c < 1 for c in cs):
            raise UsageError("--c entries must lie in (0, 1)")
        return vf.converge_meixner_laguerre(n, _rational(a.alpha or "0"), cs, grid)
    if case == "sinc-lemma":
        M = _check_order(degree if degree is not None else 8, "--m")
        if M < 2 or M % 2:
            raise UsageError("--m must be even and >= 2 for sinc-lemma")
        Ns = [int(N) for N in _parse_list(a.N or "16,32,64,128")]
        if any(N < 1 for N in Ns):
            raise UsageError("--N entries must be >= 1")
        return vf.sinc_lemma_check(Ns, M)
    if case == "bspline-gauss":
        k = degree if degree is not None else (a.k or 0)
        Ns = [int(N) for N in _parse_list(a.N or "8,16,32,64")]
        if any(N <= k + 2 for N in Ns):
            raise UsageError("bspline-gauss needs every N > k + 2")
        return vf.bspline_gauss_report(k, Ns, grid)
    raise UsageError(f"unknown case {case!r}")


def report_document(r: vf.ConvergenceReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "case": r.case_id,
        "params": {k: json_value(v) for k, v in {"degree": r.degree, **r.params}.items()},
        "grid": {"start": json_value(r.grid.start), "stop": json_value(r.grid.stop), "count": r.grid.count},
        "entries": [{"param": json_value(p), "sup_error": e} for p, e in r.entries],
        "empirical_rate": r.empirical_rate,
        "passed": r.passed,
        "provenance": {"tool": "appellpoly", "version": __version__},
    }


def report_csv(r: vf.ConvergenceReport) -> str:
    rows = [[fmt(p), fmt(e)] for p, e in r.entries]
    rows.append(["empirical_rate", "" if r.empirical_rate is None else fmt(r.empirical_rate)])
    return _csv(rows, ["param", "sup_error"])


def cmd_converge(a, out) -> int:
    r = run_case(a)
    doc = report_document(r)
    if a.format == "json":
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(report_csv(r))
    if a.save:
        target = Path(os.environ.get("REPORT_DIR", ".")) / f"{r.case_id}-{r.degree}.json"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(doc, indent=2) + "\n")
    return 0 if r.passed else 1


# --- bspline -------------------------------------------------------------------

def cmd_bspline(a, out) -> int:
    N = a.N
    if N < 1:
        raise UsageError("B-spline order must be >= 1")
    if a.action == "pieces":
        pieces = bs.bspline(N).pieces
        out.write(_csv([[fmt(c) for c in p.coeffs] for p in pieces], [f"c_{k}" for k in range(N)]))
        return 0
    if a.action == "moments":
        mu = bs.pp_moments(bs.bspline(N), _check_order(a.k_max, "--k-max"))
        out.write(_csv([[k, fmt(v)] for k, v in enumerate(mu)], ["k", "moment"]))
        return 0
    if a.action == "gauss-error":
        Ns = [int(v) for v in _parse_list(a.N_list)] if a.N_list else [N]
        if any(n <= a.k + 2 for n in Ns):
            raise UsageError("gauss-error needs N > k + 2")
        r = vf.bspline_gauss_report(a.k, Ns)
        out.write(report_csv(r))
        return 0 if (len(Ns) == 1 or r.passed) else 1
    raise UsageError(f"unknown action {a.action!r}")


# --- parser --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="appellpoly", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("family", help="coefficient table of a polynomial family")
    f.add_argument("name", help=", ".join(fam.FAMILIES))
    f.add_argument("--m-max", type=int, default=5)
    f.add_argument("--N", default="1")
    f.add_argument("--alpha", default="0")
    f.add_argument("--beta", default="1")
    f.add_argument("--c", default="1/2")
    f.add_argument("--lambda", dest="lam", default="1")
    f.add_argument("--omega", default="0.5")
    f.add_argument("--format", choices=("csv", "json"), default="csv")

    v = sub.add_parser("verify", help="run an exact identity suite")
    v.add_argument("suite")
    v.add_argument("--N", type=int, default=4)
    v.add_argument("--m-max", type=int, default=10)
    v.add_argument("--max", type=int, default=6, help="Gram size for biorthogonality")
    v.add_argument("--alpha", default=None)

    c = sub.add_parser("converge", help="run a limit experiment")
    c.add_argument("case")
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--N")
    c.add_argument("--alpha")
    c.add_argument("--omega")
    c.add_argument("--c")
    c.add_argument("--grid", help="start:stop:count")
    c.add_argument("--normalization", choices=("stated", "unit-variance"), default="stated")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--save", action="store_true", help="also write the JSON report to $REPORT_DIR")

    b = sub.add_parser("bspline", help="B-spline pieces, moments, Gaussian error")
    b.add_argument("N", type=int)
    b.add_argument("action", choices=("pieces", "moments", "gauss-error"))
    b.add_argument("--k-max", type=int, default=4)
    b.add_argument("--k", type=int, default=0)
    b.add_argument("--N-list", dest="N_list")
    return p


COMMANDS = {"family": cmd_family, "verify": cmd_verify, "converge": cmd_converge, "bspline": cmd_bspline}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        buf = io.StringIO()
        code = COMMANDS[args.command](args, buf)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return 2
    except (ValueError, ArithmeticError) as e:
        err.write(f"error: {e}\n")
        return 1
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
