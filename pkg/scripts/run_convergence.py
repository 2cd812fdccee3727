"""Run every limit experiment and print a table of errors and rates.

    python scripts/run_convergence.py [--max-degree 6] [--out reports/]

With ``--out`` each case is also written as a JSON report document.
"""

import argparse
import json
from pathlib import Path

from appellpoly import verify as vf
from appellpoly.cli import report_document

LADDER = [16, 32, 64, 128]


def cases(max_degree: int):
    for m in range(max_degree + 1):
        yield vf.converge_bernoulli_hermite(m, LADDER)
        yield vf.converge_euler_hermite(m, LADDER)
        yield vf.converge_buchholz_hermite(m, LADDER)
        yield vf.converge_gegenbauer_hermite(m, LADDER)
        yield vf.converge_laguerre_hermite(m, LADDER)
        yield vf.converge_laguerre_hermite(m, LADDER, normalization="unit-variance")
    for alpha in (0, 1, 2):
        for n in range(max_degree + 1):
            yield vf.converge_mp_laguerre(n, alpha, [0.2, 0.1, 0.05, 0.025])
            yield vf.converge_meixner_laguerre(n, alpha, [0.9, 0.95, 0.975, 0.9875])
    yield vf.sinc_lemma_check(LADDER)
    for k in (0, 1, 2):
        yield vf.bspline_gauss_report(k, [8, 16, 32, 64])


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--max-degree", type=int, default=6)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    print(f"{'case':<22}{'deg':>4}  {'params':<28}{'errors':<52}{'rate':>8}  verdict")
    for r in cases(args.max_degree):
        extra = {k: v for k, v in r.params.items() if k not in ("m", "n", "target_degree")}
        errs = " ".join(f"{e:.2e}" for e in r.errors)
        rate = "-" if r.empirical_rate is None else f"{r.empirical_rate:+.3f}"
        tag = ",".join(f"{k}={v}" for k, v in extra.items())
        print(f"{r.case_id:<22}{r.degree:>4}  {tag:<28}{errs:<52}{rate:>8}  {'pass' if r.passed else 'FAIL'}")
        if args.out:
            name = f"{r.case_id}-{r.degree}" + "".join(f"-{v}" for v in extra.values()) + ".json"
            (args.out / name).write_text(json.dumps(report_document(r), indent=2) + "\n")


if __name__ == "__main__":
    main()
