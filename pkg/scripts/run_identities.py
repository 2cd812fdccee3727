"""Exact identity sweeps over wider ranges than the test suite uses.

    python scripts/run_identities.py [--N-max 32] [--m-max 10]
"""

import argparse
import time

from appellpoly import bspline as bs
from appellpoly import verify as vf
from appellpoly.appell import biorthogonality_check, bspline_distribution, is_appell, is_identity
from appellpoly.families import gen_bernoulli, gen_euler


def sweep(label, fn, values):
    t0 = time.perf_counter()
    failed = [v for v in values if not fn(v)]
    status = "ok" if not failed else f"FAILED at {failed}"
    print(f"{label:<44} {len(values):>4} cases  {time.perf_counter() - t0:6.2f}s  {status}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--N-max", type=int, default=32)
    ap.add_argument("--m-max", type=int, default=10)
    a = ap.parse_args()
    Ns = list(range(1, a.N_max + 1))
    m = a.m_max

    def biorth(N):
        phi = bspline_distribution(N, m)
        return is_identity(biorthogonality_check(phi, gen_bernoulli(N, m), m, m))

    sweep("biorthogonality (B-spline / Bernoulli)", biorth, Ns)
    sweep("Appell property (Bernoulli, Euler)", lambda N: is_appell(gen_bernoulli(N, m)) and is_appell(gen_euler(N, m)), Ns)
    sweep("Bernoulli-Euler identity", lambda N: vf.identity_bernoulli_euler(N, m), Ns)
    sweep("alpha=2 scaling (Euler, Bernoulli)", lambda N: vf.scaling_characterization(gen_euler(N, m), gen_bernoulli(N, m), 2, m), Ns)
    sweep("polys_from_pair == gen_bernoulli", lambda N: vf.polys_from_pair(vf.bernoulli_pair(N, m), m) == gen_bernoulli(N, m), Ns)
    sweep("B-spline refinement", bs.refinement_check, Ns)
    sweep("B-spline mgf consistency", lambda N: bs.mgf_consistency(N, m), Ns)
    sweep("B-spline recursion == truncated power", lambda N: bs.bspline(N) == bs.bspline_truncated_power(N), Ns)
    sweep("Laguerre recurrence (integer alpha)", lambda al: vf.identity_laguerre_recurrence(al, 2 * m), list(range(0, 9)))


if __name__ == "__main__":
    main()
