"""Reproduce the period-two orbit {1/10, 1/5} and probe the spheres around it.

Prints the certificate for q = 1, the recomputed root norms, and for each
radius r the distribution of |f(x) - 1/5| over points with |x - 1/10| = r.
"""
import argparse
import random
from collections import Counter
from fractions import Fraction

from padic31.errors import SingularPoint
from padic31.maps import Map31, eval_f
from padic31.padic import NormExp
from padic31.periodic import two_cycle_certificate
from padic31.report import certificate_dict, claim_warnings, dumps, map_summary


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--exps", type=int, nargs="+", default=[-3, -2, -1, 1, 2, 3])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cert = two_cycle_certificate(1, 2)
    m = Map31(cert.a, cert.b, 2)
    print(dumps({"certificate": certificate_dict(cert), "map": map_summary(m)}), end="")
    for w in claim_warnings(m):
        print("warning:", w)

    rng = random.Random(args.seed)
    t1, t2 = cert.orbit
    print("\nexp(r)  |f(x) - t2| distribution")
    for e in args.exps:
        hist = Counter()
        while sum(hist.values()) < args.samples:
            u = Fraction(2 * rng.randint(-10**4, 10**4) + 1, 2 * rng.randint(0, 10**4) + 1)
            x = t1 + Fraction(2) ** -e * u
            try:
                hist[m.norm(eval_f(m, x) - t2)] += 1
            except SingularPoint:
                continue
        r = NormExp(e, 2)
        cells = ", ".join(f"{k}: {v}" for k, v in sorted(hist.items()))
        print(f"{e:>6}  {cells}{'' if set(hist) == {r} else '   <- not r'}")


if __name__ == "__main__":
    main()
