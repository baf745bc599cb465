"""Visit frequencies of an orbit over the depth-d balls of an invariant sphere.

Defaults reproduce the k = 1 member of the family a = 2k + 1/2, b = k on
S_1(0) with seed 1; pass --csv to keep the table.
"""
import argparse
from fractions import Fraction

from padic31.ergodic import equidistribution_probe, ergodicity_verdict
from padic31.maps import Map31
from padic31.padic import NormExp, format_rational, parse_rational
from padic31.report import PROBE_HEADER, probe_rows, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--a", type=parse_rational, default=Fraction(5, 2))
    ap.add_argument("--b", type=parse_rational, default=Fraction(1))
    ap.add_argument("--r-exp", type=int, default=0)
    ap.add_argument("--seed", type=parse_rational, default=Fraction(1))
    ap.add_argument("--iters", type=int, default=2**15)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--csv")
    args = ap.parse_args()

    m = Map31(args.a, args.b, args.p)
    r = NormExp(args.r_exp, args.p)
    v = ergodicity_verdict(m, r)
    print(f"verdict on S_{r}(0): {v.verdict.value} ({v.reason})")
    table = equidistribution_probe(m, r, args.seed, args.iters, args.depth)
    worst = max(abs(row.frequency - row.haar_weight) for row in table)
    print(f"{'cell':>8} {'count':>8} {'freq':>10} {'haar':>10}")
    for row in table:
        print(f"{format_rational(row.cell_rep):>8} {row.count:>8} {float(row.frequency):>10.5f} {float(row.haar_weight):>10.5f}")
    print(f"max |freq - haar| = {float(worst):.5f}")
    if args.csv:
        write_csv(args.csv, PROBE_HEADER, probe_rows(table))


if __name__ == "__main__":
    main()
