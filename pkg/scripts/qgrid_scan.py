"""Scan q = n/d for period-two orbits through b and tabulate which conditions hold.

Each q gives a map with f(f(b)) = b; the table counts how often |b| is an
invariant radius, how often the discriminant a^2 - 4b is a square in Q_p,
and how often both hold.
"""
import argparse

from padic31.periodic import scan_q_grid
from padic31.report import certificate_dict, dumps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--bound", type=int, default=20)
    ap.add_argument("--json", action="store_true", help="dump certificates meeting every condition")
    args = ap.parse_args()

    print(f"{'p':>3} {'q values':>9} {'verified':>9} {'|b| in A':>9} {'sqrt':>6} {'both':>6}")
    keep = []
    for p in args.primes:
        certs = scan_q_grid(p, args.bound)
        both = [c for c in certs if c.verified and c.r_in_A and c.sqrt_disc_exists]
        keep.extend(both)
        print(
            f"{p:>3} {len(certs):>9} {sum(c.verified for c in certs):>9} "
            f"{sum(c.r_in_A for c in certs):>9} {sum(c.sqrt_disc_exists for c in certs):>6} {len(both):>6}"
        )
    if args.json:
        print(dumps([certificate_dict(c) for c in keep]), end="")


if __name__ == "__main__":
    main()
