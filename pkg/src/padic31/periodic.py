"""Period-two orbits of the canonical map.

With M = x^2 + a x + b and D = a x + b, f(x) = x M / D and

    f(f(x)) - x = x^3 P(x) / (D^2 (a x M + b D)),   P = M^3 + a x M D + b D^2,

so the nonzero period-two points are roots of the sextic P.  Asking x = b to
be one of them gives P(b) = b^3 C(a, b) with the cubic C below, and the curve
C(a, b) = 0 is parametrized by b = h(q), a = q h(q) - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import poly as P
from .errors import ExcludedQ, NotPeriodicPair, SingularPoint
from .ergodic import disc_is_square, invariant_radius_set
from .maps import Map31, eval_f, f_prime_norm
from .padic import NormExp, Rational, as_fraction, check_prime

EXCLUDED_Q = (Fraction(0), Fraction(-1), Fraction(-1, 2))


def sextic_coeffs(a: Rational, b: Rational) -> P.Poly:
    a, b = as_fraction(a), as_fraction(b)
    M = P.poly([b, a, 1])
    D = P.poly([b, a])
    ax = P.poly([0, a])
    return P.add(P.add(P.power(M, 3), P.mul(P.mul(ax, M), D)), P.scale(P.mul(D, D), b))


def sextic_P(a: Rational, b: Rational, x: Rational) -> Fraction:
    return P.evaluate(sextic_coeffs(a, b), as_fraction(x))


def period_two_cubic(a: Rational, b: Rational) -> Fraction:
    """b^3 + (3a+3) b^2 + (4a^2+7a+3) b + 2(a+1)^3; equals P(b)/b^3 for b != 0."""
    a, b = as_fraction(a), as_fraction(b)
    return ((b + 3 * a + 3) * b + 4 * a * a + 7 * a + 3) * b + 2 * (a + 1) ** 3


def period_two_params(q: Rational) -> tuple[Fraction, Fraction]:
    """(b, a) = (h(q), q h(q) - 1) with h(q) = q / (1 + 3q + 4q^2 + 2q^3)."""
    q = as_fraction(q)
    if q in EXCLUDED_Q:
        raise ExcludedQ(f"q = {q} gives a pole of h or a b = 0")
    # 1 + 3q + 4q^2 + 2q^3 = (1 + q)(2q^2 + 2q + 1); the quadratic has no real root
    h = q / (1 + 3 * q + 4 * q * q + 2 * q**3)
    return h, q * h - 1


@dataclass(frozen=True)
class PeriodicOrbitCert:
    q: Fraction
    a: Fraction
    b: Fraction
    p: int
    orbit: tuple
    norms: tuple
    r_in_A: bool
    sqrt_disc_exists: bool
    verified: bool
    multiplier_norm: NormExp | None
    failure: str | None = None


def two_cycle_certificate(q: Rational, p: int) -> PeriodicOrbitCert:
    """Build the map from q and check {b, f(b)} is a period-two orbit, recording every field."""
    p = check_prime(p)
    q = as_fraction(q)
    b, a = period_two_params(q)
    m = Map31(a, b, p)
    A = invariant_radius_set(m)
    sq = disc_is_square(m)
    nb = m.norm(b)
    try:
        fb = eval_f(m, b)
        ffb = eval_f(m, fb)
    except SingularPoint as exc:
        return PeriodicOrbitCert(q, a, b, p, (b,), (nb,), nb in A, sq, False, None, str(exc))
    mult = f_prime_norm(m, b) * f_prime_norm(m, fb)
    return PeriodicOrbitCert(
        q, a, b, p, (b, fb), (nb, m.norm(fb)), nb in A, sq, ffb == b, mult
    )


def q_grid(bound: int) -> Iterator[Fraction]:
    """Admissible q = n/d with |n| <= bound, 1 <= d <= bound, each value once."""
    seen = set()
    for d in range(1, bound + 1):
        for n in range(-bound, bound + 1):
            q = Fraction(n, d)
            if q not in seen and q not in EXCLUDED_Q:
                seen.add(q)
                yield q


def scan_q_grid(p: int, bound: int) -> list[PeriodicOrbitCert]:
    return [two_cycle_certificate(q, p) for q in q_grid(bound)]


def orbit_sphere_swap_check(m: Map31, t1: Rational, t2: Rational, x: Rational) -> bool:
    """Whether |f(x) - t2| = |x - t1| for the period-two pair t1 <-> t2."""
    t1, t2, x = as_fraction(t1), as_fraction(t2), as_fraction(x)
    if eval_f(m, t1) != t2 or eval_f(m, t2) != t1:
        raise NotPeriodicPair(f"f does not swap {t1} and {t2}")
    return m.norm(eval_f(m, x) - t2) == m.norm(x - t1)


def unit_a_excluded(m: Map31) -> bool:
    """If |b| is an invariant radius then |a| != 1 (vacuous otherwise)."""
    if m.norm(m.b) not in invariant_radius_set(m):
        return True
    return m.delta != NormExp(Fraction(0), m.p)
