"""Shared fixtures-by-import: a map zoo, sphere samplers and hypothesis strategies."""
from __future__ import annotations

import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from padic31 import Map31, NormExp
from padic31.ergodic import invariant_radius_set

PRIMES = (2, 3, 5, 7)

# two maps per case, primes 2, 3, 5 all represented
ZOO = {
    "phi_2": Map31(Fraction(5, 2), 1, 2),
    "phi_2b": Map31(Fraction(-9, 10), Fraction(1, 10), 2),
    "phi_3": Map31(Fraction(1, 3), 1, 3),
    "phi_5": Map31(Fraction(1, 5), 5, 5),
    "zeta_2": Map31(2, 1, 2),
    "zeta_3": Map31(3, 3, 3),
    "zeta_5": Map31(25, 5, 5),
    "eta_2": Map31(1, 1, 2),
    "eta_3": Map31(1, 1, 3),
    "eta_5": Map31(1, 2, 5),
}


def invariant_exps(m: Map31, below: int = 6) -> list[int]:
    """Integral exponents e with S_{p^e}(0) invariant, down to alpha - below."""
    A = invariant_radius_set(m)
    hi = math.ceil(m.beta.exp)
    lo = math.floor(m.alpha.exp) - below
    return [e for e in range(lo, hi + 1) if NormExp(e, m.p) in A]


def random_unit(rng: random.Random, p: int, size: int = 10**6) -> Fraction:
    while True:
        n = rng.randint(-size, size)
        d = rng.randint(1, size)
        if n % p and d % p:
            return Fraction(n, d)


def random_point_on(rng: random.Random, m: Map31, e: int) -> Fraction:
    """A rational x with |x|_p = p^e."""
    return Fraction(m.p) ** -e * random_unit(rng, m.p)


def rationals(max_size: int = 10**6, nonzero: bool = False):
    num = st.integers(-max_size, max_size)
    if nonzero:
        num = num.filter(bool)
    return st.builds(Fraction, num, st.integers(1, max_size))


def units(p: int, max_size: int = 10**4):
    return st.builds(
        Fraction,
        st.integers(-max_size, max_size).filter(lambda n: n % p),
        st.integers(1, max_size).filter(lambda d: d % p),
    )


@st.composite
def canonical_maps(draw, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    a = draw(rationals(10**4, nonzero=True))
    b = draw(rationals(10**4, nonzero=True))
    return Map31(a, b, p)


@st.composite
def sphere_points(draw, maps=None):
    """(map, exponent, point) with the point on an invariant sphere."""
    m = draw(maps or st.sampled_from(list(ZOO.values())))
    exps = invariant_exps(m)
    e = draw(st.sampled_from(exps))
    u = draw(units(m.p))
    return m, e, Fraction(m.p) ** -e * u
