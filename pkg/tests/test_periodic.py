import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings

from padic31.ergodic import invariant_radius_set
from padic31.errors import ExcludedQ, NotPeriodicPair, SingularPoint
from padic31.maps import Map31, eval_f
from padic31.padic import NormExp
from padic31.spheres import SphereClass, classify_sphere
from padic31.periodic import (
    EXCLUDED_Q,
    orbit_sphere_swap_check,
    period_two_cubic,
    period_two_params,
    q_grid,
    scan_q_grid,
    sextic_coeffs,
    sextic_P,
    two_cycle_certificate,
    unit_a_excluded,
)
from strategies import canonical_maps, rationals

A, B, X = sympy.symbols("a b x")
EX2 = Map31(Fraction(-9, 10), Fraction(1, 10), 2)

# the expanded sextic as printed in the literature, lowest degree first
PUBLISHED_SEXTIC = [2 * B**3, 6 * A * B**2, 3 * B**2 + 6 * A**2 * B, 7 * A * B + 2 * A**3, 3 * B + 4 * A**2, 3 * A, sympy.Integer(1)]


def test_sextic_closed_form_matches_published_expansion():
    a, b = Fraction(-9, 10), Fraction(1, 10)
    got = sextic_coeffs(a, b)
    want = [Fraction(str(c.subs({A: sympy.Rational(-9, 10), B: sympy.Rational(1, 10)}))) for c in PUBLISHED_SEXTIC]
    assert list(got) == want


def test_sextic_symbolic_identity():
    f = lambda t: t * (t**2 + A * t + B) / (A * t + B)
    numer, _ = sympy.fraction(sympy.together(f(f(X)) - X))
    P = sum(c * X**i for i, c in enumerate(PUBLISHED_SEXTIC))
    assert sympy.expand(sympy.factor(numer) - X**3 * P) == 0
    M, D = X**2 + A * X + B, A * X + B
    assert sympy.expand(M**3 + A * X * M * D + B * D**2 - P) == 0


def test_sextic_examples():
    assert sextic_P(3, 7, 0) == 2 * 7**3
    assert sextic_P(Fraction(-9, 10), Fraction(1, 10), Fraction(1, 10)) == 0
    assert period_two_cubic(Fraction(-9, 10), Fraction(1, 10)) == 0
    assert period_two_cubic(-1, 0) == 0


@given(rationals(10**3), rationals(10**3, nonzero=True))
def test_sextic_at_b_factors(a, b):
    assert sextic_P(a, b, b) == b**3 * period_two_cubic(a, b)


@settings(max_examples=200)
@given(canonical_maps(), rationals(10**3))
def test_sextic_roots_are_period_two_points(m, x):
    # f(f(x)) - x = x^3 P(x) / (D^2 (a x M + b D)) wherever both sides are defined
    D = m.a * x + m.b
    M = x * x + m.a * x + m.b
    inner = m.a * x * M + m.b * D
    assume(D != 0 and inner != 0)
    lhs = eval_f(m, eval_f(m, x)) - x
    assert lhs == x**3 * sextic_P(m.a, m.b, x) / (D * D * inner)


def test_params_examples():
    assert period_two_params(1) == (Fraction(1, 10), Fraction(-9, 10))
    assert period_two_params(2) == (Fraction(2, 39), Fraction(-35, 39))
    for q in EXCLUDED_Q:
        with pytest.raises(ExcludedQ):
            period_two_params(q)


@given(rationals(40, nonzero=True))
def test_params_lie_on_the_curve(q):
    assume(q not in EXCLUDED_Q)
    b, a = period_two_params(q)
    assert a * b != 0
    assert period_two_cubic(a, b) == 0


def test_certificate_example_p2():
    c = two_cycle_certificate(1, 2)
    assert c.orbit == (Fraction(1, 10), Fraction(1, 5))
    assert c.verified and c.sqrt_disc_exists
    assert c.norms == (NormExp(1, 2), NormExp(0, 2))
    assert not c.r_in_A
    # the orbit straddles the two critical spheres; the multiplier is measured, not assumed
    assert c.multiplier_norm == NormExp(3, 2)


def test_certificate_example_p3():
    c = two_cycle_certificate(1, 3)
    assert c.verified
    assert c.norms == (NormExp(0, 3), NormExp(0, 3))


def test_certificate_excluded():
    with pytest.raises(ExcludedQ):
        two_cycle_certificate(Fraction(-1, 2), 2)


def test_grid_all_verified_and_indifferent():
    certs = scan_q_grid(2, 12)
    assert len(certs) == len(set(q_grid(12)))
    assert all(c.verified for c in certs)
    for c in certs:
        A = invariant_radius_set(Map31(c.a, c.b, c.p))
        if all(r in A for r in c.norms):
            assert c.multiplier_norm == NormExp(0, 2)


def test_singular_orbit_is_recorded(monkeypatch):
    import padic31.periodic as per

    def boom(m, x):
        raise SingularPoint("forced")

    monkeypatch.setattr(per, "eval_f", boom)
    c = per.two_cycle_certificate(1, 2)
    assert not c.verified and c.failure == "forced" and c.multiplier_norm is None


# -- swapping spheres around the two-cycle


def test_swap_examples():
    t1, t2 = Fraction(1, 10), Fraction(1, 5)
    assert orbit_sphere_swap_check(EX2, t1, t2, t1)
    assert orbit_sphere_swap_check(EX2, t1, t2, t1 + 2)
    assert EX2.norm(eval_f(EX2, t1 + Fraction(1, 4)) - t2) == NormExp(3, 2)
    assert not orbit_sphere_swap_check(EX2, t1, t2, t1 + Fraction(1, 4))
    with pytest.raises(NotPeriodicPair):
        orbit_sphere_swap_check(EX2, t1, 1, t1)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_swap_holds_on_small_spheres(k):
    # |x - 1/10| = 2^-k is below |1/10| and |1/5|; the swap is exact there
    rng = random.Random(k)
    t1, t2 = Fraction(1, 10), Fraction(1, 5)
    for _ in range(50):
        u = Fraction(2 * rng.randint(-500, 500) + 1, 2 * rng.randint(0, 500) + 1)
        assert orbit_sphere_swap_check(EX2, t1, t2, t1 + 2**k * u)


# -- unit a versus invariant |b|


def test_unit_a_examples():
    assert unit_a_excluded(EX2)
    m = Map31(Fraction(1, 8), Fraction(1, 4), 2)  # alpha = 1/2, beta = 8, |b| = 4
    assert NormExp(2, 2) in invariant_radius_set(m)
    assert m.delta != NormExp(0, 2)
    assert unit_a_excluded(m)


@given(canonical_maps())
def test_unit_a_never_with_invariant_b(m):
    assert unit_a_excluded(m)
    if m.delta == NormExp(0, m.p):
        assert m.norm(m.b) not in invariant_radius_set(m)


def _square_in_Qp(x: Fraction, p: int) -> bool:
    # brute force on residues: x = p^v u is a square iff v is even and u is a square mod p (mod 8 for p = 2)
    v = 0
    while x.numerator % p == 0:
        x, v = x / p, v + 1
    while x.denominator % p == 0:
        x, v = x * p, v - 1
    mod = 8 if p == 2 else p
    u = x.numerator * pow(x.denominator, -1, mod) % mod
    return v % 2 == 0 and any(t * t % mod == u for t in range(1, mod) if t % p)


def _grid_oracle(p, bound):
    out = []
    for d in range(1, bound + 1):
        for n in range(-bound, bound + 1):
            q = Fraction(n, d)
            if q in (0, -1, Fraction(-1, 2)) or Fraction(n, d).denominator != d:
                continue
            b = q / ((1 + q) * (2 * q * q + 2 * q + 1))
            a = q * b - 1
            f = lambda x: x * (x * x + a * x + b) / (a * x + b)
            m = Map31(a, b, p)
            r = m.norm(b)
            in_A = classify_sphere(m, r) in (SphereClass.SIEGEL_INTERIOR, SphereClass.INVARIANT_ANNULUS)
            if f(f(b)) == b and in_A and _square_in_Qp(a * a - 4 * b, p):
                out.append(q)
    return sorted(out)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_filtered_grid_matches_exhaustive_oracle(p):
    certs = scan_q_grid(p, 10)
    got = sorted(c.q for c in certs if c.verified and c.r_in_A and c.sqrt_disc_exists)
    assert got == _grid_oracle(p, 10)
    for c in certs:
        assert c.sqrt_disc_exists == _square_in_Qp(c.a * c.a - 4 * c.b, p)
