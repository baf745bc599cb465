from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padic31.errors import (
    InsufficientPrecision,
    NoRootInQp,
    NotPrime,
    ParseError,
    PrimeMismatch,
    ZeroB,
    ZeroInput,
)
from padic31.padic import (
    INF,
    Ball,
    BallKind,
    NormExp,
    PadicApprox,
    PadicExact,
    arith,
    check_prime,
    digit_expand,
    format_rational,
    is_prime,
    norm,
    parse_rational,
    root_norms_newton,
    sqrt_qp,
    valuation,
)
from strategies import PRIMES, rationals


def factor_valuation(x: Fraction, p: int) -> int:
    """Independent oracle: exponent of p from sympy's factorization."""
    return sympy.factorint(x.numerator).get(p, 0) - sympy.factorint(x.denominator).get(p, 0)


# -- primes and literals


@given(st.integers(-10, 10**6))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))


@pytest.mark.parametrize("bad", [1, 0, -3, 4, 91, 2.0, True, "5"])
def test_check_prime_rejects(bad):
    with pytest.raises(NotPrime):
        check_prime(bad)


@pytest.mark.parametrize("text,value", [("-9/10", Fraction(-9, 10)), ("41", 41), ("1/10", Fraction(1, 10)), ("6/4", Fraction(3, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1 /2", "+3", "1/0", "1/-2", "0.5", "a", "--1", "1/2/3"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


@given(rationals())
def test_literal_round_trip(x):
    assert parse_rational(format_rational(x)) == x


# -- valuations and norm axioms


@pytest.mark.parametrize("x,p,v", [(Fraction(1, 10), 2, -1), (18, 3, 2), (Fraction(-9, 10), 5, -1), (7, 2, 0)])
def test_valuation_examples(x, p, v):
    assert valuation(x, p) == v
    assert norm(x, p) == NormExp(-v, p)


def test_valuation_of_zero():
    assert valuation(0, 7) == INF
    assert norm(0, 7).is_zero
    assert norm(0, 7) < norm(Fraction(1, 7**40), 7)


@given(rationals(nonzero=True), st.sampled_from(PRIMES))
def test_valuation_matches_factorization(x, p):
    assert valuation(x, p) == factor_valuation(x, p)


@given(rationals(), rationals(), st.sampled_from(PRIMES))
def test_norm_axioms(x, y, p):
    nx, ny = norm(x, p), norm(y, p)
    assert nx.is_zero == (x == 0)
    assert norm(x * y, p) == nx * ny
    assert norm(x + y, p) <= max(nx, ny)
    if nx != ny:
        assert norm(x + y, p) == max(nx, ny)


def test_norm_exp_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        NormExp(1, 2) < NormExp(1, 3)


def test_norm_exp_algebra():
    r = NormExp(Fraction(1, 3), 2)
    assert r**3 == NormExp(1, 2)
    assert NormExp(1, 2).root(3) == r
    assert (r * r) / r == r
    assert str(r) == "2^1/3"
    assert NormExp(-2, 3).value() == Fraction(1, 9)
    with pytest.raises(ValueError):
        r.value()


# -- exact arithmetic


def test_arith_examples():
    x, y = PadicExact.parse("1/10", 2), PadicExact.parse("1/5", 2)
    s = arith(x, x, "add")
    assert s.value == Fraction(1, 5) and s.norm() == NormExp(0, 2)
    assert arith(x, PadicExact(0, 2), "add") == x
    assert arith(x, y, "mul").norm() == NormExp(1, 2)
    with pytest.raises(ZeroDivisionError):
        arith(x, PadicExact(0, 2), "div")
    with pytest.raises(PrimeMismatch):
        arith(x, PadicExact(1, 3), "add")


@given(rationals(), rationals(nonzero=True), st.sampled_from(PRIMES))
def test_exact_ops_match_fraction(x, y, p):
    X, Y = PadicExact(x, p), PadicExact(y, p)
    assert (X + Y).value == x + y
    assert (X - Y).value == x - y
    assert (X * Y).value == x * y
    assert (X / Y).value == x / y
    assert (X / Y).den > 0


# -- digit expansions


@pytest.mark.parametrize(
    "x,p,n,v,digits",
    [
        (Fraction(1, 5), 2, 5, 0, (1, 0, 1, 1, 0)),
        (1, 3, 3, 0, (1, 0, 0)),
        (Fraction(1, 10), 2, 4, -1, (1, 0, 1, 1)),
    ],
)
def test_digit_expand_examples(x, p, n, v, digits):
    d = digit_expand(x, n, p)
    assert (d.valuation, d.digits) == (v, digits)


def test_digit_expand_zero():
    with pytest.raises(ZeroInput):
        digit_expand(0, 4, 2)


@given(rationals(nonzero=True), st.sampled_from(PRIMES), st.integers(1, 40))
def test_digit_round_trip(x, p, n):
    d = digit_expand(x, n, p)
    assert d.digits[0] != 0
    value = Fraction(p) ** d.valuation * sum(c * p**i for i, c in enumerate(d.digits))
    # x - value vanishes modulo p^(v + n)
    assert x == value or valuation(x - value, p) >= d.valuation + n


@settings(max_examples=200)
@given(rationals(10**4), rationals(10**4), st.sampled_from(PRIMES), st.integers(8, 30))
def test_approx_arithmetic_agrees_with_exact(x, y, p, n):
    X, Y = PadicApprox.from_rational(x, p, n), PadicApprox.from_rational(y, p, n)
    for approx, exact in ((X + Y, x + y), (X - Y, x - y), (X * Y, x * y)):
        assert approx.agrees_with(exact)
    if y:
        assert (X / Y).agrees_with(x / y)


def test_approx_zero_has_no_norm():
    z = PadicApprox.from_rational(1, 2, 10) - 1
    assert z.is_zero
    with pytest.raises(InsufficientPrecision):
        z.norm()


def test_approx_cancellation_loses_precision():
    x = PadicApprox.from_rational(1, 2, 10)
    y = x + 2**6  # agrees with x in the first 6 digits
    d = y - x
    assert d.valuation == 6 and d.precision == 4


# -- square roots


def test_sqrt_41_in_q2():
    r = sqrt_qp(41, 20, 2).root
    assert r.unit % 8 in (3, 5)
    assert (r * r).agrees_with(41)


def test_sqrt_exact_root():
    root = sqrt_qp(Fraction(9, 4), 12, 2)
    assert root.exact == Fraction(3, 2)
    assert root.root.agrees_with(Fraction(3, 2))


@pytest.mark.parametrize(
    "x,p,criterion",
    [(2, 2, "odd valuation"), (3, 2, "unit not 1 mod 8"), (5, 2, "unit not 1 mod 8"), (2, 3, "quadratic non-residue"), (Fraction(1, 5), 5, "odd valuation")],
)
def test_sqrt_criteria(x, p, criterion):
    with pytest.raises(NoRootInQp) as info:
        sqrt_qp(x, 10, p)
    assert info.value.criterion == criterion


def _is_square_mod(u: Fraction, p: int, k: int) -> bool:
    # brute force: does some unit square agree with the unit u modulo p^k?
    mod = p**k
    target = u.numerator * pow(u.denominator, -1, mod) % mod
    return any(t * t % mod == target for t in range(1, mod) if t % p)


@settings(max_examples=300)
@given(rationals(500, nonzero=True), st.sampled_from((2, 3, 5)))
def test_sqrt_existence_matches_brute_force(x, p):
    v = valuation(x, p)
    unit = x / Fraction(p) ** v
    # a unit is a square in Q_p iff it is a square mod p^6 (mod 8 suffices for p = 2)
    expected = v % 2 == 0 and _is_square_mod(unit, p, 6 if p > 2 else 3)
    try:
        root = sqrt_qp(x, 30, p).root
    except NoRootInQp:
        assert not expected
    else:
        assert expected
        assert (root * root).agrees_with(x)


# -- root norms


@pytest.mark.parametrize(
    "a,b,p,norms",
    [
        (Fraction(5, 2), 1, 2, (-1, 1)),
        (0, 1, 2, (0, 0)),
        (Fraction(-9, 10), Fraction(1, 10), 2, (0, 1)),
        (2, 1, 2, (0, 0)),
    ],
)
def test_root_norms_examples(a, b, p, norms):
    assert root_norms_newton(a, b, p) == tuple(NormExp(e, p) for e in norms)


def test_root_norms_zero_b():
    with pytest.raises(ZeroB):
        root_norms_newton(1, 0, 2)


@given(rationals(nonzero=True), rationals(nonzero=True), st.sampled_from(PRIMES))
def test_root_norm_relations(a, b, p):
    alpha, beta = root_norms_newton(a, b, p)
    delta = norm(a, p)
    assert alpha <= beta
    assert alpha * beta == norm(b, p)
    if alpha != beta:
        assert delta == beta
    else:
        assert delta <= alpha


@settings(max_examples=200)
@given(rationals(10**3, nonzero=True), rationals(10**3, nonzero=True), st.sampled_from((2, 3, 5)))
def test_root_norms_match_lifted_roots(a, b, p):
    disc = a * a - 4 * b
    assume(disc != 0)
    try:
        s = sqrt_qp(disc, 60, p).root
    except NoRootInQp:
        assume(False)
    roots = [(s - a) / 2, (-s - a) / 2]
    lifted = sorted(r.norm() for r in roots)
    assert tuple(lifted) == root_norms_newton(a, b, p)


# -- balls


def test_ball_membership():
    c = Fraction(3)
    r = NormExp(-1, 2)
    assert Ball(c, r, BallKind.CLOSED).contains(5)
    assert not Ball(c, r, BallKind.OPEN).contains(5)
    assert Ball(c, r, BallKind.SPHERE).contains(5)
    assert Ball(c, r, BallKind.OPEN).contains(7)
    assert str(Ball(c, r)) == "V_{2^-1}(3)"
    with pytest.raises(ValueError):
        Ball(c, NormExp.zero(2))
