"""(3,1)-rational maps: the general form, reduction to the canonical form, evaluation.

General form:    f(x) = (x^3 + a x^2 + b x + c) / (d x + e),  d != 0
Canonical form:  f(x) = (x^3 + a x^2 + b x) / (a x + b),      a b != 0

A general map with a unique (triple) fixed point x0 is conjugate, through
t -> t + x0, to the canonical map with parameters (d, d x0 + e).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import gmpy2

from . import poly as P
from .errors import DegenerateAB, InsufficientPrecision, NotUniqueFixedPoint, SingularPoint
from .padic import (
    NormExp,
    PadicApprox,
    Rational,
    as_fraction,
    check_prime,
    root_norms_newton,
)


@dataclass(frozen=True)
class Map31General:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    p: int

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        check_prime(self.p)
        if self.d == 0:
            raise ValueError("d must be nonzero")

    @classmethod
    def from_canonical(cls, x0: Rational, a: Rational, b: Rational, p: int) -> Map31General:
        """The general map that reduces to (a, b) with fixed point x0."""
        x0, a, b = as_fraction(x0), as_fraction(a), as_fraction(b)
        e = b - a * x0
        return cls(a - 3 * x0, e + 3 * x0 * x0, -(x0**3), a, e, p)

    @property
    def x_hat(self) -> Fraction:
        return -self.e / self.d

    def fixed_point_cubic(self) -> P.Poly:
        return P.poly([self.c, self.b - self.e, self.a - self.d, 1])

    def __call__(self, x: Rational) -> Fraction:
        x = as_fraction(x)
        den = self.d * x + self.e
        if den == 0:
            raise SingularPoint(f"x = {x} is the pole of the map")
        return (((x + self.a) * x + self.b) * x + self.c) / den


@dataclass(frozen=True)
class Map31:
    """The canonical map f(x) = (x^3 + a x^2 + b x) / (a x + b)."""

    a: Fraction
    b: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        check_prime(self.p)
        if self.a * self.b == 0:
            raise DegenerateAB("canonical map needs a*b != 0")

    @cached_property
    def root_norms(self) -> tuple[NormExp, NormExp]:
        return root_norms_newton(self.a, self.b, self.p)

    @property
    def alpha(self) -> NormExp:
        return self.root_norms[0]

    @property
    def beta(self) -> NormExp:
        return self.root_norms[1]

    @cached_property
    def delta(self) -> NormExp:
        return NormExp.of(self.a, self.p)

    @property
    def x_hat(self) -> Fraction:
        return -self.b / self.a

    @property
    def disc(self) -> Fraction:
        return self.a * self.a - 4 * self.b

    def norm(self, x: Rational) -> NormExp:
        return NormExp.of(x, self.p)

    def __call__(self, x: Rational) -> Fraction:
        return eval_f(self, x)


@dataclass(frozen=True)
class TripleRoot:
    x0: Fraction


@dataclass(frozen=True)
class DoubleAndSimple:
    double: Fraction
    simple: Fraction


@dataclass(frozen=True)
class ThreeDistinct:
    """Rational roots plus the remaining factor (irreducible over Q) if any."""

    rational_roots: tuple
    irreducible_factor: tuple = ()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(f: P.Poly) -> list[Fraction]:
    """Distinct rational roots of f, by the rational root theorem."""
    roots = []
    f = P.poly(f)
    while f and f[0] == 0:
        roots.append(Fraction(0))
        f = f[1:]
    if P.degree(f) < 1:
        return sorted(set(roots))
    lcm = 1
    for c in f:
        lcm = math.lcm(lcm, c.denominator)
    ints = [int(c * lcm) for c in f]
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if P.evaluate(f, cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


def fixed_point_structure(m: Map31General):
    """Multiplicity pattern of the roots of x^3 + (a-d) x^2 + (b-e) x + c."""
    x0 = (m.d - m.a) / 3
    if 3 * x0 * x0 == m.b - m.e and x0**3 == -m.c:
        return TripleRoot(x0)
    cubic = m.fixed_point_cubic()
    g = P.gcd(cubic, P.derivative(cubic))
    if P.degree(g) == 1:
        double = -g[0]
        return DoubleAndSimple(double, (m.d - m.a) - 2 * double)
    roots = rational_roots(cubic)
    rest = cubic
    for r in roots:
        rest, _ = P.divmod_poly(rest, P.poly([-r, 1]))
    return ThreeDistinct(tuple(roots), rest if P.degree(rest) > 0 else ())


def reduce_to_canonical(m: Map31General) -> tuple[Fraction, Map31]:
    """Conjugate a unique-fixed-point map by t -> t + x0; returns (x0, canonical map)."""
    structure = fixed_point_structure(m)
    if not isinstance(structure, TripleRoot):
        raise NotUniqueFixedPoint(f"fixed-point cubic has pattern {structure}")
    x0 = structure.x0
    A, B = m.d, m.d * x0 + m.e
    if A * B == 0:
        raise DegenerateAB(f"reduced parameters A={A}, B={B} have A*B = 0")
    return x0, Map31(A, B, m.p)


def _reduced(num: int, den: int) -> Fraction:
    # math.gcd is quadratic on the megabit integers of long orbits; gmpy2 is not
    g = int(gmpy2.gcd(num, den))
    if den < 0:
        g = -g
    out = object.__new__(Fraction)
    out._numerator, out._denominator = num // g, den // g
    return out


def eval_f(m: Map31, x: Rational) -> Fraction:
    x = as_fraction(x)
    # integer form with a single reduction; orbit runs are dominated by this
    n, d = x.numerator, x.denominator
    an, ad = m.a.numerator, m.a.denominator
    bn, bd = m.b.numerator, m.b.denominator
    lin = an * bd * n + bn * ad * d
    if lin == 0:
        raise SingularPoint(f"x = {x} is the singular point -b/a")
    top = n * ((n * ad + an * d) * n * bd + bn * ad * d * d)
    return _reduced(top, d * d * lin)


def eval_f_approx(m: Map31, x: PadicApprox) -> PadicApprox:
    """f on a truncated p-adic value, with pessimistic precision tracking."""
    den = x * m.a + m.b
    if den.is_zero:
        raise InsufficientPrecision("a x + b is indistinguishable from 0")
    return x * (x * x + x * m.a + m.b) / den


def norm_f(m: Map31, x: Rational) -> NormExp:
    """|f(x)| = |x| |x^2 + a x + b| / |a x + b|, without forming f(x)."""
    x = as_fraction(x)
    den = m.a * x + m.b
    if den == 0:
        raise SingularPoint(f"x = {x} is the singular point -b/a")
    p = m.p
    return NormExp.of(x, p) * NormExp.of((x + m.a) * x + m.b, p) / NormExp.of(den, p)


def f_prime(m: Map31, x: Rational) -> Fraction:
    x = as_fraction(x)
    a, b = m.a, m.b
    den = a * x + b
    if den == 0:
        raise SingularPoint(f"x = {x} is the singular point -b/a")
    num = 2 * a * x**3 + 3 * b * x * x + a * a * x * x + 2 * a * b * x + b * b
    return num / (den * den)


def f_prime_norm(m: Map31, x: Rational) -> NormExp:
    return NormExp.of(f_prime(m, x), m.p)
