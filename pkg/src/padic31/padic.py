"""Exact p-adic arithmetic on rational inputs.

Elements of Q are carried as ``fractions.Fraction`` together with a prime.
Norms are kept symbolically as ``p**e`` (``NormExp``) so that radii of spheres
in C_p with rational exponents stay exact.  ``PadicApprox`` is the truncated
digit expansion used for values that are not rational (square roots) and for
long orbit runs where exact rationals blow up.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import NamedTuple, Union

from .errors import (
    InsufficientPrecision,
    NoRootInQp,
    NotPrime,
    ParseError,
    PrimeMismatch,
    ZeroB,
    ZeroInput,
)

INF = math.inf  # valuation of 0
NEG_INF = -math.inf  # norm exponent of 0

_EXACT_ZERO_PRECISION = 10**9  # stands in for an exact 0 factor
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_LITERAL = re.compile(r"-?[0-9]+(?:/[0-9]+)?")


def is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; the fixed bases are exact for n < 3.3e24
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int):
        raise NotPrime(f"prime must be an int, got {p!r}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal such as ``-9/10``, ``41`` or ``1/10``."""
    if not isinstance(text, str) or not _LITERAL.fullmatch(text):
        raise ParseError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


Rational = Union[int, Fraction, str, "PadicExact"]


def as_fraction(x: Rational) -> Fraction:
    if isinstance(x, PadicExact):
        return x.value
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def vp_int(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ZeroInput("v_p(0) is infinite")
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(x: Rational, p: int):
    """v_p(x) as an int, or ``INF`` for x = 0."""
    x = as_fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def unit_part(x: Fraction, p: int) -> tuple[int, Fraction]:
    """Split nonzero x as p**v * u with u a p-adic unit."""
    v = valuation(x, p)
    return v, x / Fraction(p) ** v


def unit_residue(u: Fraction, p: int, n: int) -> int:
    """Residue of the p-adic unit (or integer) u modulo p**n."""
    mod = p**n
    return u.numerator * pow(u.denominator, -1, mod) % mod


@total_ordering
@dataclass(frozen=True)
class NormExp:
    """A p-adic norm ``p**exp``; ``exp`` is a Fraction, or ``NEG_INF`` for |0|."""

    exp: object
    p: int

    def __post_init__(self):
        if self.exp != NEG_INF:
            object.__setattr__(self, "exp", Fraction(self.exp))

    @classmethod
    def of(cls, x: Rational, p: int) -> NormExp:
        v = valuation(x, p)
        return cls(NEG_INF if v == INF else -v, p)

    @classmethod
    def zero(cls, p: int) -> NormExp:
        return cls(NEG_INF, p)

    @property
    def is_zero(self) -> bool:
        return self.exp == NEG_INF

    @property
    def is_integral(self) -> bool:
        """True when this is the norm of an element of Q_p."""
        return self.is_zero or self.exp.denominator == 1

    def value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_integral:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p) ** int(self.exp)

    def _same(self, other):
        if not isinstance(other, NormExp):
            return NotImplemented
        if other.p != self.p:
            raise PrimeMismatch(f"norms for p={self.p} and p={other.p}")
        return other

    def __lt__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return self.exp < other.exp

    def __mul__(self, other):
        if isinstance(other, NormExp):
            self._same(other)
            return NormExp(self.exp + other.exp, self.p)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, NormExp):
            self._same(other)
            if other.is_zero:
                raise ZeroDivisionError("division by the norm of zero")
            return NormExp(self.exp - other.exp, self.p)
        return NotImplemented

    def __pow__(self, k):
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("non-positive power of the norm of zero")
            return self
        return NormExp(self.exp * Fraction(k), self.p)

    def root(self, k: int) -> NormExp:
        return self ** Fraction(1, k)

    def scale(self, e) -> NormExp:
        """Multiply by ``p**e``."""
        return NormExp(self.exp + Fraction(e), self.p) if not self.is_zero else self

    def __str__(self):
        return "0" if self.is_zero else f"{self.p}^{format_rational(self.exp)}"


def norm(x: Rational, p: int) -> NormExp:
    return NormExp.of(x, p)


@dataclass(frozen=True)
class PadicExact:
    """An element of Q inside Q_p."""

    value: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))
        check_prime(self.p)

    @classmethod
    def parse(cls, text: str, p: int) -> PadicExact:
        return cls(parse_rational(text), p)

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def valuation(self):
        return valuation(self.value, self.p)

    def norm(self) -> NormExp:
        return NormExp.of(self.value, self.p)

    def _other(self, other):
        if isinstance(other, PadicExact):
            if other.p != self.p:
                raise PrimeMismatch(f"p={self.p} vs p={other.p}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other)
        return NotImplemented

    def _wrap(self, v):
        return PadicExact(v, self.p)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in Q_p")
        return self._wrap(self.value / o)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError("division by zero in Q_p")
        return self._wrap(o / self.value)

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, k: int):
        return self._wrap(self.value**k)

    def __str__(self):
        return format_rational(self.value)


def arith(x: PadicExact, y: PadicExact, op: str) -> PadicExact:
    ops = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    if not isinstance(y, PadicExact):
        raise TypeError("arith expects two PadicExact operands")
    return ops[op](y)


@dataclass(frozen=True)
class PadicApprox:
    """``p**valuation * unit`` known modulo ``p**(valuation + precision)``.

    ``unit`` is the integer whose base-p digits (least significant first) are
    the canonical digits; it is prime to p.  A value indistinguishable from 0
    has ``unit == 0``, ``precision == 0`` and ``valuation`` equal to the
    absolute precision.
    """

    p: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("negative precision")
        if self.unit == 0:
            if self.precision != 0:
                raise ValueError("zero must carry precision 0")
        elif self.unit % self.p == 0 or not 0 < self.unit < self.p**self.precision:
            raise ValueError("unit must be a residue prime to p")

    @classmethod
    def zero(cls, p: int, abs_precision: int) -> PadicApprox:
        return cls(p, abs_precision, 0, 0)

    @classmethod
    def from_rational(cls, x: Rational, p: int, precision: int) -> PadicApprox:
        """Relative ``precision`` digits of x; 0 becomes zero modulo p**precision."""
        x = as_fraction(x)
        if x == 0:
            return cls.zero(p, precision)
        v, u = unit_part(x, p)
        if precision <= 0:
            return cls.zero(p, v)
        return cls(p, v, unit_residue(u, p, precision), precision)

    @classmethod
    def from_digits(cls, p: int, valuation: int, digits) -> PadicApprox:
        unit = sum(d * p**i for i, d in enumerate(digits))
        n = len(digits)
        if unit == 0:
            return cls.zero(p, valuation + n)
        k = vp_int(unit, p)
        return cls(p, valuation + k, unit // p**k, n - k)

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def abs_precision(self) -> int:
        return self.valuation + self.precision

    @property
    def digits(self) -> tuple[int, ...]:
        out, u = [], self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.p)
            out.append(d)
        return tuple(out)

    def norm(self) -> NormExp:
        if self.is_zero:
            raise InsufficientPrecision(
                f"value is 0 modulo {self.p}^{self.valuation}; norm unknown"
            )
        return NormExp(-self.valuation, self.p)

    def agrees_with(self, x: Rational) -> bool:
        """True if the rational x is congruent to self to the known precision."""
        return (self - as_fraction(x)).is_zero

    def _coerce(self, other, for_add: bool) -> PadicApprox:
        if isinstance(other, PadicApprox):
            if other.p != self.p:
                raise PrimeMismatch(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, PadicExact):
            if other.p != self.p:
                raise PrimeMismatch(f"p={self.p} vs p={other.p}")
            other = other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            x = Fraction(other)
            if for_add:
                if x == 0:
                    return PadicApprox.zero(self.p, self.abs_precision)
                rel = self.abs_precision - valuation(x, self.p)
                if rel <= 0:
                    return PadicApprox.zero(self.p, self.abs_precision)
                return PadicApprox.from_rational(x, self.p, rel)
            if x == 0:
                return PadicApprox.zero(self.p, _EXACT_ZERO_PRECISION)
            return PadicApprox.from_rational(x, self.p, max(self.precision, 1))
        return NotImplemented

    @staticmethod
    def _normalize(p, base_v, s, abs_prec):
        span = abs_prec - base_v
        if span <= 0:
            return PadicApprox.zero(p, abs_prec)
        s %= p**span
        if s == 0:
            return PadicApprox.zero(p, abs_prec)
        k = vp_int(s, p)
        return PadicApprox(p, base_v + k, s // p**k, span - k)

    def __add__(self, other):
        o = self._coerce(other, True)
        if o is NotImplemented:
            return NotImplemented
        ap = min(self.abs_precision, o.abs_precision)
        v0 = min(self.valuation, o.valuation)
        s = self.unit * self.p ** (self.valuation - v0) + o.unit * self.p ** (o.valuation - v0)
        return self._normalize(self.p, v0, s, ap)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicApprox(self.p, self.valuation, -self.unit % self.p**self.precision, self.precision)

    def __sub__(self, other):
        o = self._coerce(other, True)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other, True)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other, False)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero or o.is_zero:
            if self.is_zero and o.is_zero:
                return PadicApprox.zero(self.p, self.valuation + o.valuation)
            nz = o if self.is_zero else self
            z = self if self.is_zero else o
            return PadicApprox.zero(self.p, z.valuation + nz.valuation)
        n = min(self.precision, o.precision)
        return PadicApprox(self.p, self.valuation + o.valuation, self.unit * o.unit % self.p**n, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other, False)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero:
            raise InsufficientPrecision("divisor is indistinguishable from 0")
        if self.is_zero:
            return PadicApprox.zero(self.p, self.valuation - o.valuation)
        n = min(self.precision, o.precision)
        mod = self.p**n
        return PadicApprox(self.p, self.valuation - o.valuation, self.unit * pow(o.unit, -1, mod) % mod, n)

    def __rtruediv__(self, other):
        o = self._coerce(other, False)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return 1 / (self**-k)
        out = PadicApprox.from_rational(1, self.p, max(self.precision, 1))
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        if self.is_zero:
            return f"O({self.p}^{self.valuation})"
        body = " + ".join(f"{d}*{self.p}^{self.valuation + i}" for i, d in enumerate(self.digits) if d)
        return f"{body} + O({self.p}^{self.abs_precision})"


def digit_expand(x: Rational, n: int, p: int | None = None) -> PadicApprox:
    """First n canonical digits of x: x = p**v * sum(d_i p**i) mod p**(v+n)."""
    if isinstance(x, PadicExact):
        p = x.p if p is None else p
    if p is None:
        raise TypeError("a prime is required")
    x = as_fraction(x)
    if x == 0:
        raise ZeroInput("0 has no canonical digit expansion")
    return PadicApprox.from_rational(x, p, n)


def _sqrt_mod_p(u: int, p: int) -> int:
    # Tonelli-Shanks
    u %= p
    if p == 2 or u == 0:
        return u
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(u, q, p), pow(u, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _sqrt_unit(u: Fraction, p: int, n: int) -> int:
    """Square root modulo p**n of a square unit u (p odd, or p = 2 with u = 1 mod 8)."""
    if p == 2:
        target_bits = n + 1
        mod = 2**target_bits
        res = unit_residue(u, 2, target_bits)
        r = 1
        for k in range(3, target_bits):
            if (r * r - res) % (1 << (k + 1)):
                r += 1 << (k - 1)
        return r % 2**n
    mod = p**n
    res = unit_residue(u, p, n)
    r = _sqrt_mod_p(res, p)
    k = 1
    while k < n:
        k = min(2 * k, n)
        m = p**k
        r = (r - (r * r - res) * pow(2 * r, -1, m)) % m
    return r % mod


class SquareRoot(NamedTuple):
    root: PadicApprox
    exact: Fraction | None


def sqrt_qp(x: Rational, n: int, p: int | None = None) -> SquareRoot:
    """A square root of x in Q_p to n digits, plus the rational root when x is a square in Q.

    Raises NoRootInQp naming the failed criterion when x is not a square in Q_p.
    """
    if isinstance(x, PadicExact):
        p = x.p if p is None else p
    if p is None:
        raise TypeError("a prime is required")
    x = as_fraction(x)
    if x == 0:
        raise ZeroInput("sqrt of 0 is not a unit computation")
    v, u = unit_part(x, p)
    if v % 2:
        raise NoRootInQp(f"v_{p}({x}) = {v} is odd", "odd valuation")
    if p == 2:
        if unit_residue(u, 2, 3) != 1:
            raise NoRootInQp(f"unit part of {x} is not 1 mod 8", "unit not 1 mod 8")
    elif pow(unit_residue(u, p, 1), (p - 1) // 2, p) != 1:
        raise NoRootInQp(f"unit part of {x} is not a square mod {p}", "quadratic non-residue")
    exact = None
    if x > 0:
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            exact = Fraction(rn, rd)
    r = _sqrt_unit(u, p, n)
    if exact is not None:
        eu = unit_residue(exact / Fraction(p) ** (v // 2), p, n)
        if eu != r:
            r = -r % p**n
    elif p == 2 and n >= 2 and r % 4 != 1:
        r = -r % 2**n
    elif p != 2 and r % p > p // 2:
        r = -r % p**n
    return SquareRoot(PadicApprox(p, v // 2, r, n), exact)


def root_norms_newton(a: Rational, b: Rational, p: int) -> tuple[NormExp, NormExp]:
    """Norms (alpha, beta), alpha <= beta, of the roots of x**2 + a x + b.

    Read off the Newton polygon of the quadratic: with 2 v(a) <= v(b) the
    polygon has two segments and the roots have valuations v(a) and
    v(b) - v(a); otherwise one segment of slope v(b)/2.
    """
    b = as_fraction(b)
    if b == 0:
        raise ZeroB("b = 0 gives the root 0")
    va, vb = valuation(a, p), valuation(b, p)
    if 2 * va <= vb:
        vals = (va, vb - va)
    else:
        vals = (Fraction(vb, 2), Fraction(vb, 2))
    n1, n2 = (NormExp(-v, p) for v in vals)
    return (n1, n2) if n1 <= n2 else (n2, n1)


class BallKind(enum.Enum):
    OPEN = "U"
    CLOSED = "V"
    SPHERE = "S"


@dataclass(frozen=True)
class Ball:
    """U_r(c), V_r(c) or S_r(c) for a rational center."""

    center: Fraction
    radius: NormExp
    kind: BallKind = BallKind.CLOSED

    def __post_init__(self):
        object.__setattr__(self, "center", as_fraction(self.center))
        if self.radius.is_zero:
            raise ValueError("radius must be positive")

    @property
    def p(self) -> int:
        return self.radius.p

    def contains(self, x: Rational) -> bool:
        d = NormExp.of(as_fraction(x) - self.center, self.p)
        if self.kind is BallKind.OPEN:
            return d < self.radius
        if self.kind is BallKind.CLOSED:
            return d <= self.radius
        return d == self.radius

    def __str__(self):
        return f"{self.kind.value}_{{{self.radius}}}({format_rational(self.center)})"
