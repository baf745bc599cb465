"""Dense univariate polynomials over Q as coefficient tuples, lowest degree first."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple  # tuple[Fraction, ...]


def poly(coeffs: Sequence) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: Poly) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return poly([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def neg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def scale(f: Poly, c) -> Poly:
    return poly([c * x for x in f])


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return poly(out)


def power(f: Poly, k: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(k):
        out = mul(out, f)
    return out


def evaluate(f: Poly, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f: Poly) -> Poly:
    return poly([i * f[i] for i in range(1, len(f))])


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lead = g[-1]
    for k in range(len(f) - len(g), -1, -1):
        c = r[k + len(g) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(g):
                r[k + j] -= c * y
    return poly(q), poly(r)


def monic(f: Poly) -> Poly:
    return scale(f, 1 / f[-1]) if f else f


def gcd(f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, divmod_poly(f, g)[1]
    return monic(f)


def homogeneous_compose(f: Poly, num: Poly, den: Poly, deg: int) -> Poly:
    """den**deg * f(num/den) for deg >= degree(f)."""
    out: Poly = ()
    for i, c in enumerate(f):
        if c:
            out = add(out, scale(mul(power(num, i), power(den, deg - i)), c))
    return out
