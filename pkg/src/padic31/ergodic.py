"""Ergodicity of the canonical map restricted to an invariant sphere S_r(0) in Q_p.

Verdicts are constructive.  A "not ergodic" verdict carries an invariant ball
whose normalized Haar measure lies strictly between 0 and 1.  An "ergodic"
verdict carries the mod-4 coefficient profile of the rescaled map on the
2-adic units, as used by Memić's criterion for rational functions on 1 + 2Z_2.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import poly as P
from .errors import (
    BallNotInSphere,
    NonIntegralRadius,
    NotInvariantRadius,
    NotSelfMap,
    WrongPrimeOrCase,
)
from .maps import Map31
from .padic import (
    Ball,
    BallKind,
    NoRootInQp,
    NormExp,
    PadicApprox,
    Rational,
    as_fraction,
    sqrt_qp,
    unit_residue,
    valuation,
)
from .spheres import (
    RadiusMapKind,
    is_invariant_radius,
    radius_map_kind,
    rho,
    sphere_partition,
)


class RootsCase(enum.Enum):
    EQUAL = "EqualRootsCase"  # delta <= alpha = beta, A = (0, alpha)
    DISTINCT = "DistinctRootsCase"  # alpha < beta = delta, A = (0, beta) minus {alpha}


@dataclass(frozen=True)
class InvariantRadiusSet:
    kind: RootsCase
    alpha: NormExp
    beta: NormExp

    def __contains__(self, r: NormExp) -> bool:
        if r.is_zero:
            return False
        if self.kind is RootsCase.EQUAL:
            return r < self.alpha
        return r < self.beta and r != self.alpha

    def __str__(self):
        if self.kind is RootsCase.EQUAL:
            return f"(0, {self.alpha})"
        return f"(0, {self.alpha}) U ({self.alpha}, {self.beta})"


def invariant_radius_set(m: Map31) -> InvariantRadiusSet:
    kind = RootsCase.DISTINCT if m.alpha < m.beta else RootsCase.EQUAL
    return InvariantRadiusSet(kind, m.alpha, m.beta)


def _integral(r: NormExp) -> int:
    if r.is_zero or not r.is_integral:
        raise NonIntegralRadius(f"{r} is not the radius of a sphere in Q_p")
    return int(r.exp)


def haar_measure(ball_radius: NormExp, sphere_radius: NormExp, p: int | None = None) -> Fraction:
    """Normalized Haar measure rho / (r (1 - 1/p)) of a ball V_rho(c) inside S_r(0)."""
    p = sphere_radius.p if p is None else p
    eb, es = _integral(ball_radius), _integral(sphere_radius)
    if eb > es - 1:
        raise BallNotInSphere(f"ball radius {ball_radius} exceeds {sphere_radius}/p")
    return Fraction(p) ** (eb - es) * Fraction(p, p - 1)


@dataclass(frozen=True)
class MemicProfile:
    A1: int
    A2: int
    B1: int
    B2: int
    matched_case: int | None
    interchanged: bool

    @property
    def ergodic(self) -> bool:
        return self.matched_case is not None

    def as_dict(self) -> dict:
        return {
            "A1": self.A1,
            "A2": self.A2,
            "B1": self.B1,
            "B2": self.B2,
            "case": self.matched_case,
            "interchanged": self.interchanged,
        }


# (A1, A2, B1, B2) mod 4 for which num/den is ergodic on 1 + 2Z_2
MEMIC_CASES = {
    1: (1, 2, 0, 1),
    2: (3, 2, 0, 3),
    3: (1, 0, 2, 1),
    4: (3, 0, 2, 3),
}


def _mod4(c: Fraction) -> int:
    if c and valuation(c, 2) < 0:
        raise NotSelfMap(f"coefficient {c} is not a 2-adic integer")
    return unit_residue(c, 2, 2) if c else 0


def memic_profile(num_coeffs, den_coeffs) -> MemicProfile:
    """Odd/even coefficient sums mod 4 of numerator and denominator (lowest degree first)."""
    num = [_mod4(as_fraction(c)) for c in num_coeffs]
    den = [_mod4(as_fraction(c)) for c in den_coeffs]
    A1, A2 = sum(num[1::2]) % 4, sum(num[0::2]) % 4
    B1, B2 = sum(den[1::2]) % 4, sum(den[0::2]) % 4
    # on odd x every power is odd, so the value mod 2 is the coefficient sum
    if (A1 + A2) % 2 == 0:
        raise NotSelfMap("numerator does not map 1 + 2Z_2 into itself")
    if (B1 + B2) % 2 == 0:
        raise NotSelfMap("denominator does not map 1 + 2Z_2 into itself")
    for case, sig in MEMIC_CASES.items():
        if (A1, A2, B1, B2) == sig:
            return MemicProfile(A1, A2, B1, B2, case, False)
    for case, sig in MEMIC_CASES.items():
        if (B1, B2, A1, A2) == sig:
            return MemicProfile(A1, A2, B1, B2, case, True)
    return MemicProfile(A1, A2, B1, B2, None, False)


def scale_conjugate(m: Map31, s: int) -> tuple:
    """Numerator and denominator of t -> p^-s f(p^s t), lowest degree first."""
    ps = Fraction(m.p) ** s
    return P.poly([0, m.b, m.a * ps, ps * ps]), P.poly([m.b, m.a * ps])


def clear_denominators(num, den, p: int) -> tuple:
    """Multiply both polynomials by the least power of p making all coefficients p-adic integers."""
    vals = [valuation(c, p) for c in (*num, *den) if c]
    k = -min(vals)
    scale = Fraction(p) ** k
    return P.scale(num, scale), P.scale(den, scale)


class Verdict(enum.Enum):
    ERGODIC = "ergodic"
    NOT_ERGODIC = "not_ergodic"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ErgodicityVerdict:
    sphere_exp: Fraction
    verdict: Verdict
    reason: str
    memic: MemicProfile | None = None
    witness_ball: Ball | None = None
    witness_measure: Fraction | None = None


def disc_is_square(m: Map31) -> bool:
    try:
        sqrt_qp(m.disc, 4, m.p)
    except NoRootInQp:
        return False
    return True


def non_ergodicity_verdict(m: Map31, r: NormExp) -> ErgodicityVerdict:
    """Not-ergodic verdict with an invariant witness ball, where one exists.

    p >= 3: the ball of points whose leading canonical digit is 1 is invariant
    because f keeps at least the first digit; its measure is 1/(p-1).
    p = 2: the single leading-digit ball is the whole sphere, so the witness is
    the minimal invariant ball V_rho(r)(c), of measure 2^(1-s) with
    rho(r) = r 2^-s.  That is a proper subset unless s = 1, which on invariant
    spheres happens only for r = beta/2 with alpha < beta.
    """
    if not is_invariant_radius(m, r):
        raise NotInvariantRadius(f"S_r(0) with r = {r} is not invariant")
    e = _integral(r)
    p = m.p
    center = Fraction(p) ** -e
    if p >= 3:
        ball = Ball(center, r.scale(-1), BallKind.CLOSED)
        return ErgodicityVerdict(
            r.exp,
            Verdict.NOT_ERGODIC,
            "f preserves the leading canonical digit; the leading-digit-1 ball is invariant",
            witness_ball=ball,
            witness_measure=haar_measure(ball.radius, r),
        )
    rr = rho(m, r)
    if rr == r.scale(-1):
        return ErgodicityVerdict(
            r.exp,
            Verdict.UNDECIDED,
            "p = 2, r = beta/2: minimal invariant balls are the whole sphere; use the unit-scaling test",
        )
    ball = Ball(center, rr, BallKind.CLOSED)
    return ErgodicityVerdict(
        r.exp,
        Verdict.NOT_ERGODIC,
        "p = 2: the minimal invariant ball around a sphere point is a proper subset",
        witness_ball=ball,
        witness_measure=haar_measure(rr, r),
    )


def half_beta_verdict(m: Map31) -> ErgodicityVerdict:
    """Ergodicity on S_{beta/2}(0) for p = 2, alpha < beta.

    Rescales x = 2^(1-m) t with beta = 2^m so the sphere becomes the 2-adic
    units, clears denominators, and applies the mod-4 criterion.  Ergodic is
    asserted only when 4 alpha <= beta and the criterion matches.
    """
    if m.p != 2 or radius_map_kind(m) is not RadiusMapKind.PHI:
        raise WrongPrimeOrCase("needs p = 2 and alpha < beta = delta")
    big, q = int(m.beta.exp), int(m.alpha.exp)
    num, den = clear_denominators(*scale_conjugate(m, 1 - big), 2)
    try:
        profile = memic_profile(num, den)
    except NotSelfMap as exc:
        profile, failure = None, str(exc)
    else:
        failure = None
    sphere_exp = Fraction(big - 1)
    if q > big - 2:
        return ErgodicityVerdict(
            sphere_exp,
            Verdict.UNDECIDED,
            "4 alpha > beta: beta/2 = alpha is a critical radius, not an invariant sphere",
            memic=profile,
        )
    if profile is None:
        return ErgodicityVerdict(sphere_exp, Verdict.UNDECIDED, f"rescaled map: {failure}")
    if not profile.ergodic:
        return ErgodicityVerdict(
            sphere_exp, Verdict.UNDECIDED, "mod-4 profile matches no ergodic case", memic=profile
        )
    return ErgodicityVerdict(
        sphere_exp,
        Verdict.ERGODIC,
        "rescaled to the 2-adic units; mod-4 coefficient profile is ergodic"
        + (" after interchanging numerator and denominator" if profile.interchanged else ""),
        memic=profile,
    )


def ergodicity_verdict(m: Map31, r: NormExp) -> ErgodicityVerdict:
    """Dispatch: the beta/2 sphere for p = 2 goes to the scaling test, the rest get witnesses."""
    if m.p == 2 and radius_map_kind(m) is RadiusMapKind.PHI and r == m.beta.scale(-1):
        return half_beta_verdict(m)
    return non_ergodicity_verdict(m, r)


@lru_cache(maxsize=64)
def _approx_params(m: Map31, precision: int):
    return (
        PadicApprox.from_rational(m.a, m.p, precision),
        PadicApprox.from_rational(m.b, m.p, precision),
    )


def _step(x: PadicApprox, a: PadicApprox, b: PadicApprox) -> PadicApprox:
    return x * (x * x + a * x + b) / (a * x + b)


@dataclass(frozen=True)
class ProbeRow:
    cell_rep: Fraction
    count: int
    frequency: Fraction
    haar_weight: Fraction


def equidistribution_probe(
    m: Map31, r: NormExp, x0: Rational, n_iter: int, depth: int, precision: int | None = None
) -> list:
    """Visit counts of the orbit x0, f(x0), ..., over the depth-d cells of S_r(0).

    Evidence only: frequencies near the Haar weights are consistent with
    ergodicity, a single visited leading-digit ball shows an invariant subset.
    """
    if not is_invariant_radius(m, r):
        raise NotInvariantRadius(f"S_r(0) with r = {r} is not invariant")
    e = _integral(r)
    x0 = as_fraction(x0)
    if m.norm(x0) != r:
        raise ValueError(f"seed {x0} is not on S_r(0) for r = {r}")
    if n_iter == 0:
        return []
    precision = precision or depth + 32
    a, b = _approx_params(m, precision + 64)
    reps = sphere_partition(r, depth, m.p)
    mod = m.p**depth
    counts = Counter()
    x = PadicApprox.from_rational(x0, m.p, precision)
    for _ in range(n_iter):
        if x.is_zero or x.valuation != -e or x.precision < depth:
            raise ArithmeticError(f"orbit left S_r(0) or lost precision at {x}")
        counts[x.unit % mod] += 1
        x = _step(x, a, b)
    weight = Fraction(1, len(reps))
    scale = Fraction(m.p) ** -e
    return [
        ProbeRow(rep, counts[int(rep / scale)], Fraction(counts[int(rep / scale)], n_iter), weight)
        for rep in reps
    ]
