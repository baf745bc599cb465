"""Sphere dynamics of the canonical map around its fixed point 0.

The norm |f(x)| depends only on |x| away from the critical spheres, through
one of three piecewise radius maps selected by the root norms alpha <= beta
and delta = |a|:

    PHI   alpha < beta = delta
    ZETA  delta < alpha = beta
    ETA   delta = alpha = beta

On a critical sphere the image norm depends on the point, so those spheres
are handled with an actual point (``critical_sphere_image``).
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CriticalRadius,
    NonIntegralRadius,
    NotCriticalSphere,
    NotInvariantRadius,
    SingularPoint,
    WrongCase,
)
from .maps import Map31, eval_f, eval_f_approx, norm_f
from .padic import NormExp, PadicApprox, Rational, as_fraction, digit_expand, valuation

DEFAULT_MAX_STEPS = 10_000
DEFAULT_HISTORY = 64
DEFAULT_MAX_BITS = 2**20


class RadiusMapKind(enum.Enum):
    PHI = "PhiCase"
    ZETA = "ZetaCase"
    ETA = "EtaCase"


class SphereClass(enum.Enum):
    SIEGEL_INTERIOR = "SiegelInterior"
    INVARIANT_ANNULUS = "InvariantAnnulus"
    CRITICAL_ALPHA = "CriticalAlpha"
    CRITICAL_BETA = "CriticalBeta"
    ESCAPING = "Escaping"


INVARIANT_CLASSES = (SphereClass.SIEGEL_INTERIOR, SphereClass.INVARIANT_ANNULUS)


def radius_map_kind(m: Map31) -> RadiusMapKind:
    if m.alpha < m.beta:
        return RadiusMapKind.PHI
    if m.delta < m.alpha:
        return RadiusMapKind.ZETA
    return RadiusMapKind.ETA


def zeta_break(m: Map31) -> NormExp:
    """alpha^2 / delta, the second critical radius of the ZETA case (= |x_hat|)."""
    return m.alpha**2 / m.delta


def apply_radius_map(m: Map31, r: NormExp) -> NormExp:
    """Image radius of the sphere S_r(0) for a non-critical r."""
    kind = radius_map_kind(m)
    alpha, beta, delta = m.alpha, m.beta, m.delta
    if r.is_zero or r < alpha:
        return r
    if r == alpha:
        raise CriticalRadius(f"r = alpha = {alpha} needs a point")
    if kind is RadiusMapKind.PHI:
        if r < beta:
            return r
        if r == beta:
            raise CriticalRadius(f"r = beta = {beta} needs a point")
        return r**2 / beta
    if kind is RadiusMapKind.ZETA:
        brk = zeta_break(m)
        if r < brk:
            return r**3 / alpha**2
        if r == brk:
            raise CriticalRadius(f"r = alpha^2/delta = {brk} needs a point")
        return r**2 / delta
    return r**2 / alpha


def classify_sphere(m: Map31, r: NormExp) -> SphereClass:
    if r.is_zero:
        raise ValueError("radius must be positive")
    if r < m.alpha:
        return SphereClass.SIEGEL_INTERIOR
    if r == m.alpha:
        return SphereClass.CRITICAL_ALPHA
    if radius_map_kind(m) is RadiusMapKind.PHI:
        if r < m.beta:
            return SphereClass.INVARIANT_ANNULUS
        if r == m.beta:
            return SphereClass.CRITICAL_BETA
    return SphereClass.ESCAPING


def is_invariant_radius(m: Map31, r: NormExp) -> bool:
    return not r.is_zero and classify_sphere(m, r) in INVARIANT_CLASSES


def siegel_radius(m: Map31) -> NormExp:
    """Radius of the maximal Siegel disk U_alpha(0)."""
    return m.alpha


def escape_threshold(m: Map31) -> NormExp:
    """Above this norm the radius map is strictly expanding and never returns."""
    kind = radius_map_kind(m)
    if kind is RadiusMapKind.PHI:
        return m.beta
    if kind is RadiusMapKind.ZETA:
        return zeta_break(m)
    return m.alpha


class CriticalVerdict(enum.Enum):
    STAYS = "stays on the critical sphere"
    LANDS_INVARIANT = "lands on an invariant sphere"
    TRANSFERS = "transfers to the other critical sphere"
    ESCAPES = "escape certified"


def critical_sphere_image(m: Map31, x: Rational) -> tuple[NormExp, CriticalVerdict]:
    x = as_fraction(x)
    if x == m.x_hat:
        raise SingularPoint(f"x = {x} is the singular point")
    r = m.norm(x)
    kind = radius_map_kind(m)
    on_alpha = r == m.alpha
    on_beta = kind is RadiusMapKind.PHI and r == m.beta
    if not (on_alpha or on_beta):
        raise NotCriticalSphere(f"|x| = {r} is not a critical radius")
    hat = norm_f(m, x)
    if hat == r:
        return hat, CriticalVerdict.STAYS
    if kind is RadiusMapKind.PHI:
        other = m.beta if on_alpha else m.alpha
        if hat == other:
            return hat, CriticalVerdict.TRANSFERS
        if hat < m.beta:
            return hat, CriticalVerdict.LANDS_INVARIANT
        return hat, CriticalVerdict.ESCAPES
    if hat < m.alpha:
        return hat, CriticalVerdict.LANDS_INVARIANT
    return hat, CriticalVerdict.ESCAPES


class Terminal(enum.Enum):
    CYCLE = "FixedOrCycling"
    RESIDENT = "InvariantSphereResident"
    ESCAPE = "EscapeCertified"
    SINGULAR = "SingularHit"
    BUDGET = "BudgetExhausted"


@dataclass(frozen=True)
class OrbitStep:
    n: int
    point: Fraction
    norm: NormExp


@dataclass
class OrbitTrace:
    steps: list = field(default_factory=list)
    terminal: Terminal = Terminal.BUDGET
    terminal_step: int = 0
    period: int | None = None

    @property
    def norms(self) -> list:
        return [s.norm for s in self.steps]


def _bits(x: Fraction) -> int:
    return max(x.numerator.bit_length(), x.denominator.bit_length())


def run_orbit(
    m: Map31,
    x: Rational,
    max_steps: int = DEFAULT_MAX_STEPS,
    history: int = DEFAULT_HISTORY,
    max_bits: int = DEFAULT_MAX_BITS,
) -> OrbitTrace:
    """Iterate f exactly from x until a certified outcome or the budget runs out."""
    x = as_fraction(x)
    threshold = escape_threshold(m)
    trace = OrbitTrace()
    seen: dict = {}
    window: deque = deque()
    n = 0
    while True:
        r = m.norm(x)
        trace.steps.append(OrbitStep(n, x, r))
        if x == m.x_hat:
            trace.terminal, trace.terminal_step = Terminal.SINGULAR, n
            return trace
        if x in seen:
            trace.terminal, trace.terminal_step = Terminal.CYCLE, n
            trace.period = n - seen[x]
            return trace
        if r > threshold:
            trace.terminal, trace.terminal_step = Terminal.ESCAPE, n
            return trace
        seen[x] = n
        window.append(x)
        if len(window) > history:
            del seen[window.popleft()]
        if n >= max_steps or _bits(x) > max_bits:
            break
        x = eval_f(m, x)
        n += 1
    trace.terminal_step = n
    trace.terminal = Terminal.RESIDENT if is_invariant_radius(m, r) else Terminal.BUDGET
    return trace


def run_orbit_approx(m: Map31, x, steps: int, precision: int = 64) -> list:
    """Iterates x, f(x), ..., f^steps(x) as truncated p-adic values."""
    if not isinstance(x, PadicApprox):
        x = PadicApprox.from_rational(x, m.p, precision)
    out = [x]
    for _ in range(steps):
        x = eval_f_approx(m, x)
        out.append(x)
    return out


def preimage_radius_ladder(m: Map31, k_max: int) -> list:
    """Radii r_k of the spheres holding the points that reach x_hat after k steps.

    Only meaningful in the ZETA case: r_k = alpha * (alpha/delta)**(1/3**k), the
    unique solution of zeta^k(r_k) = alpha^2/delta.
    """
    if radius_map_kind(m) is not RadiusMapKind.ZETA:
        raise WrongCase("the radius ladder needs delta < alpha = beta")
    ea, ed = m.alpha.exp, m.delta.exp
    target = zeta_break(m)
    ladder = []
    for k in range(k_max + 1):
        r = NormExp(ea + (ea - ed) / Fraction(3) ** k, m.p)
        img = r
        for _ in range(k):
            img = apply_radius_map(m, img)
        if img != target:
            raise ArithmeticError(f"zeta^{k}(r_{k}) = {img}, expected {target}")
        ladder.append(r)
    return ladder


def _require_invariant(m: Map31, r: NormExp):
    if not is_invariant_radius(m, r):
        raise NotInvariantRadius(f"S_r(0) with r = {r} is not invariant")


def rho(m: Map31, r: NormExp) -> NormExp:
    """|f(c) - c| for every c on the invariant sphere S_r(0)."""
    _require_invariant(m, r)
    if r < m.alpha:
        return r**3 / (m.alpha * m.beta)
    return r**2 / m.delta


@dataclass(frozen=True)
class MinimalBallRow:
    m: int
    radius: NormExp
    is_minimal: bool
    via_b: bool  # r^2 = p^(-v(b)-m) with r < alpha
    via_a: bool  # r = p^(-v(a)-m) with alpha < r < beta


@dataclass(frozen=True)
class MinimalBallReport:
    r: NormExp
    rho: NormExp
    rows: tuple


def minimal_invariant_ball(m: Map31, r: NormExp, mmax: int) -> MinimalBallReport:
    """rho(r) plus, for each m <= mmax, whether V_{r/p^m}(c) is minimal invariant."""
    rr = rho(m, r)
    gb, ga = valuation(m.b, m.p), valuation(m.a, m.p)
    rows = []
    for k in range(1, mmax + 1):
        radius = r.scale(-k)
        via_b = r < m.alpha and r**2 == NormExp(-gb - k, m.p)
        via_a = m.alpha < r < m.beta and r == NormExp(-ga - k, m.p)
        rows.append(MinimalBallRow(k, radius, rr == radius, via_b, via_a))
    return MinimalBallReport(r, rr, tuple(rows))


def local_isometry_check(m: Map31, x: Rational, y: Rational) -> bool:
    """|f(x) - f(y)| == |x - y| for x, y on a common invariant sphere."""
    x, y = as_fraction(x), as_fraction(y)
    r = m.norm(x)
    if m.norm(y) != r:
        raise NotInvariantRadius("x and y lie on different spheres")
    _require_invariant(m, r)
    return m.norm(eval_f(m, x) - eval_f(m, y)) == m.norm(x - y)


def first_differing_digit(x: Rational, y: Rational, p: int, limit: int = 256) -> int | None:
    """Index of the first canonical digit where x and y differ, both read at
    the valuation of x.  None if they agree on ``limit`` digits."""
    x, y = as_fraction(x), as_fraction(y)
    g = valuation(x, p)
    dx = digit_expand(x, limit, p)
    dy = digit_expand(y, limit, p)
    if dy.valuation != g:
        return 0
    for i, (u, w) in enumerate(zip(dx.digits, dy.digits)):
        if u != w:
            return i
    return None


def digit_preservation_index(m: Map31, x: Rational) -> int:
    """s = v(x^2/(ax+b)): f(x) keeps exactly the first s canonical digits of x."""
    x = as_fraction(x)
    r = m.norm(x)
    _require_invariant(m, r)
    s = 2 * valuation(x, m.p) - valuation(m.a * x + m.b, m.p)
    seen = first_differing_digit(x, eval_f(m, x), m.p, limit=s + 2)
    if seen != s:
        raise ArithmeticError(f"digit check: first change at {seen}, predicted {s}")
    return s


def sphere_partition(r: NormExp, depth: int, p: int | None = None) -> list:
    """Representatives of the (p-1) p^(depth-1) balls of radius r/p^depth covering S_r(0)."""
    p = r.p if p is None else p
    if r.is_zero or not r.is_integral:
        raise NonIntegralRadius(f"{r} is not an integral power of {p}")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    scale = Fraction(p) ** int(-r.exp)
    return [scale * u for u in range(1, p**depth) if u % p]


def partition_cell(x: Rational, depth: int, p: int) -> Fraction:
    """Representative of the depth-d cell of S_|x|(0) that contains x."""
    x = as_fraction(x)
    d = digit_expand(x, depth, p)
    return Fraction(p) ** d.valuation * d.unit
