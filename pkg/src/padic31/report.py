"""Exact, canonical serialization of analysis results.

Rationals are written as literals "n" or "n/d", norm exponents as integers
when integral and "n/d" strings otherwise, the norm of 0 as null.  JSON is
emitted with sorted keys so a parse/emit round trip is byte-identical.
"""
from __future__ import annotations

import configparser
import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ergodic import ErgodicityVerdict, invariant_radius_set
from .errors import ParseError
from .maps import Map31
from .padic import NormExp, format_rational, valuation
from .periodic import PeriodicOrbitCert
from .spheres import OrbitTrace, radius_map_kind, siegel_radius


def exp_literal(r: NormExp):
    if r is None or r.is_zero:
        return None
    e = r.exp
    return int(e) if e.denominator == 1 else format_rational(e)


def map_summary(m: Map31) -> dict:
    return {
        "p": m.p,
        "a": format_rational(m.a),
        "b": format_rational(m.b),
        "case": radius_map_kind(m).value,
        "alpha_exp": exp_literal(m.alpha),
        "beta_exp": exp_literal(m.beta),
        "delta_exp": exp_literal(m.delta),
        "x_hat": format_rational(m.x_hat),
        "invariant_radii": str(invariant_radius_set(m)),
        "siegel_disk": f"U_{{{siegel_radius(m)}}}(0)",
    }


@dataclass(frozen=True)
class PublishedClaim:
    """Root norms stated for a worked example in the literature."""

    a: Fraction
    b: Fraction
    p: int
    alpha_exp: Fraction
    beta_exp: Fraction
    statement: str


PUBLISHED_CLAIMS = (
    PublishedClaim(Fraction(-9, 10), Fraction(1, 10), 2, Fraction(3), Fraction(3), "alpha = beta = 8"),
)


def claim_warnings(m: Map31) -> list[str]:
    """Warnings for published norm values that disagree with the recomputed ones."""
    out = []
    for c in PUBLISHED_CLAIMS:
        if (c.a, c.b, c.p) != (m.a, m.b, m.p):
            continue
        if (c.alpha_exp, c.beta_exp) != (m.alpha.exp, m.beta.exp):
            out.append(
                f"published '{c.statement}' is inconsistent: recomputed alpha = {m.alpha}, "
                f"beta = {m.beta}, and alpha*beta must equal |b| = {m.norm(m.b)}"
            )
    return out


def verdict_dict(v: ErgodicityVerdict) -> dict:
    ball = v.witness_ball
    return {
        "sphere_exp": exp_literal(NormExp(v.sphere_exp, 2)),
        "verdict": v.verdict.value,
        "reason": v.reason,
        "memic": v.memic.as_dict() if v.memic else None,
        "witness_ball": None
        if ball is None
        else {"center": format_rational(ball.center), "radius_exp": exp_literal(ball.radius)},
        "witness_measure": None if v.witness_measure is None else format_rational(v.witness_measure),
    }


def certificate_dict(c: PeriodicOrbitCert) -> dict:
    return {
        "q": format_rational(c.q),
        "a": format_rational(c.a),
        "b": format_rational(c.b),
        "p": c.p,
        "orbit": [format_rational(x) for x in c.orbit],
        "norm_exps": [exp_literal(r) for r in c.norms],
        "r_in_A": c.r_in_A,
        "sqrt_disc_exists": c.sqrt_disc_exists,
        "verified": c.verified,
        "multiplier_norm_exp": exp_literal(c.multiplier_norm),
        "failure": c.failure,
    }


def trace_dict(t: OrbitTrace) -> dict:
    return {
        "terminal": t.terminal.value,
        "terminal_step": t.terminal_step,
        "period": t.period,
        "steps": [
            {"n": s.n, "x": format_rational(s.point), "norm_exp": exp_literal(s.norm)} for s in t.steps
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write_csv(path, header: list[str], rows: Iterable) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def orbit_rows(t: OrbitTrace, p: int):
    for s in t.steps:
        v = valuation(s.point, p)
        yield s.n, s.point.numerator, s.point.denominator, "inf" if s.point == 0 else v


def ladder_rows(ladder):
    for k, r in enumerate(ladder):
        yield k, r.exp.numerator, r.exp.denominator


def probe_rows(table):
    for row in table:
        yield (
            format_rational(row.cell_rep),
            row.count,
            format_rational(row.frequency),
            format_rational(row.haar_weight),
        )


ORBIT_HEADER = ["n", "num", "den", "val"]
LADDER_HEADER = ["k", "exp_num", "exp_den"]
PROBE_HEADER = ["cell_rep", "count", "frequency", "haar_weight"]


def load_config(path) -> dict[str, str]:
    """``key = value`` lines (``#`` comments); keys use the long flag names without dashes."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            parser.read_string("[run]\n" + fh.read(), source=str(path))
    except configparser.Error as exc:
        raise ParseError(f"bad config file {path}: {exc}") from exc
    return {k.replace("-", "_"): v.strip() for k, v in parser["run"].items()}
