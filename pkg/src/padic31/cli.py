"""Command-line front end: ``padic31 <command> --p P --a A --b B [options]``.

Radii are given as exponents: ``--r-exp 1/3`` means r = p^(1/3).  Every
option may also come from a ``--config`` file of ``key = value`` lines;
explicit flags win over the file.
"""
from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from .ergodic import equidistribution_probe, ergodicity_verdict
from .errors import CriticalRadius, PadicError, ParseError
from .maps import (
    DoubleAndSimple,
    Map31,
    Map31General,
    ThreeDistinct,
    TripleRoot,
    fixed_point_structure,
    reduce_to_canonical,
)
from .padic import NormExp, check_prime, format_rational, parse_rational
from .periodic import scan_q_grid, two_cycle_certificate
from .report import (
    LADDER_HEADER,
    ORBIT_HEADER,
    PROBE_HEADER,
    certificate_dict,
    claim_warnings,
    dumps,
    exp_literal,
    ladder_rows,
    load_config,
    map_summary,
    orbit_rows,
    probe_rows,
    trace_dict,
    verdict_dict,
    write_csv,
)
from .spheres import (
    DEFAULT_MAX_STEPS,
    apply_radius_map,
    classify_sphere,
    is_invariant_radius,
    minimal_invariant_ball,
    preimage_radius_ladder,
    run_orbit,
    sphere_partition,
)

RATIONAL_OPTS = ("a", "b", "c", "d", "e", "x", "q")
INT_OPTS = ("p", "steps", "depth", "iters", "kmax", "m", "grid", "max_bits")
# exact iterates triple in size each step; decimal output of megabit integers is slow
CLI_MAX_BITS = 2**16
_NEGATIVE = re.compile(r"-[0-9]+(?:/[0-9]+)?")


def _general(args) -> Map31General | None:
    if args.c is None and args.d is None and args.e is None:
        return None
    if args.d is None:
        raise ParseError("a general map needs --d")
    return Map31General(args.a, args.b, args.c or 0, args.d, args.e or 0, args.p)


def _canonical(args, report: dict) -> Map31:
    if args.p is None or args.a is None or args.b is None:
        raise ParseError("--p, --a and --b are required")
    general = _general(args)
    if general is None:
        m = Map31(args.a, args.b, args.p)
    else:
        x0, m = reduce_to_canonical(general)
        report["reduction"] = {
            "x0": format_rational(x0),
            "A": format_rational(m.a),
            "B": format_rational(m.b),
        }
    report["map"] = map_summary(m)
    report["warnings"].extend(claim_warnings(m))
    return m


def _radius(args, p: int) -> NormExp:
    if args.r_exp is None:
        raise ParseError("--r-exp is required")
    return NormExp(args.r_exp, p)


def _sphere_row(m: Map31, r: NormExp) -> dict:
    try:
        image = exp_literal(apply_radius_map(m, r))
    except CriticalRadius:
        image = None
    return {"r_exp": exp_literal(r), "class": classify_sphere(m, r).value, "image_exp": image}


def cmd_classify(args, report):
    m = _canonical(args, report)
    radii = [NormExp(e, m.p) for e in args.r_exp] if args.r_exp else _sample_radii(m)
    report["result"] = {"spheres": [_sphere_row(m, r) for r in radii]}


def _sample_radii(m: Map31) -> list[NormExp]:
    exps = {m.alpha.exp, m.beta.exp, m.delta.exp}
    lo, hi = int(min(exps)) - 2, int(max(exps)) + 2
    exps.update(range(lo, hi + 1))
    return [NormExp(e, m.p) for e in sorted(exps)]


def cmd_reduce(args, report):
    general = _general(args)
    if general is None:
        raise ParseError("reduce needs a general map (--c, --d, --e)")
    s = fixed_point_structure(general)
    if isinstance(s, TripleRoot):
        pattern = {"kind": "triple", "roots": [format_rational(s.x0)]}
    elif isinstance(s, DoubleAndSimple):
        pattern = {"kind": "double_and_simple", "roots": [format_rational(s.double), format_rational(s.simple)]}
    elif isinstance(s, ThreeDistinct):
        pattern = {
            "kind": "distinct",
            "roots": [format_rational(r) for r in s.rational_roots],
            "irreducible_factor": [format_rational(c) for c in s.irreducible_factor],
        }
    report["result"] = {"fixed_points": pattern}
    _canonical(args, report)


def cmd_orbit(args, report):
    m = _canonical(args, report)
    if args.x is None:
        raise ParseError("--x is required")
    trace = run_orbit(m, args.x, max_steps=args.steps or DEFAULT_MAX_STEPS, max_bits=args.max_bits)
    report["result"] = trace_dict(trace)
    if args.out:
        write_csv(args.out, ORBIT_HEADER, orbit_rows(trace, m.p))


def cmd_spheres(args, report):
    m = _canonical(args, report)
    r = _radius(args, m.p)
    row = _sphere_row(m, r)
    if is_invariant_radius(m, r) and r.is_integral:
        mb = minimal_invariant_ball(m, r, args.m or 4)
        row["rho_exp"] = exp_literal(mb.rho)
        row["minimal_balls"] = [
            {"m": x.m, "radius_exp": exp_literal(x.radius), "is_minimal": x.is_minimal} for x in mb.rows
        ]
        if args.depth:
            row["partition"] = [format_rational(c) for c in sphere_partition(r, args.depth)]
    report["result"] = row


def cmd_radii(args, report):
    m = _canonical(args, report)
    ladder = preimage_radius_ladder(m, args.kmax if args.kmax is not None else 10)
    report["result"] = {"ladder_exps": [exp_literal(r) for r in ladder]}
    if args.out:
        write_csv(args.out, LADDER_HEADER, ladder_rows(ladder))


def cmd_ergodicity(args, report):
    m = _canonical(args, report)
    r = _radius(args, m.p)
    report["result"] = verdict_dict(ergodicity_verdict(m, r))
    if args.iters:
        x0 = args.x if args.x is not None else Fraction(m.p) ** -int(r.exp)
        table = equidistribution_probe(m, r, x0, args.iters, args.depth or 4)
        report["result"]["probe"] = {
            "seed": format_rational(x0),
            "iters": args.iters,
            "visited_cells": sum(1 for row in table if row.count),
            "cells": len(table),
        }
        if args.out:
            write_csv(args.out, PROBE_HEADER, probe_rows(table))


def cmd_periodic(args, report):
    if args.p is None:
        raise ParseError("--p is required")
    p = check_prime(args.p)
    if args.grid:
        certs = [
            c for c in scan_q_grid(p, args.grid) if c.verified and c.r_in_A and c.sqrt_disc_exists
        ]
        report["result"] = {"grid": args.grid, "certificates": [certificate_dict(c) for c in certs]}
        return
    if args.q is None:
        raise ParseError("--q or --grid is required")
    cert = two_cycle_certificate(args.q, p)
    report["result"] = certificate_dict(cert)
    m = Map31(cert.a, cert.b, p)
    report["map"] = map_summary(m)
    report["warnings"].extend(claim_warnings(m))


COMMANDS = {
    "classify": cmd_classify,
    "orbit": cmd_orbit,
    "spheres": cmd_spheres,
    "ergodicity": cmd_ergodicity,
    "periodic": cmd_periodic,
    "radii": cmd_radii,
    "reduce": cmd_reduce,
}


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="file of key = value lines")
    common.add_argument("--p", type=int)
    for name in ("a", "b", "c", "d", "e", "x", "q"):
        common.add_argument(f"--{name}", type=_rational)
    for name in ("steps", "depth", "iters", "kmax", "m", "grid"):
        common.add_argument(f"--{name}", type=int)
    common.add_argument("--max-bits", type=int, default=CLI_MAX_BITS, help="orbit size guard")
    common.add_argument("--out", help="CSV output path")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    parser = argparse.ArgumentParser(prog="padic31", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "classify":
            sp.add_argument("--r-exp", type=_rational, action="append")
        else:
            sp.add_argument("--r-exp", type=_rational)
    return parser


def _apply_config(args) -> None:
    for key, text in load_config(args.config).items():
        if not hasattr(args, key) or getattr(args, key) not in (None, False):
            continue
        if key in RATIONAL_OPTS or key == "r_exp":
            value = parse_rational(text)
            if key == "r_exp" and args.command == "classify":
                value = [value]
        elif key in INT_OPTS:
            value = int(text)
        elif key == "json":
            value = text.lower() in ("1", "true", "yes")
        else:
            value = text
        setattr(args, key, value)


def _render(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    else:
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    return lines


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-9/10" as an option; glue it to the flag before it
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE.fullmatch(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    # exact orbit points routinely exceed the default 4300-digit str() limit
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    report = {"command": args.command, "warnings": []}
    try:
        if args.config:
            _apply_config(args)
        COMMANDS[args.command](args, report)
    except (PadicError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        sys.stdout.write(dumps(report))
        for w in report["warnings"]:
            print(f"warning: {w}", file=sys.stderr)
    else:
        print("\n".join(_render(report)))
    return 0
