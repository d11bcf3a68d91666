"""Command-line front end: ``sgca <command> [flags]``.

Exit status: 0 when every requested check passes, 1 when a verification
fails, 2 on usage or literal-parsing errors. Output goes to stdout and is
byte-identical for identical arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from sgca.algebra import AlgebraParams, bracket, parse_element, verify_jacobi_window
from sgca.central import solve_h2
from sgca.density import COCYCLE_SLOTS, cocycle, verify_coadjoint
from sgca.errors import (
    AnsatzInsufficient,
    DomainError,
    FitInconsistent,
    GradingError,
    IndexParityError,
    ParseError,
    WindowTooSmall,
)
from sgca.halfint import HalfInt
from sgca.laurent import parse_laurent
from sgca.ope import FIELD_KINDS, fit_ope_detailed, ope_to_json, render_ope, round_trip_residual
from sgca.superspace import check_representation

SCHEMA = 1
JACOBI_ELLS = ("0", "1/2", "1", "3/2", "2", "5/2")
CENTRAL_ELLS = ("0", "1/2", "1", "3/2", "2")
REP_ELLS = ("0", "1/2", "1", "3/2", "2")
COAD_ELLS = ("1/2", "1", "2")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything that determines a command's output."""

    command: str
    ells: list[HalfInt]
    window: HalfInt | None = None
    seed: int = 0
    format: str = "text"
    flags: dict = field(default_factory=dict)


def _half(text: str) -> HalfInt:
    try:
        v = HalfInt.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or half-integer such as 1, 1/2, 3/2: {text!r}") from exc
    return v


def _ell(text: str) -> HalfInt:
    v = _half(text)
    if v.twice_value < 0:
        raise argparse.ArgumentTypeError("l must be non-negative")
    return v


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational number: {text!r}") from exc


def _emit(cfg: RunConfig, payload: dict, lines: list[str]) -> None:
    if cfg.format == "json":
        doc = {"schema": SCHEMA, "command": cfg.command, **payload}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def cmd_bracket(cfg: RunConfig, args) -> int:
    x, y = parse_element(args.x), parse_element(args.y)
    central = None
    if args.c1 is not None or args.c2 is not None:
        central = (args.c1 if args.c1 is not None else 1, args.c2 if args.c2 is not None else 1)
    params = AlgebraParams(cfg.ells[0], central=central)
    for el in (x, y):
        for g, _ in el.items():
            params.check_gen(g)
    out = bracket(params, x, y)
    _emit(
        cfg,
        {"ell": str(cfg.ells[0]), "x": str(x), "y": str(y), "result": str(out), "terms": out.to_json()},
        [str(out)],
    )
    return 0


def cmd_jacobi(cfg: RunConfig, args) -> int:
    reports = [verify_jacobi_window(AlgebraParams(l, mutation=args.mutate), cfg.window) for l in cfg.ells]
    lines = []
    for r in reports:
        lines.append(f"l={r.ell} window={r.window} triples={r.checked} failures={len(r.failures)} {_verdict(r.ok)}")
        for t, e in r.failures[: args.show]:
            lines.append(f"  ({', '.join(map(str, t))}) -> {e}")
    ok = all(r.ok for r in reports)
    _emit(cfg, {"mutation": args.mutate, "reports": [r.to_json() for r in reports], "ok": ok}, lines)
    return 0 if ok else 1


def cmd_central(cfg: RunConfig, args) -> int:
    reports = [
        solve_h2(l, cfg.window, odd_slots=args.odd_slots, generic_bosonic=args.generic_bosonic)
        for l in cfg.ells
    ]
    ok = args.expect is None or all(r.h2_dim == args.expect for r in reports)
    if cfg.format == "json" and len(reports) == 1:
        payload = {**reports[0].to_json(), "ok": ok}
    else:
        payload = {"reports": [r.to_json() for r in reports], "ok": ok}
    lines = []
    for r in reports:
        lines.append(
            f"l={r.ell} window={r.window} inner={r.inner_window} mode={r.mode} "
            f"unknowns={r.num_unknowns} constraints={r.num_constraints} h2_dim={r.h2_dim}"
        )
        for i, vec in enumerate(r.basis):
            charges = ", ".join(f"{k}={v}" for k, v in vec["charges"].items())
            lines.append(f"  class {i + 1}: {charges}")
            for slot, prof in vec["diagonal_profiles"].items():
                body = " ".join(f"{k}:{v}" for k, v in prof.items())
                lines.append(f"    {slot}(m,-m): {body}")
    if args.expect is not None:
        lines.append(f"expected h2_dim={args.expect}: {_verdict(ok)}")
    _emit(cfg, payload, lines)
    return 0 if ok else 1


def cmd_rep_check(cfg: RunConfig, args) -> int:
    reports = [check_representation(l, cfg.window, two_grassmann=args.two_grassmann) for l in cfg.ells]
    lines = []
    for r in reports:
        tag = " two-grassmann" if r.two_grassmann else ""
        lines.append(f"l={r.ell} window={r.window}{tag} pairs={r.checked} mismatches={len(r.mismatches)} {_verdict(r.ok)}")
        for (a, b), lhs, rhs in r.mismatches[: args.show]:
            lines.append(f"  [{a}, {b}]: {lhs}  vs  {rhs}")
    ok = all(r.ok for r in reports)
    _emit(cfg, {"reports": [r.to_json() for r in reports], "ok": ok}, lines)
    return 0 if ok else 1


def cmd_coad_check(cfg: RunConfig, args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    reports = [verify_coadjoint(l, args.trials, args.max_degree, cfg.seed) for l in cfg.ells]
    lines = []
    for r in reports:
        fams = " ".join(f"{k}:{v}" for k, v in sorted(r.by_family.items()))
        lines.append(
            f"l={r.ell} trials={r.trials} max_degree={r.max_degree} seed={r.seed} "
            f"checks={r.checked} ({fams}) mismatches={len(r.mismatches)} {_verdict(r.ok)}"
        )
    ok = all(r.ok for r in reports)
    _emit(cfg, {"reports": [r.to_json() for r in reports], "ok": ok}, lines)
    return 0 if ok else 1


def cmd_cocycle(cfg: RunConfig, args) -> int:
    f, g = parse_laurent(args.f), parse_laurent(args.g)
    l = cfg.ells[0]
    value = cocycle(l.value, args.pair, f, g)
    _emit(
        cfg,
        {"ell": str(l), "pair": args.pair, "f": str(f), "g": str(g), "value": str(value), "tau_powers": value.to_json()},
        [str(value)],
    )
    return 0


def cmd_ope(cfg: RunConfig, args) -> int:
    l = cfg.ells[0]
    try:
        res = fit_ope_detailed(args.A, args.B, l.value, cfg.window)
    except (FitInconsistent, AnsatzInsufficient) as exc:
        sys.stderr.write(f"fit failed: {exc}\n")
        return 1
    residual = round_trip_residual(res.table, args.check_window)
    ok = residual == 0 and not res.table.weight_violations()
    if cfg.format == "json":
        doc = {**ope_to_json(res.table), "command": "ope", "window": str(cfg.window),
               "round_trip_window": str(args.check_window), "round_trip_residual": residual, "ok": ok}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_ope(res.table, cfg.format) + "\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgca", description="Exact computations for the l-super Galilean conformal algebra.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def common(sp, ells_default, multi=True, window=None, formats=("text", "json")):
        if multi:
            sp.add_argument("--ell", type=_ell, action="append",
                            help=f"value of l; repeatable (default: {', '.join(ells_default)})")
        else:
            sp.add_argument("--ell", type=_ell, default=None, help=f"value of l (default: {ells_default[0]})")
        if window is not None:
            sp.add_argument("--window", type=_half, default=_half(str(window)), help=f"index window (default: {window})")
        sp.add_argument("--format", choices=formats, default="text")
        sp.set_defaults(ells_default=ells_default)

    s = sub.add_parser("bracket", help="graded bracket of two elements")
    s.add_argument("x", help='element literal, e.g. "L(2)" or "3/2*G(1) - H(-1/2)"')
    s.add_argument("y")
    s.add_argument("--c1", type=_rational, help="numeric value substituted for c1")
    s.add_argument("--c2", type=_rational, help="numeric value substituted for c2")
    common(s, ("1",), multi=False)

    s = sub.add_parser("jacobi", help="super-Jacobi identity on a window")
    s.add_argument("--mutate", choices=["lp-sign"], default=None, help="perturb one structure constant")
    s.add_argument("--show", type=int, default=10, help="failing triples to list per l")
    common(s, JACOBI_ELLS, window=6)

    s = sub.add_parser("central", help="second cohomology with trivial coefficients on a window")
    s.add_argument("--odd-slots", action="store_true", help="also carry odd-output central slots")
    s.add_argument("--generic-bosonic", action="store_true", help="do not pin the bosonic central terms")
    s.add_argument("--expect", type=int, default=None, help="fail unless every h2_dim equals this")
    common(s, CENTRAL_ELLS, window=8)

    s = sub.add_parser("rep-check", help="vector-field realization against the brackets")
    s.add_argument("--two-grassmann", action="store_true", help="two Grassmann variables (l = 1 only)")
    s.add_argument("--show", type=int, default=5)
    common(s, REP_ELLS, window=4)

    s = sub.add_parser("coad-check", help="coadjoint action against its defining relation")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    common(s, COAD_ELLS)

    s = sub.add_parser("cocycle", help="central term of two Laurent coefficients")
    s.add_argument("--pair", choices=sorted(COCYCLE_SLOTS), default="LL",
                   help="which components f and g fill (default LL)")
    s.add_argument("f", help='Laurent literal, e.g. "t^3 - 2t^-1"')
    s.add_argument("g")
    common(s, ("1",), multi=False)

    s = sub.add_parser("ope", help="singular OPE fitted from mode brackets")
    s.add_argument("A", choices=FIELD_KINDS)
    s.add_argument("B", choices=FIELD_KINDS)
    s.add_argument("--check-window", type=_half, default=_half("6"), help="round-trip window (default: 6)")
    common(s, ("1",), multi=False, window=8, formats=("text", "latex", "json"))
    return p


COMMANDS = {
    "bracket": cmd_bracket,
    "jacobi": cmd_jacobi,
    "central": cmd_central,
    "rep-check": cmd_rep_check,
    "coad-check": cmd_coad_check,
    "cocycle": cmd_cocycle,
    "ope": cmd_ope,
}


def _config(args) -> RunConfig:
    ell = args.ell
    if ell is None:
        ells = [HalfInt.parse(e) for e in args.ells_default]
    elif isinstance(ell, list):
        ells = sorted(set(ell))
    else:
        ells = [ell]
    if getattr(args, "two_grassmann", False):
        if args.ell is None:
            ells = [HalfInt.parse("1")]
        elif any(e.twice_value != 2 for e in ells):
            raise UsageError("--two-grassmann requires --ell 1")
    return RunConfig(args.command, ells, getattr(args, "window", None), getattr(args, "seed", 0), args.format)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args)
    except ParseError as exc:
        sys.stderr.write(exc.annotated() + "\n")
        return 2
    except (UsageError, IndexParityError, GradingError, WindowTooSmall, DomainError, ValueError) as exc:
        sys.stderr.write(f"sgca {args.command}: error: {exc}\n")
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
