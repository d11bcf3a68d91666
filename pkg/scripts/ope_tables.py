"""Fit and print every singular OPE for a list of l values."""
import argparse
from fractions import Fraction

from sgca.ope import FIELD_KINDS, fit_ope_detailed, render_ope, round_trip_residual


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", nargs="+", default=["1/2", "1", "3/2"])
    ap.add_argument("--format", choices=["text", "latex"], default="text")
    ap.add_argument("--window", type=int, default=8)
    args = ap.parse_args()
    for ell in args.ell:
        print(f"# l = {ell}")
        for a in FIELD_KINDS:
            for b in FIELD_KINDS:
                res = fit_ope_detailed(a, b, Fraction(ell), args.window)
                rt = round_trip_residual(res.table)
                note = f"  [rows={res.rows} free={res.free} round-trip={rt}]"
                print(render_ope(res.table, args.format) + note)
        print()


if __name__ == "__main__":
    main()
