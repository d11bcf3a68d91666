"""Show the extra central classes that appear at l = 0 once the bosonic slots are left free."""
import argparse

from sgca.central import solve_h2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", default="0")
    ap.add_argument("--window", type=int, default=6)
    args = ap.parse_args()
    rep = solve_h2(args.ell, args.window, generic_bosonic=True)
    print(f"l={args.ell} window={args.window} h2_dim={rep.h2_dim} coboundaries={rep.coboundary_dim}")
    for i, vec in enumerate(rep.basis, 1):
        print(f"class {i}: charges {vec['charges']}")
        for slot, prof in vec["diagonal_profiles"].items():
            shown = ", ".join(f"{k}:{v}" for k, v in list(prof.items())[:7])
            print(f"  {slot}(m,-m)  {shown}")


if __name__ == "__main__":
    main()
