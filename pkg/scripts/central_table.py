"""Print h2 dimensions over l and window for the three solver modes."""
import argparse
import time

from sgca.central import solve_h2

ELLS = ["0", "1/2", "1", "3/2", "2"]
MODES = {
    "default": {},
    "odd-slots": {"odd_slots": True},
    "generic-bosonic": {"generic_bosonic": True},
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--windows", type=int, nargs="+", default=[6, 8])
    args = ap.parse_args()
    print(f"{'mode':<16} {'l':>4} " + " ".join(f"W={w:<3}" for w in args.windows) + "  seconds")
    for name, kw in MODES.items():
        for ell in ELLS:
            t0 = time.perf_counter()
            dims = [solve_h2(ell, w, **kw).h2_dim for w in args.windows]
            cells = " ".join(f"{d:<5}" for d in dims)
            print(f"{name:<16} {ell:>4} {cells}  {time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
