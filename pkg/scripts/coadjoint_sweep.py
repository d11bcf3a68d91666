"""Run the coadjoint duality check over several seeds and report timings."""
import argparse
import time

from sgca.density import verify_coadjoint


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", nargs="+", default=["1/2", "1", "3/2", "2"])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--max-degree", type=int, default=4)
    args = ap.parse_args()
    for ell in args.ell:
        for seed in range(args.seeds):
            t0 = time.perf_counter()
            r = verify_coadjoint(ell, args.trials, args.max_degree, seed)
            status = "ok" if r.ok else f"{len(r.mismatches)} mismatches"
            print(f"l={ell:>3} seed={seed} checks={r.checked} {status} ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
