"""Cross-check the greedy sweep against the direct LP on random pairs."""

import argparse
import sys

from impcop.experiments import CrosscheckConfig, run_crosscheck


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 5])
    ap.add_argument("--pairs", type=int, default=100, help="imprecise pairs per mesh size")
    ap.add_argument("--quasi", type=int, default=50, help="extra quasi-copula pairs")
    args = ap.parse_args()

    cfg = CrosscheckConfig(seed=args.seed, sizes=tuple(args.sizes),
                           pairs_per_size=args.pairs, quasi_pairs=args.quasi)
    res = run_crosscheck(cfg)
    print(f"{res.agree}/{res.total} agree; {res.feasible} feasible; "
          f"kinds {dict(res.kinds)}; {res.seconds:.1f}s")
    return 0 if res.ok else 1


if __name__ == "__main__":
    sys.exit(main())
