"""Decide whether the stalled 7x7 pair contains a copula, and print the certificate."""

import argparse

from impcop import fixtures as fx
from impcop.defects import iterate_pair
from impcop.feasibility import negative_witness, sandwich_greedy, sandwich_lp_oracle
from impcop.gridio import to_text


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--denom", type=int, default=None, help="print the copula over this denominator")
    args = ap.parse_args()

    A, B = fx.ex7_A(), fx.ex7_B()
    tr = iterate_pair(A, B)
    print(f"defect iteration: stationary={tr.converged} after {tr.steps} steps, "
          f"components equal={tr.collapsed}")
    g, o = sandwich_greedy(A, B), sandwich_lp_oracle(A, B)
    print(f"greedy: {'copula' if g.feasible else 'none'}; lp oracle: {'copula' if o.feasible else 'none'}")
    print(f"negative witness: {negative_witness(A, B)}")
    if g.feasible:
        print(f"greedy lifts: {len(g.lifts)}")
        print(to_text(g.copula, args.denom), end="")


if __name__ == "__main__":
    main()
