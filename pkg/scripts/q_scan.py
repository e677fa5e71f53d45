"""Scan the deformation parameter q and tabulate the smallest Gram eigenvalue
per level, the CCR residual and the adjointness residual.

    python scripts/q_scan.py --N 2 --levels 4 --steps 21
"""

import argparse

import numpy as np

from fockforge.fock import build_fock, verify_adjointness, verify_ccr
from fockforge.projector import gram
from fockforge.twist import make_twist


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=2)
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--steps", type=int, default=21)
    args = ap.parse_args()

    header = ["q"] + [f"min_eig[{n}]" for n in range(2, args.levels + 1)] + ["ccr", "adjoint"]
    print("  ".join(f"{h:>11}" for h in header))
    for q in np.linspace(-1.0, 1.0, args.steps):
        T = make_twist("q_flip", args.N, q=q)
        eigs = [gram(T, n).min_eig for n in range(2, args.levels + 1)]
        row = [q] + eigs
        if abs(abs(q) - 1) > 1e-12:
            F = build_fock(T, None, args.levels)
            row += [verify_ccr(F).residual, verify_adjointness(F).residual]
        else:
            row += [float("nan"), float("nan")]  # kernel nonzero: the quotient lives in the Bose/Fermi scripts
        print("  ".join(f"{x:11.3e}" for x in row))


if __name__ == "__main__":
    main()
