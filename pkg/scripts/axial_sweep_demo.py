#!/usr/bin/env python3
"""Sweep the axial coupling beta and watch the subtraction weight switch branch.

For fixed (alpha, gamma) the admissible weight is max(beta^2, beta_c) with
beta_c = (sqrt(alpha*gamma) - sqrt((1-alpha)(1-gamma)))^2: constant below the
critical coupling, quadratic above it.  The tangle weight switches branch at
|beta| = |alpha + gamma - 1| instead, where the tangle becomes affine on the
whole Bloch ball.  This script prints both kinks and writes the full curve.
"""

import argparse
import sys

import numpy as np

from roofext import (
    axial_beta_max,
    axial_critical_beta_sq,
    axial_map,
    axial_tangle,
    bloch_to_qubit,
    concurrence_sq,
    subtraction_weight,
)
from roofext.qubitmaps import axial_concurrence_weight, axial_tangle_weight


def sweep(alpha, gamma, steps, rho, out):
    bmax = axial_beta_max(alpha, gamma)
    bc = np.sqrt(axial_critical_beta_sq(alpha, gamma))
    m = abs(alpha + gamma - 1.0)
    print(f"alpha={alpha} gamma={gamma}: beta_max={bmax:.6f}, "
          f"concurrence kink at beta_c={bc:.6f}, tangle kink at |m|={m:.6f}")
    out.write("beta,w_closed,w_pencil,w_tangle,concurrence,tangle\n")
    for b in np.linspace(0.0, bmax, steps):
        T = axial_map(alpha, b, gamma)
        sw = subtraction_weight(T)
        wc = axial_concurrence_weight(alpha, b, gamma)
        wt = axial_tangle_weight(alpha, b, gamma)
        c = np.sqrt(concurrence_sq(T, rho, sw))
        tau = axial_tangle(alpha, b, gamma, rho)
        out.write(f"{b:.12g},{wc:.12g},{sw.w:.12g},{wt:.12g},{c:.12g},{tau:.12g}\n")
        if abs(wc - sw.w) > 1e-8:
            print(f"  WARNING: closed/pencil disagree at beta={b:.6f}: "
                  f"{wc:.12g} vs {sw.w:.12g}", file=sys.stderr)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.3)
    ap.add_argument("--gamma", type=float, default=0.8)
    ap.add_argument("--steps", type=int, default=81)
    ap.add_argument("--bloch", type=float, nargs=3, default=(0.5, 0.0, 0.1),
                    metavar=("X1", "X2", "X3"))
    ap.add_argument("--out", default="axial_sweep.csv")
    args = ap.parse_args()

    rho = bloch_to_qubit(args.bloch)
    with open(args.out, "w", encoding="utf-8") as fh:
        sweep(args.alpha, args.gamma, args.steps, rho, fh)
    print(f"wrote {args.steps} rows to {args.out}")


if __name__ == "__main__":
    main()
