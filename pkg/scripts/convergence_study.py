#!/usr/bin/env python3
"""Grid-refinement study of the finite-difference oracle.

Prints raw and Richardson-extrapolated relative errors of the lowest
Poschl-Teller eigenvalues and the observed convergence order.
"""
import argparse
import math

import numpy as np

from kgosc.oracle import build_pt_operator, eigen_lowest, observed_order, pt_grid, richardson_pair
from kgosc.spectrum import pt_eigenvalue, pt_parameters


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--theta", type=float, default=0.3)
    parser.add_argument("--j", type=int, default=1)
    parser.add_argument("--count", type=int, default=4)
    args = parser.parse_args()

    alpha = math.sqrt(args.theta)
    pt = pt_parameters(args.theta, args.j)
    exact = np.array([pt_eigenvalue(pt, n) for n in range(args.count)])
    cells = [128, 256, 512, 1024, 2048, 4096]
    raw = [eigen_lowest(build_pt_operator(pt, alpha, pt_grid(alpha, m)), args.count) for m in cells]
    print(f"theta={args.theta} j={args.j}; exact sbar/lambda = {exact}")
    print(f"{'cells':>6} {'raw rel err (max)':>18} {'extrap rel err (max)':>21} {'order':>7}")
    for i, m in enumerate(cells):
        line = f"{m:6d} {np.max(np.abs(raw[i].eigenvalues / exact - 1)):18.3e}"
        if i:
            ex = richardson_pair(raw[i - 1], raw[i]).extrapolated
            line += f" {np.max(np.abs(ex / exact - 1)):21.3e}"
        if i >= 2:
            order = observed_order(raw[i - 2].eigenvalues, raw[i - 1].eigenvalues, raw[i].eigenvalues)
            line += f" {order[0]:7.3f}"
        print(line)


if __name__ == "__main__":
    main()
