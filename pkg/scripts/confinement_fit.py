#!/usr/bin/env python3
"""Slope of E^2 against N^2 from the quantization chain.

At large N the deformed levels grow like r*theta*N^2 (hard confinement);
the fitted slope over a window [N_lo, N_max] drifts down toward r*theta.
"""
import argparse

import numpy as np

from kgosc.model import QuantumNumbers, Variant
from kgosc.spectrum import gup_energy_chain


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--r", type=float, default=0.5)
    parser.add_argument("--thetas", default="0.1,0.3,0.5")
    parser.add_argument("--j", type=int, default=1)
    parser.add_argument("--n-max", type=int, default=40)
    args = parser.parse_args()

    for theta in (float(t) for t in args.thetas.split(",")):
        qns = [QuantumNumbers(n, args.j) for n in range(args.n_max + 1)]
        N = np.array([q.N for q in qns], dtype=float)
        e2 = np.array([gup_energy_chain(args.r, theta, q, Variant.EQ60)[0] ** 2 for q in qns])
        print(f"theta={theta}: r*theta = {args.r * theta:.5f}")
        for lo in range(0, args.n_max, max(1, args.n_max // 5)):
            slope = np.polyfit(N[lo:] ** 2, e2[lo:], 1)[0]
            print(f"   N >= {int(N[lo]):3d}: slope {slope:.5f}")


if __name__ == "__main__":
    main()
