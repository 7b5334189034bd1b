#!/usr/bin/env python3
"""Oracle vs chain vs printed closed form across a grid of deformations.

    python scripts/verify_lattice.py --r 0.2 --thetas 0.1,0.3,0.5 --n-max 3 --j-max 3
"""
import argparse

from kgosc.model import Mode, Variant, params_from_dimensionless
from kgosc.oracle import verify_spectrum


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--r", type=float, default=0.2)
    parser.add_argument("--thetas", default="0.1,0.3,0.5")
    parser.add_argument("--n-max", type=int, default=3)
    parser.add_argument("--j-max", type=int, default=3)
    args = parser.parse_args()

    print(f"{'theta':>6} {'variant':>7} {'rows':>5} {'pass':>5} {'max|chain-oracle|':>18} "
          f"{'max|eq70-oracle|':>17}  anomalies")
    for theta in (float(t) for t in args.thetas.split(",")):
        params = params_from_dimensionless(args.r, theta)
        for variant in Variant:
            rep = verify_spectrum(params, (args.n_max, args.j_max), Mode.GUP, variant)
            print(f"{theta:6.3f} {variant.value:>7} {len(rep.rows):5d} {str(rep.all_pass):>5} "
                  f"{rep.max_rel_diff('rel_diff_chain'):18.3e} "
                  f"{rep.max_rel_diff('rel_diff_eq70'):17.3e}  {'; '.join(rep.anomalies)}")


if __name__ == "__main__":
    main()
