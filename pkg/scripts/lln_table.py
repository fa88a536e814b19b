#!/usr/bin/env python3
"""Exact mean and variance of the normalized deformed power sum under the isotypic measure."""

import argparse
from fractions import Fraction

from bppcalc.lr_process import Signature, lln_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--N-list", dest="n_list", default="2,3")
    ap.add_argument("--trivial-mu", action="store_true", help="tensor with the trivial representation")
    args = ap.parse_args()
    family = []
    for n in (int(x) for x in args.n_list.split(",")):
        lam = Signature((1,) + (0,) * (n - 1))
        mu = Signature.trivial(n) if args.trivial_mu else lam
        family.append((lam, mu, Fraction(1, n)))
    print("N,hbar,mean,variance")
    for row in lln_experiment(family, args.k):
        print(f"{row.N},{row.hbar},{row.mean},{row.variance}")


if __name__ == "__main__":
    main()
