#!/usr/bin/env python3
"""N → ∞ limit of τ(A^r B A B A B^s ⋯) for the three-block family, with monomial counts."""

import argparse
import itertools

from bppcalc.moments import WordSpec, limit_at_infinity, tau_decomposition


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=3, help="largest r and s")
    args = ap.parse_args()
    print("r,s,classical_monomials,quantum_monomials,quantum_limit")
    for r, s in itertools.product(range(1, args.max + 1), repeat=2):
        classical, quantum = tau_decomposition(WordSpec((r, 1, 1), (s, 1, 1)))
        lc, lq = limit_at_infinity(classical), limit_at_infinity(quantum)
        print(f'{r},{s},{len(lc.terms)},{len(lq.terms)},"{lq}"')


if __name__ == "__main__":
    main()
