#!/usr/bin/env python3
"""
Quantum part of τ_N at N = 10, 100, 1000 for every word with d ≤ 3, exponents ≤ 2.

Prints the words whose quantum part is nonzero, the relative change between
the last two N, and max|value| / |value at the largest N|.
"""

import argparse
import itertools
from fractions import Fraction

from bppcalc.moments import MomentSequence, WordSpec, quantum_boundedness_probe

PRESETS = {
    "unit": (lambda k: Fraction(1), lambda k: Fraction(1)),
    "powers": (lambda k: Fraction(2**k), lambda k: Fraction(2**k)),
    "spread": (lambda k: Fraction(1 + k), lambda k: Fraction(2**k + 1, k)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--moments", choices=sorted(PRESETS), default="spread")
    ap.add_argument("--hbar", default="1")
    ap.add_argument("--N-list", dest="n_list", default="10,100,1000")
    args = ap.parse_args()
    fa, fb = PRESETS[args.moments]
    a = MomentSequence(tuple(fa(k) for k in range(1, 8)))
    b = MomentSequence(tuple(fb(k) for k in range(1, 8)))
    ns = [int(x) for x in args.n_list.split(",")]
    hbar = Fraction(args.hbar)
    worst_change = worst_ratio = Fraction(0)
    print("p,q," + ",".join(f"N={n}" for n in ns) + ",rel_change,max_ratio")
    for d in (1, 2, 3):
        for p in itertools.product(range(3), repeat=d):
            for q in itertools.product(range(3), repeat=d):
                values = quantum_boundedness_probe(WordSpec(p, q), a, b, hbar, ns)
                if not any(values):
                    continue
                last, prev = values[-1], values[-2]
                change = abs(last - prev) / max(abs(last), abs(prev))
                ratio = max(abs(v) for v in values) / abs(last) if last else Fraction(0)
                worst_change, worst_ratio = max(worst_change, change), max(worst_ratio, ratio)
                cells = ",".join(f"{float(v):.6g}" for v in values)
                print(f'"{p}","{q}",{cells},{float(change):.4f},{float(ratio):.4f}')
    print(f"# worst relative change {float(worst_change):.4f}, worst max ratio {float(worst_ratio):.4f}")


if __name__ == "__main__":
    main()
