"""
Acceptance suite: thirteen criteria, each with a time limit.

Every criterion prints one PASS/FAIL line (also collected into the pytest
terminal summary). Run directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import pytest

from bppcalc.biasimir import casimir_degree, reduce
from bppcalc.lr_process import (
    Signature, biane_identity_check, isotypic_measure, lr_coefficients, perelomov_popov_check,
    weyl_dim,
)
from bppcalc.moments import (
    MomentSequence, WordSpec, classical_expansion, free_moment, free_moment_oracle,
    limit_at_infinity, quantum_boundedness_probe, tau_decomposition,
)
from bppcalc.pbw import oracle_check
from bppcalc.permutations import Permutation, aex, all_permutations, compose, cyc, defect, genus
from bppcalc.polynomials import HBAR_VAR, N_VAR, RationalFunctionOfN, SparsePoly, casimir, moment_a, moment_b
from bppcalc.weingarten import partitions, weingarten_table, wg_exact, wg_series


@dataclass
class Outcome:
    number: int
    title: str
    limit: float
    passed: bool = False
    seconds: float = 0.0
    detail: str = ""

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] criterion {self.number:2d} {self.title}: {self.seconds:.2f}s (limit {self.limit:g}s) {self.detail}"


CRITERIA: dict[int, tuple[str, float, object]] = {}
RESULTS: dict[int, Outcome] = {}


def criterion(number: int, title: str, limit: float):
    def register(fn):
        CRITERIA[number] = (title, limit, fn)
        return fn
    return register


def run_criterion(number: int) -> Outcome:
    title, limit, fn = CRITERIA[number]
    out = Outcome(number, title, limit)
    start = time.perf_counter()
    try:
        out.detail = fn() or ""
        ok = True
    except AssertionError as exc:
        ok = False
        out.detail = f"assertion failed: {exc}"
    out.seconds = time.perf_counter() - start
    out.passed = ok and out.seconds < limit
    if ok and not out.passed:
        out.detail += " (too slow)"
    RESULTS[number] = out
    print(out.line())
    return out


N = RationalFunctionOfN.N()
P = Permutation.from_cycles
I = Permutation.identity


def C(*ks):
    out = SparsePoly.const(1)
    for k in ks:
        out = out * SparsePoly.var(casimir(k))
    return out


@criterion(1, "three-point Weingarten values", 1)
def weingarten_fixtures():
    den = N * (N**2 - 1) * (N**2 - 4)
    assert wg_exact(I(3), I(3)) == (N**2 - 2) / den
    assert wg_exact(I(3), P("(1 2)", 3)) == -1 / ((N**2 - 1) * (N**2 - 4))
    assert wg_exact(I(3), P("(1 2 3)")) == 2 / den
    return "3/3 classes exact"


@criterion(2, "Weingarten series vs Laurent expansion", 30)
def series_agreement():
    checked = 0
    for d in range(1, 5):
        for shape, value in weingarten_table(d).items():
            cycles, start = [], 1
            for length in shape:
                cycles.append(list(range(start, start + length)))
                start += length
            rep = Permutation.from_cycles(cycles, d)
            series = wg_series(I(d), rep, 3)
            top, coeffs = value.laurent_at_infinity(7)
            assert top == -(d + rep.norm), (d, shape)
            assert coeffs[0::2] == series, (d, shape, coeffs, series)
            assert not any(coeffs[1::2]), (d, shape)
            checked += 1
    return f"{checked} classes, genus 0..3"


@criterion(3, "Biasimir reduction table", 1)
def biasimir_fixtures():
    n = SparsePoly.var(N_VAR)
    zero = SparsePoly()
    for r1 in (1, 2, 3, 4):
        r = (r1, 1, 1)
        table = {
            "()": (C(r1, 1, 1), zero),
            "(1 2)": (C(r1 + 1, 1), zero),
            "(1 3)": (C(r1 + 1, 1), zero),
            "(2 3)": (C(r1, 2), zero),
            "(1 2 3)": (C(r1 + 2), zero),
            "(1 3 2)": (C(r1 + 2), C(r1, 1) - n * C(r1 + 1)),
        }
        for cycles, expected in table.items():
            assert reduce(P(cycles, 3), r) == expected, (cycles, r)
    return "6 rows x r1 in 1..4"


@criterion(4, "degree bounds on classical and quantum parts", 120)
def degree_bounds():
    # every r in {1,2}^d: this contains r = 1 and, for d <= 5, all 32 random choices
    count = tight = 0
    for d in range(1, 6):
        for p in all_permutations(d):
            for r in itertools.product((1, 2), repeat=d):
                classical, quantum = reduce(p, r)
                assert casimir_degree(classical) == cyc(p), (p, r)
                if not quantum.is_zero():
                    q = casimir_degree(quantum)
                    assert q <= aex(p), (p, r)
                    tight += q == aex(p)
                count += 1
    return f"{count} (pi, r) pairs, bound attained {tight} times"


@criterion(5, "normal-ordering oracle", 300)
def pbw_oracle():
    runs = 0
    for n in (2, 3):
        for p in all_permutations(3):
            assert oracle_check(p, (1, 1, 1), n), (p, n)
            runs += 1
    for p in all_permutations(3):
        assert oracle_check(p, (2, 1, 1), 3), p
        runs += 1
    return f"{runs} oracle runs"


def _three_block_expected(r, s):
    a = lambda k: SparsePoly.var(moment_a(k))
    b = lambda k: SparsePoly.var(moment_b(k))
    return (a(r + 1) - a(1) * a(r)) * (b(s + 1) - b(1) * b(s))


@criterion(6, "three-block counterexample", 60)
def counterexample():
    h = SparsePoly.var(HBAR_VAR)
    counts = {}
    for r, s in itertools.product((1, 2, 3), repeat=2):
        classical, quantum = tau_decomposition(WordSpec((r, 1, 1), (s, 1, 1)))
        lq = limit_at_infinity(quantum)
        expected = _three_block_expected(r, s)
        # the quantum part still carries one factor of hbar; at hbar = 1 it is the product itself
        assert lq == h * expected, (r, s, lq)
        assert lq.substitute({HBAR_VAR: 1}) == expected
        lc = limit_at_infinity(classical)
        assert HBAR_VAR not in lc.variables()
        counts[(r, s)] = (len(lc.terms), len(lq.terms))
    for r, s in itertools.product((2, 3), repeat=2):
        assert counts[(r, s)] == (10, 4), (r, s, counts[(r, s)])
    degenerate = ", ".join(f"{k}:{v[0]}+{v[1]}" for k, v in counts.items() if 1 in k)
    return f"limit matches for 9 pairs; 10+4 monomials for r,s>=2; overlaps {degenerate}"


@criterion(7, "four-factor words have no quantum part", 60)
def four_factor():
    words = 0
    for r, s, t, u in itertools.product(range(4), repeat=4):
        _, quantum = tau_decomposition(WordSpec((r, t), (s, u)))
        assert quantum.is_zero(), (r, s, t, u)
        words += 1
    return f"{words} words"


def _two_cycle_base(d1, d2):
    d = d1 + d2
    return Permutation(tuple(range(2, d1 + 1)) + (1,) + tuple(range(d1 + 2, d + 1)) + (d1 + 1,))


@criterion(8, "defect inequalities", 120)
def inequalities():
    pairs = 0
    for d in range(1, 6):
        gamma = Permutation.full_cycle(d)
        perms = all_permutations(d)
        for p1 in perms:
            for p2 in perms:
                right = compose(p2.inverse(), gamma)
                assert defect(p1) + defect(right) <= 2 * genus(p1, compose(p1.inverse(), p2), right)
                pairs += 1
    two = 0
    for d1, d2 in [(1, 1), (1, 2), (2, 2), (2, 3)]:
        base = _two_cycle_base(d1, d2)
        perms = all_permutations(d1 + d2)
        for p1 in perms:
            for p2 in perms:
                right = compose(p2.inverse(), base)
                assert defect(p1) + defect(right) <= 2 * genus(p1, compose(p1.inverse(), p2), right)
                two += 1
    return f"{pairs} single-cycle pairs, {two} two-cycle pairs"


@criterion(9, "free limit by three routes", 120)
def freeness():
    rng = random.Random(20240601)
    words = [WordSpec(p, q) for d in (1, 2, 3)
             for p in itertools.product(range(4), repeat=d) for q in itertools.product(range(4), repeat=d)]
    checks = 0
    for _ in range(20):
        ma = MomentSequence(tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(9)))
        mb = MomentSequence(tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(9)))
        for w in words:
            e0 = classical_expansion(w, 0, ma, mb)[0]
            assert e0 == free_moment(w, ma, mb) == free_moment_oracle(w, ma, mb), str(w)
            checks += 1
    return f"{len(words)} words x 20 moment draws"


def _signatures(n, largest, smallest=0):
    return [Signature(lam) for lam in itertools.product(range(largest, smallest - 1, -1), repeat=n)
            if all(a >= b for a, b in zip(lam, lam[1:]))]


def _compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


@criterion(10, "quantum correlator identity for N = 2", 300)
def biane():
    sigs = _signatures(2, 2)
    k_lists = [c for t in (1, 2, 3) for c in _compositions(t)]
    runs = 0
    for lam, mu in itertools.product(sigs, repeat=2):
        for ks in k_lists:
            for hbar in (Fraction(1), Fraction(1, 2)):
                assert biane_identity_check(lam, mu, ks, hbar), (lam, mu, ks, hbar)
                runs += 1
    return f"{runs} exact checks"


@criterion(11, "traces of powers act as scalars", 60)
def perelomov_popov():
    sigs = [Signature((m, 0)) for m in range(4)] + [Signature((1, 1))]
    runs = 0
    for lam in sigs:
        for k in range(1, 5):
            for hbar in (Fraction(1), Fraction(1, 2)):
                assert perelomov_popov_check(lam, k, hbar), (lam, k, hbar)
                runs += 1
    return f"{runs} exact checks"


@criterion(12, "isotypic measure normalization", 60)
def measure_normalization():
    products = 0
    for n in (1, 2, 3):
        sigs = [s for s in _signatures(n, 4) if s.size <= 4]
        for lam, mu in itertools.product(sigs, repeat=2):
            mult = lr_coefficients(lam, mu)
            assert sum(c * weyl_dim(nu) for nu, c in mult.items()) == weyl_dim(lam) * weyl_dim(mu)
            measure = isotypic_measure(lam, mu)
            assert sum(measure.probabilities.values(), Fraction(0)) == 1
            products += 1
    return f"{products} tensor products"


def _relative_change(values):
    v100, v1000 = values[1], values[2]
    scale = max(abs(v100), abs(v1000))
    return Fraction(0) if scale == 0 else abs(v1000 - v100) / scale


@criterion(13, "quantum part settles as N grows", 60)
def boundedness():
    ones = MomentSequence((1,) * 8)
    words = [WordSpec(p, q) for d in (1, 2, 3)
             for p in itertools.product(range(3), repeat=d) for q in itertools.product(range(3), repeat=d)]
    worst = Fraction(0)
    for w in words:
        values = quantum_boundedness_probe(w, ones, ones, 1, [10, 100, 1000])
        worst = max(worst, _relative_change(values))
    assert worst < Fraction(1, 10)
    # unit moments make every quantum value vanish; repeat with moments that do not
    ma = MomentSequence(tuple(1 + k for k in range(1, 8)))
    mb = MomentSequence(tuple(Fraction(2**k + 1, k) for k in range(1, 8)))
    worst2, nonzero = Fraction(0), 0
    for w in words:
        values = quantum_boundedness_probe(w, ma, mb, 1, [10, 100, 1000])
        nonzero += any(values)
        worst2 = max(worst2, _relative_change(values))
    assert worst2 < Fraction(1, 10)
    return (f"{len(words)} words; unit moments worst change {float(worst):.3f}; "
            f"a_k=1+k, b_k=(2^k+1)/k: {nonzero} nonzero, worst change {float(worst2):.3f}")


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    out = run_criterion(number)
    assert out.passed, out.line()


if __name__ == "__main__":
    for number in sorted(CRITERIA):
        run_criterion(number)
