import itertools
import random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from bppcalc.biasimir import (
    biasimir_polynomial, casimir_degree, casimir_map, classical_component, reduce,
    reduction_steps,
)
from bppcalc.permutations import Permutation, aex, all_permutations, cyc, is_canonical
from bppcalc.polynomials import HBAR_VAR, N_VAR, SparsePoly, casimir
from conftest import permutations

P = Permutation.from_cycles
I = Permutation.identity


def C(*ks):
    out = SparsePoly.const(1)
    for k in ks:
        out = out * SparsePoly.var(casimir(k))
    return out


Nn = SparsePoly.var(N_VAR)
ZERO = SparsePoly()


def test_classical_component_examples():
    r = (1, 2, 3, 4, 5)
    assert classical_component(P("(1 2 3)(4 5)"), r) == C(6, 9)
    assert classical_component(Permutation.full_cycle(4), (2, 1, 1, 3)) == C(7)
    assert classical_component(I(3), (1, 1, 1)) == C(1, 1, 1)


@pytest.mark.parametrize("r1", [1, 2, 3])
def test_three_point_table(r1):
    r = (r1, 1, 1)
    table = {
        "()": (C(r1, 1, 1), ZERO),
        "(1 2)": (C(r1 + 1, 1), ZERO),
        "(1 3)": (C(r1 + 1, 1), ZERO),
        "(2 3)": (C(r1, 2), ZERO),
        "(1 2 3)": (C(r1 + 2), ZERO),
        "(1 3 2)": (C(r1 + 2), C(r1, 1) - Nn * C(r1 + 1)),
    }
    for cycles, expected in table.items():
        assert reduce(P(cycles, 3), r) == expected, cycles


def test_canonical_has_no_quantum_part():
    for r in itertools.product((1, 2, 3), repeat=3):
        for cycles in ["()", "(1 2)", "(2 3)", "(1 2 3)", "(1 2)(3)"]:
            assert reduce(P(cycles, 3), r)[1].is_zero()


def test_zero_exponents():
    # a point with exponent 0 contributes the identity matrix
    assert biasimir_polynomial(P("(1 2)"), (0, 3)) == C(3)
    assert biasimir_polynomial(I(2), (0, 0)) == Nn * Nn
    assert biasimir_polynomial(P("(1 3 2)"), (2, 0, 1)) == biasimir_polynomial(P("(1 2)"), (2, 1))


def test_degree_bounds_exhaustive_small():
    weight = lambda v: v[1] if v[0] == "C" else 0
    for d in range(1, 5):
        for p in all_permutations(d):
            for r in itertools.product((1, 2), repeat=d):
                classical, quantum = reduce(p, r)
                assert casimir_degree(classical) == cyc(p)
                assert quantum.is_zero() or casimir_degree(quantum) <= aex(p)
                # the Casimir weight Σ k over C_k is the matrix degree |r|
                assert classical.degree(weight) == sum(r)


@settings(max_examples=40)
@given(permutations(max_d=5), st.integers(0, 10**6), st.data())
def test_random_paths_give_same_polynomial(p, seed, data):
    r = tuple(data.draw(st.lists(st.integers(1, 2), min_size=p.d, max_size=p.d)))
    assert biasimir_polynomial(p, r, random.Random(seed)) == biasimir_polynomial(p, r)


@settings(max_examples=40)
@given(permutations(max_d=5))
def test_hbar_zero_gives_classical(p):
    r = (1,) * p.d
    full = biasimir_polynomial(p, r)
    assert full.substitute({HBAR_VAR: 0}) == classical_component(p, r)


def test_casimir_map_and_degree():
    full = biasimir_polynomial(P("(1 3 2)"), (2, 1, 1))
    parts = casimir_map(full)
    assert parts["C4"] == SparsePoly.const(1)
    assert parts["C1*C2"] == SparsePoly.var(HBAR_VAR)
    # N and each C_k have weight one, ħ weight zero
    assert casimir_degree(full) == 2


def test_reduction_steps_record_corrections():
    steps = reduction_steps(P("(1 3 2)"), (2, 1, 1))
    assert len(steps) >= 1
    assert is_canonical(steps[-1].after)
    for s in steps:
        assert s.before.d == s.after.d
    assert reduction_steps(P("(1 2 3)")) == []


def test_rejects_bad_exponents():
    with pytest.raises(ValueError):
        reduce(P("(1 2)"), (1,))
    with pytest.raises(ValueError):
        reduce(P("(1 2)"), (1, -1))
