from collections import defaultdict

import pytest
from hypothesis import given, settings

from bppcalc.permutations import Permutation, all_permutations, compose
from bppcalc.walks import (
    count_monotone_genus, count_monotone_walks, enumerate_monotone_geodesics,
    enumerate_monotone_walks,
)
from conftest import permutation_pairs

P = Permutation.from_cycles
I = Permutation.identity


def naive_walks_by_endpoint(d, steps):
    """Depth-first search over every weakly label-increasing transposition sequence from id."""
    edges = [(s, t) for t in range(2, d + 1) for s in range(1, t)]
    found = defaultdict(list)

    def dfs(cur, seq, min_label):
        if len(seq) == steps:
            found[cur].append(tuple(seq))
            return
        for s, t in edges:
            if t >= min_label:
                seq.append((s, t))
                dfs(compose(cur, Permutation.transposition(s, t, d)), seq, t)
                seq.pop()

    dfs(I(d), [], 2)
    return found


def test_small_counts():
    assert count_monotone_walks(P("(1 2 3)"), P("(1 2 3)"), 0) == 1
    assert count_monotone_walks(I(2), P("(1 2)"), 1) == 1
    assert count_monotone_walks(I(2), I(2), 2) == 1
    assert count_monotone_genus(I(3), I(3), 0) == 1


def test_catalan_geodesics():
    assert count_monotone_genus(I(3), P("(1 2 3)"), 0) == 2
    assert count_monotone_genus(I(4), P("(1 2 3 4)"), 0) == 5
    assert count_monotone_genus(I(5), Permutation.full_cycle(5), 0) == 14


def test_geodesic_lists():
    assert enumerate_monotone_geodesics(I(3), I(3)) == [()]
    assert enumerate_monotone_geodesics(I(2), P("(1 2)")) == [((1, 2),)]
    walks = enumerate_monotone_geodesics(I(3), P("(1 2 3)"))
    assert len(walks) == 2
    for w in walks:
        assert len(w) == 2 and w[0][1] <= w[1][1]


@pytest.mark.parametrize("d,max_steps", [(2, 6), (3, 6), (4, 6)])
def test_counts_match_naive_enumeration(d, max_steps):
    for steps in range(max_steps + 1):
        naive = naive_walks_by_endpoint(d, steps)
        for sigma in all_permutations(d):
            assert count_monotone_walks(I(d), sigma, steps) == len(naive[sigma])
            if steps <= 4:
                assert enumerate_monotone_walks(I(d), sigma, steps) == sorted(naive[sigma])


@settings(max_examples=30)
@given(permutation_pairs(max_d=4))
def test_counts_are_relative(pair):
    p1, p2 = pair
    sigma = compose(p1.inverse(), p2)
    for steps in range(4):
        assert count_monotone_walks(p1, p2, steps) == count_monotone_walks(I(p1.d), sigma, steps)


def test_parity_and_caps():
    assert count_monotone_walks(I(3), P("(1 2)", 3), 2) == 0
    with pytest.raises(ValueError):
        count_monotone_walks(I(2), I(2), 21)
    with pytest.raises(ValueError):
        count_monotone_walks(I(2), I(3), 0)
    with pytest.raises(ValueError):
        enumerate_monotone_walks(I(5), I(5), 10, cap=5)
