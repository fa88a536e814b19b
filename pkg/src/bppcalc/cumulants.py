"""
Free cumulants and mixed moments of free pairs, computed without permutations.

Used as an oracle for the genus-zero Weingarten formula: a mixed moment of
free A and B is the sum, over noncrossing partitions of the letters whose
blocks are single-coloured, of products of free cumulants.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

__all__ = [
    "free_cumulants", "moments_from_cumulants", "word_letters",
    "mixed_moment_from_cumulants", "noncrossing_partitions",
]


def _composition_sums(moments: Sequence[Fraction], n: int) -> list[list[Fraction]]:
    """table[s][m] = Σ over compositions i_1+…+i_s = m (i_t ≥ 0) of Π moments[i_t]."""
    m0 = [Fraction(1)] + [Fraction(x) for x in moments[:n]]
    table = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    table[0][0] = Fraction(1)
    for s in range(1, n + 1):
        prev = table[s - 1]
        row = table[s]
        for m in range(n + 1):
            row[m] = sum((prev[m - i] * m0[i] for i in range(m + 1)), Fraction(0))
    return table


def free_cumulants(moments: Sequence) -> list[Fraction]:
    """
    Free cumulants κ_1..κ_n from moments m_1..m_n.

    Inverts m_n = Σ_{s=1..n} κ_s Σ_{i_1+…+i_s = n−s} m_{i_1}⋯m_{i_s} (with
    m_0 = 1), which is the first-block decomposition of noncrossing partitions.
    """
    n = len(moments)
    table = _composition_sums(moments, n)
    kappa: list[Fraction] = []
    for k in range(1, n + 1):
        rest = sum((kappa[s - 1] * table[s][k - s] for s in range(1, k)), Fraction(0))
        kappa.append(Fraction(moments[k - 1]) - rest)
    return kappa


def moments_from_cumulants(cumulants: Sequence) -> list[Fraction]:
    n = len(cumulants)
    moments: list[Fraction] = []
    for k in range(1, n + 1):
        table = _composition_sums(moments + [Fraction(0)] * (n - len(moments)), n)
        moments.append(sum((Fraction(cumulants[s - 1]) * table[s][k - s] for s in range(1, k + 1)), Fraction(0)))
    return moments


def word_letters(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Colour sequence of A^p1 B^q1 ⋯ A^pd B^qd, with 0 for A and 1 for B."""
    out: list[int] = []
    for a, b in zip(p, q):
        out.extend([0] * a)
        out.extend([1] * b)
    return tuple(out)


def mixed_moment_from_cumulants(letters: Sequence[int], cumulants: Sequence[Sequence]) -> Fraction:
    """
    Σ over noncrossing partitions with single-coloured blocks of Π κ_|V|(colour).

    ``cumulants[c][k-1]`` is κ_k of colour ``c``. Dynamic programme on
    intervals: the block of the first letter splits an interval into gaps
    that are independent noncrossing problems.
    """
    letters = tuple(letters)
    n = len(letters)
    # integral cumulants stay ints, which keeps the recursion in fast integer arithmetic
    kappa = [[_exact(x) for x in ks] for ks in cumulants]

    @lru_cache(maxsize=None)
    def interval(i: int, j: int):
        if i >= j:
            return 1
        colour = letters[i]
        total = 0
        for extra, value in chain(i, j, colour).items():
            size = extra + 1
            if size > len(kappa[colour]):
                raise ValueError(f"need free cumulant κ_{size}; not enough moments")
            total += kappa[colour][size - 1] * value
        return total

    @lru_cache(maxsize=None)
    def chain(a: int, j: int, colour: int) -> dict:
        # block already contains a; choose the rest of it inside (a, j)
        out = {0: interval(a + 1, j)}
        for b in range(a + 1, j):
            if letters[b] != colour:
                continue
            gap = interval(a + 1, b)
            if not gap:
                continue
            for extra, value in chain(b, j, colour).items():
                out[extra + 1] = out.get(extra + 1, 0) + gap * value
        return out

    return Fraction(interval(0, n))


def _exact(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def noncrossing_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Explicit list of NC(n) on 0..n-1; only sensible for small n."""
    if n == 0:
        return [()]
    out = []

    # the block containing 0 is {0 = v0 < v1 < ... }; gaps are filled recursively
    def rec_blocks(start: int, end: int):
        if start >= end:
            yield ()
            return
        for rest in _subsets(range(start + 1, end)):
            block = (start,) + rest
            bounds = list(block) + [end]
            gaps = [(bounds[t] + 1, bounds[t + 1]) for t in range(len(block))]
            for filling in _product_of(gaps):
                yield (block,) + filling

    def _product_of(gaps):
        if not gaps:
            yield ()
            return
        (a, b), *more = gaps
        for first in rec_blocks(a, b):
            for tail in _product_of(more):
                yield first + tail

    for partition in rec_blocks(0, n):
        out.append(tuple(sorted(partition)))
    return out


def _subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield tuple(x for k, x in enumerate(items) if mask >> k & 1)
