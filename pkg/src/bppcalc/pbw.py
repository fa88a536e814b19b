"""
Normal ordering in U(gl_n) and a brute-force oracle for Biasimirs.

Generators e_ij are ordered lexicographically by (i, j). A word is rewritten
with ab = ba + [a, b] at a descent until no descent is left, using
[e_ij, e_kl] = δ_jk e_il − δ_li e_kj. Elements carry an extra formal ħ so
that Z = ħe can be expanded directly.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .biasimir import biasimir_polynomial
from .permutations import Permutation, _exponents
from .polynomials import HBAR_VAR, N_VAR, SparsePoly

__all__ = [
    "DEFAULT_N_CAP", "Generator", "Word", "PBWElement",
    "normal_order_word", "pbw_normal_order", "casimir_element",
    "biasimir_by_expansion", "casimir_polynomial_to_pbw", "oracle_check",
]

DEFAULT_N_CAP = 4

Generator = tuple[int, int]
Word = tuple[Generator, ...]


def _commutator(a: Generator, b: Generator) -> list[tuple[int, Generator]]:
    (i, j), (k, l) = a, b
    out = []
    if j == k:
        out.append((1, (i, l)))
    if l == i:
        out.append((-1, (k, j)))
    return out


def _rewrite(word: Word, pick, memo) -> dict[Word, int]:
    if word in memo:
        return memo[word]
    descents = [i for i in range(len(word) - 1) if word[i] > word[i + 1]]
    if not descents:
        res = {word: 1}
    else:
        i = pick(descents)
        a, b = word[i], word[i + 1]
        acc: Counter = Counter()
        for w, c in _rewrite(word[:i] + (b, a) + word[i + 2:], pick, memo).items():
            acc[w] += c
        for sign, g in _commutator(a, b):
            for w, c in _rewrite(word[:i] + (g,) + word[i + 2:], pick, memo).items():
                acc[w] += sign * c
        res = {w: c for w, c in acc.items() if c}
    memo[word] = res
    return res


_first_memo: dict[Word, dict[Word, int]] = {}
_last_memo: dict[Word, dict[Word, int]] = {}


def normal_order_word(word: Word, strategy: str = "first") -> dict[Word, int]:
    """Normal form of a word; ``strategy`` picks the first or last descent to swap."""
    word = tuple(tuple(g) for g in word)
    if strategy == "first":
        return _rewrite(word, lambda ds: ds[0], _first_memo)
    if strategy == "last":
        return _rewrite(word, lambda ds: ds[-1], _last_memo)
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass(frozen=True)
class PBWElement:
    """Σ coeff · ħ^k · (normal-ordered monomial) in U(gl_n)[ħ]."""

    n: int
    terms: dict[tuple[int, Word], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: c for k, c in self.terms.items() if c})

    @classmethod
    def generator(cls, n: int, i: int, j: int) -> PBWElement:
        return cls(n, {(0, ((i, j),)): 1})

    @classmethod
    def scalar(cls, n: int, c: int, hbar_power: int = 0) -> PBWElement:
        return cls(n, {(hbar_power, ()): c})

    def __add__(self, other: PBWElement) -> PBWElement:
        acc = Counter(self.terms)
        for k, c in other.terms.items():
            acc[k] += c
        return PBWElement(self.n, dict(acc))

    def __neg__(self):
        return PBWElement(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> PBWElement:
        if isinstance(other, int):
            return PBWElement(self.n, {k: c * other for k, c in self.terms.items()})
        acc: Counter = Counter()
        for (h1, w1), c1 in self.terms.items():
            for (h2, w2), c2 in other.terms.items():
                for w, c in normal_order_word(w1 + w2).items():
                    acc[(h1 + h2, w)] += c1 * c2 * c
        return PBWElement(self.n, dict(acc))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PBWElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_normal_ordered(self) -> bool:
        return all(list(w) == sorted(w) for _, w in self.terms)


def _check_n(n: int, cap: int):
    if not 1 <= n <= cap:
        raise ValueError(f"n={n} outside the cap 1..{cap}")


def pbw_normal_order(expr, n: int, cap: int = DEFAULT_N_CAP, strategy: str = "first") -> PBWElement:
    """
    Normal-order a formal expression.

    ``expr`` is a word (sequence of (i, j) pairs) or an iterable of
    ``(coefficient, hbar_power, word)`` triples.
    """
    _check_n(n, cap)
    items = list(expr)
    if not items or (isinstance(items[0], tuple) and len(items[0]) == 2 and isinstance(items[0][0], int)):
        items = [(1, 0, tuple(items))]
    acc: Counter = Counter()
    for coeff, hpow, word in items:
        for g in word:
            if not (1 <= g[0] <= n and 1 <= g[1] <= n):
                raise ValueError(f"generator e_{g} outside gl_{n}")
        for w, c in normal_order_word(tuple(word), strategy).items():
            acc[(hpow, w)] += coeff * c
    return PBWElement(n, dict(acc))


def _matrix_power_paths(n: int, a: int, b: int, m: int):
    """Words of (E^m)_ab as index paths a → c1 → ⋯ → b."""
    if m == 0:
        if a == b:
            yield ()
        return
    for mids in itertools.product(range(1, n + 1), repeat=m - 1):
        path = (a,) + mids + (b,)
        yield tuple(zip(path, path[1:]))


@lru_cache(maxsize=None)
def casimir_element(n: int, k: int) -> PBWElement:
    """C_k = Tr Z^k = ħ^k Σ_a (E^k)_aa, normal-ordered."""
    if k == 0:
        return PBWElement.scalar(n, n)
    words: Counter = Counter()
    for a in range(1, n + 1):
        for w in _matrix_power_paths(n, a, a, k):
            words[w] += 1
    return pbw_normal_order([(c, k, w) for w, c in words.items()], n)


def biasimir_by_expansion(p: Permutation, r, n: int, cap: int = DEFAULT_N_CAP) -> PBWElement:
    """C_π^(r) straight from its definition, summing over all index maps [d] → [n]."""
    _check_n(n, cap)
    r = _exponents(r)
    words: Counter = Counter()
    for idx in itertools.product(range(1, n + 1), repeat=p.d):
        pieces = [list(_matrix_power_paths(n, idx[k], idx[p(k + 1) - 1], r[k])) for k in range(p.d)]
        for choice in itertools.product(*pieces):
            words[tuple(g for piece in choice for g in piece)] += 1
    total = sum(r)
    return pbw_normal_order([(c, total, w) for w, c in words.items()], n, cap)


def casimir_polynomial_to_pbw(poly: SparsePoly, n: int) -> PBWElement:
    """Substitute C_k ↦ Tr Z^k and N ↦ n in a polynomial in C_k, ħ and N."""
    out = PBWElement(n)
    for mono, coeff in poly.terms.items():
        term = PBWElement.scalar(n, int(coeff))
        for v, e in mono:
            if v == N_VAR:
                term = term * n**e
            elif v == HBAR_VAR:
                term = PBWElement(n, {(h + e, w): c for (h, w), c in term.terms.items()})
            elif v[0] == "C":
                for _ in range(e):
                    term = term * casimir_element(n, v[1])
            else:
                raise ValueError(f"unexpected symbol {v}")
        out = out + term
    return out


def oracle_check(p: Permutation, r, n: int, cap: int = DEFAULT_N_CAP) -> bool:
    """Compare the Casimir rewriting of C_π^(r) with direct expansion in U(gl_n)."""
    direct = biasimir_by_expansion(p, r, n, cap)
    reduced = casimir_polynomial_to_pbw(biasimir_polynomial(p, r), n)
    return direct == reduced
