"""
Mixed moments τ_N = E tr(A^p1 B^q1 ⋯ A^pd B^qd) of BPP matrices.

Unitary invariance turns τ_N into a double sum over S_d × S_d weighted by
Wg_N, with Biasimirs of A and B on either side. Rewriting each Biasimir as
P + ħQ in the higher Casimirs and substituting E Tr A^k = N·a_k splits the
moment into a classical part (no ħ) and ħ times a quantum part.

All results are ``SparsePoly`` objects over the symbols a_k, b_k, ħ with
``RationalFunctionOfN`` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from .biasimir import biasimir_polynomial, classical_component, reduce
from .cumulants import free_cumulants, mixed_moment_from_cumulants, word_letters
from .permutations import (
    ExponentFunction, Permutation, all_permutations, compose, genus, word_norm,
)
from .polynomials import (
    HBAR_VAR, N_FIELD, N_RING, N_VAR, RationalFunctionOfN, SparsePoly, moment_a, moment_b,
)
from .walks import count_monotone_genus, enumerate_monotone_geodesics
from .weingarten import DEFAULT_D_CAP, weingarten_table

__all__ = [
    "WordSpec", "MomentSequence", "MomentPolynomial",
    "tau_decomposition", "two_point_decomposition", "tau_full",
    "classical_expansion", "free_moment", "free_moment_oracle",
    "quantum_boundedness_probe", "evaluate_moment_polynomial",
    "limit_at_infinity", "normalized_components",
]

MomentPolynomial = SparsePoly


@dataclass(frozen=True)
class WordSpec:
    """The word A^p(1) B^q(1) ⋯ A^p(d) B^q(d)."""

    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        p = ExponentFunction(tuple(self.p)).values
        q = ExponentFunction(tuple(self.q)).values
        if len(p) != len(q) or not p:
            raise ValueError(f"p and q must have the same positive length, got {len(p)} and {len(q)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def d(self) -> int:
        return len(self.p)

    def __str__(self):
        return "".join(f"A^{a}B^{b}" for a, b in zip(self.p, self.q))


@dataclass(frozen=True)
class MomentSequence:
    """Values s_1, s_2, … of the pure moments; s_0 = 1 implicitly. No positivity check."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def moment(self, k: int) -> Fraction:
        if k == 0:
            return Fraction(1)
        if k > len(self.values):
            raise ValueError(f"moment {k} requested but only {len(self.values)} supplied")
        return self.values[k - 1]

    @classmethod
    def of(cls, values) -> MomentSequence:
        return values if isinstance(values, MomentSequence) else cls(tuple(values))


# -- symbolic pipeline ---------------------------------------------------------------

def _casimirs_to_moments(poly: SparsePoly, letter: str) -> SparsePoly:
    """C_k ↦ N·x_k with x the moment letter; E Tr = N·E tr."""
    out = {}
    for mono, c in poly.terms.items():
        acc: dict = {}
        for v, e in mono:
            if v[0] == "C":
                acc[N_VAR] = acc.get(N_VAR, 0) + e
                key = (letter, v[1])
            else:
                key = v
            acc[key] = acc.get(key, 0) + e
        m = tuple(sorted(acc.items()))
        out[m] = out.get(m, 0) + c
    return SparsePoly(out)


def normalized_components(p: Permutation, r, letter: str = "a") -> tuple[SparsePoly, SparsePoly]:
    """
    (P̄, Q̄) for one side of the moment.

    P̄ = P(C_k ↦ N x_k)/N^cyc is a product of pure moments; Q̄ = Q(C_k ↦ N x_k)/N^aex
    carries ``RationalFunctionOfN`` coefficients.
    """
    classical, quantum = reduce(p, r)
    n = RationalFunctionOfN.N()
    cl = _as_rational(_casimirs_to_moments(classical, letter)) * (1 / n**p.cyc)
    qu = _as_rational(_casimirs_to_moments(quantum, letter)) * (1 / n**p.aex)
    return cl, qu


def _as_rational(poly: SparsePoly) -> SparsePoly:
    """Fold the N symbol into rational-function coefficients."""
    groups: dict = {}
    for mono, c in poly.terms.items():
        e = 0
        rest = []
        for v, k in mono:
            if v == N_VAR:
                e = k
            else:
                rest.append((v, k))
        groups.setdefault(tuple(rest), {})[e] = groups.get(tuple(rest), {}).get(e, 0) + c
    out = {}
    for rest, powers in groups.items():
        poly_n = N_RING.from_dict({(e,): c for e, c in powers.items()})
        out[rest] = RationalFunctionOfN(N_FIELD(poly_n))
    return SparsePoly(out)


def _sides(p: Sequence[int], q: Sequence[int], base: Permutation):
    d = base.d
    perms = all_permutations(d)
    side_a = {}
    for s in perms:
        cl, qu = reduce(s, p)
        side_a[s] = (_casimirs_to_moments(cl, "a"), _casimirs_to_moments(qu, "a"))
    side_b = {}
    for s in perms:
        t = compose(s.inverse(), base)
        cl, qu = reduce(t, q)
        side_b[s] = (_casimirs_to_moments(cl, "b"), _casimirs_to_moments(qu, "b"))
    return perms, side_a, side_b


def _decompose(p, q, base: Permutation, prefactor_power: int, cap: int):
    wg = weingarten_table(base.d, cap)
    perms, side_a, side_b = _sides(p, q, base)
    hbar = SparsePoly.var(HBAR_VAR)
    by_class_cl: dict[tuple, SparsePoly] = {}
    by_class_qu: dict[tuple, SparsePoly] = {}
    for s1 in perms:
        a_cl, a_qu = side_a[s1]
        inner_cl: dict[tuple, SparsePoly] = {}
        inner_qu: dict[tuple, SparsePoly] = {}
        inv = s1.inverse()
        for s2 in perms:
            shape = compose(inv, s2).cycle_type()
            b_cl, b_qu = side_b[s2]
            inner_cl[shape] = inner_cl.get(shape, SparsePoly()) + b_cl
            inner_qu[shape] = inner_qu.get(shape, SparsePoly()) + b_qu
        for shape in inner_cl:
            b_cl, b_qu = inner_cl[shape], inner_qu[shape]
            by_class_cl[shape] = by_class_cl.get(shape, SparsePoly()) + a_cl * b_cl
            by_class_qu[shape] = by_class_qu.get(shape, SparsePoly()) + (
                a_cl * b_qu + a_qu * b_cl + hbar * (a_qu * b_qu))
    scale = 1 / RationalFunctionOfN.N() ** prefactor_power
    classical = SparsePoly()
    quantum = SparsePoly()
    for shape, poly in by_class_cl.items():
        classical = classical + _as_rational(poly) * (wg[shape] * scale)
    for shape, poly in by_class_qu.items():
        quantum = quantum + _as_rational(poly) * (wg[shape] * scale)
    return classical, quantum


def tau_decomposition(w: WordSpec, cap: int = DEFAULT_D_CAP) -> tuple[MomentPolynomial, MomentPolynomial]:
    """
    Classical and quantum parts of τ_N for the word ``w``.

    τ_N = classical + ħ·quantum. The quantum part is returned without the
    leading ħ factor and may still contain ħ.
    """
    return _decompose(w.p, w.q, Permutation.full_cycle(w.d), 1, cap)


def two_point_decomposition(w1: WordSpec, w2: WordSpec,
                            cap: int = DEFAULT_D_CAP) -> tuple[MomentPolynomial, MomentPolynomial]:
    """E[tr(word1)·tr(word2)] split the same way, over the product of the two forward cycles."""
    d1, d2 = w1.d, w2.d
    images = tuple(range(2, d1 + 1)) + (1,) + tuple(range(d1 + 2, d1 + d2 + 1)) + (d1 + 1,)
    return _decompose(w1.p + w2.p, w1.q + w2.q, Permutation(images), 2, cap)


def tau_full(w: WordSpec, cap: int = DEFAULT_D_CAP) -> MomentPolynomial:
    """
    τ_N from the unsplit Biasimirs, summed pair by pair.

    A second route to the same number as ``classical + ħ·quantum``; it never
    separates P from Q and does not group pairs by class.
    """
    d = w.d
    gamma = Permutation.full_cycle(d)
    wg = weingarten_table(d, cap)
    total = SparsePoly()
    for s1 in all_permutations(d):
        a = _casimirs_to_moments(biasimir_polynomial(s1, w.p), "a")
        for s2 in all_permutations(d):
            b = _casimirs_to_moments(biasimir_polynomial(compose(s2.inverse(), gamma), w.q), "b")
            total = total + _as_rational(a * b) * wg[compose(s1.inverse(), s2).cycle_type()]
    return total * (1 / RationalFunctionOfN.N())


# -- evaluation ----------------------------------------------------------------------

def evaluate_moment_polynomial(poly: MomentPolynomial, moments_a, moments_b, hbar, n) -> Fraction:
    """Numeric value at N = n with a_k, b_k from the given sequences."""
    a = MomentSequence.of(moments_a)
    b = MomentSequence.of(moments_b)
    total = Fraction(0)
    for mono, c in poly.terms.items():
        value = c.evaluate(n) if isinstance(c, RationalFunctionOfN) else Fraction(c)
        for v, e in mono:
            if v == HBAR_VAR:
                value *= Fraction(hbar) ** e
            elif v[0] == "a":
                value *= a.moment(v[1]) ** e
            elif v[0] == "b":
                value *= b.moment(v[1]) ** e
            elif v == N_VAR:
                value *= Fraction(n) ** e
            else:
                raise ValueError(f"unexpected symbol {v}")
        total += value
    return total


def limit_at_infinity(poly: MomentPolynomial) -> SparsePoly:
    """Coefficient-wise N → ∞ limit; raises if some coefficient grows."""
    return SparsePoly({m: c.limit_at_infinity() for m, c in poly.terms.items()})


def quantum_boundedness_probe(w: WordSpec, moments_a, moments_b, hbar, n_list,
                              cap: int = DEFAULT_D_CAP) -> list[Fraction]:
    """Quantum part of τ_N evaluated at each N in ``n_list``."""
    for n in n_list:
        if Fraction(n) < w.d:
            raise ValueError(f"N = {n} is below d = {w.d}")
    _, quantum = tau_decomposition(w, cap)
    return [evaluate_moment_polynomial(quantum, moments_a, moments_b, hbar, n) for n in n_list]


# -- topological expansion and the free limit ------------------------------------------

@lru_cache(maxsize=None)
def _expansion_rows(d: int, k_max: int) -> tuple[tuple[Permutation, Permutation, tuple[int, ...]], ...]:
    """
    (π₁, π₂⁻¹γ, c) for every pair in S_d² with some weight at order ≤ k_max.

    c[k] is the signed number of monotone walks of genus g = k − h, where h is
    the genus of the triple (π₁, π₁⁻¹π₂, π₂⁻¹γ).
    """
    gamma = Permutation.full_cycle(d)
    rows = []
    perms = all_permutations(d)
    for s1 in perms:
        for s2 in perms:
            rel = compose(s1.inverse(), s2)
            right = compose(s2.inverse(), gamma)
            h = genus(s1, rel, right)
            if h > k_max:
                continue
            sign = -1 if word_norm(rel) % 2 else 1
            coeffs = [0] * (k_max + 1)
            for g in range(k_max - h + 1):
                coeffs[g + h] = sign * count_monotone_genus(s1, s2, g)
            if any(coeffs):
                rows.append((s1, right, tuple(coeffs)))
    return tuple(rows)


def _pure_moment(p: Permutation, r: Sequence[int], seq: MomentSequence) -> Fraction:
    """P̄ at N = ∞: product over cycles of the moment of the cycle's exponent sum."""
    out = Fraction(1)
    for c in p.cycles:
        k = sum(r[i - 1] for i in c)
        if k:
            out *= seq.moment(k)
    return out


class _SideCache(dict):
    """Per-call memo of _pure_moment; a permutation recurs in many pairs."""

    def __init__(self, r, seq):
        super().__init__()
        self.r, self.seq = r, seq

    def __missing__(self, p):
        value = self[p] = _pure_moment(p, self.r, self.seq)
        return value


def classical_expansion(w: WordSpec, k_max: int, moments_a, moments_b) -> list[Fraction]:
    """
    Coefficients e_0..e_k_max of the classical part in powers of 1/N².

    e_k sums over pairs of genus h and monotone walks of genus g with g + h = k.
    """
    a = MomentSequence.of(moments_a)
    b = MomentSequence.of(moments_b)
    out = [Fraction(0)] * (k_max + 1)
    left, right_side = _SideCache(w.p, a), _SideCache(w.q, b)
    for s1, right, coeffs in _expansion_rows(w.d, k_max):
        weight = left[s1] * right_side[right]
        if weight:
            for k, c in enumerate(coeffs):
                if c:
                    out[k] += c * weight
    return out


@lru_cache(maxsize=None)
def _planar_triples(d: int) -> tuple[tuple[Permutation, Permutation, int], ...]:
    """(π₁, π₂⁻¹γ, signed geodesic count) over pairs with |π₁| + |π₁⁻¹π₂| + |π₂⁻¹γ| = d − 1."""
    gamma = Permutation.full_cycle(d)
    rows = []
    for s1 in all_permutations(d):
        n1 = word_norm(s1)
        for s2 in all_permutations(d):
            right = compose(s2.inverse(), gamma)
            rel = compose(s1.inverse(), s2)
            if n1 + word_norm(rel) + word_norm(right) != d - 1:
                continue
            paths = len(enumerate_monotone_geodesics(s1, s2))
            rows.append((s1, right, -paths if word_norm(rel) % 2 else paths))
    return tuple(rows)


def free_moment(w: WordSpec, moments_a, moments_b) -> Fraction:
    """Genus-zero formula: signed monotone geodesic counts over non-crossing triples."""
    a = MomentSequence.of(moments_a)
    b = MomentSequence.of(moments_b)
    left, right_side = _SideCache(w.p, a), _SideCache(w.q, b)
    total = Fraction(0)
    for s1, right, weight in _planar_triples(w.d):
        total += weight * left[s1] * right_side[right]
    return total


@lru_cache(maxsize=256)
def _scaled_cumulants(seq: MomentSequence, n: int) -> tuple[int, tuple[Fraction, ...]]:
    """
    (D, κ(D·X)) with D the common denominator of the first n moments.

    D^k·s_k is an integer, so the cumulants of the rescaled variable are
    integers as well; κ_k(D·X) = D^k κ_k(X).
    """
    values = [seq.moment(k) for k in range(1, n + 1)]
    scale = lcm(*(v.denominator for v in values)) if values else 1
    return scale, tuple(free_cumulants([v * scale**k for k, v in enumerate(values, 1)]))


def free_moment_oracle(w: WordSpec, moments_a, moments_b) -> Fraction:
    """The same moment from free cumulants and colour-pure noncrossing partitions."""
    letters = word_letters(w.p, w.q)
    na = sum(w.p)
    nb = sum(w.q)
    a = MomentSequence.of(moments_a)
    b = MomentSequence.of(moments_b)
    da, ka = _scaled_cumulants(a, na)
    db, kb = _scaled_cumulants(b, nb)
    return mixed_moment_from_cumulants(letters, [ka, kb]) / (Fraction(da) ** na * Fraction(db) ** nb)
