"""
Rewriting Biasimirs C_π^(r) as polynomials in the higher Casimirs C_k.

The reduction flattens all exponents to 1, then walks a path of nice Coxeter
conjugations to a canonical permutation. Each conjugation by τ = (j j+1)
changes C_π by the trace of one commutator [F_j, F_{j+1}], which is ħ times
a signed pair of Biasimirs on one point fewer:

* j or j+1 is a fixed point: no correction;
* π(j+1) ≠ j: ħ·C_{π′} − ħ·C_{π″};
* π(j+1) = j: ħ·C_{π′} − ħ·N·C_{π‴}.

Here π′ lives on the ground set without j+1, and π″, π‴ on the ground set
without j. The smaller Biasimirs are reduced recursively. Canonical
end points are plain products of higher Casimirs.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass

from .permutations import (
    ExponentFunction, Permutation, _exponents, canonical_reduction_path,
    contract_zero_exponents, coxeter_conjugate, flatten,
)
from .polynomials import HBAR_VAR, N_VAR, SparsePoly, casimir

__all__ = [
    "CasimirPolynomial", "BiasimirTerm", "BiasimirTermSum", "ReductionStep",
    "classical_component", "reduce", "biasimir_polynomial", "reduction_steps",
    "casimir_degree", "casimir_map",
]

# Polynomial in C_k, ħ and N with integer coefficients.
CasimirPolynomial = SparsePoly

_HBAR = SparsePoly.var(HBAR_VAR)
_N = SparsePoly.var(N_VAR)


@dataclass(frozen=True)
class BiasimirTerm:
    """coefficient · C_σ, with σ a permutation of ``ground`` (all exponents 1)."""

    coefficient: SparsePoly
    ground: tuple[int, ...]
    images: tuple[int, ...]

    def as_permutation(self) -> Permutation:
        """The term's permutation relabelled order-preservingly onto [1..len(ground)]."""
        rank = {x: k for k, x in enumerate(self.ground, 1)}
        return Permutation(tuple(rank[y] for y in self.images))


@dataclass(frozen=True)
class BiasimirTermSum:
    terms: tuple[BiasimirTerm, ...]

    def __post_init__(self):
        for t in self.terms:
            if sorted(t.images) != sorted(t.ground):
                raise ValueError(f"images {t.images} do not permute ground set {t.ground}")


@dataclass(frozen=True)
class ReductionStep:
    """C_before = C_after + correction, for conjugation by (j j+1)."""

    j: int
    before: Permutation
    after: Permutation
    correction: BiasimirTermSum


def casimir_degree(poly: SparsePoly) -> int:
    """Total degree with N and every C_k of weight 1 and ħ of weight 0."""
    return poly.degree(lambda v: 0 if v == HBAR_VAR else 1)


def casimir_map(poly: SparsePoly) -> dict[str, SparsePoly]:
    """Group by Casimir monomial; values are polynomials in ħ and N."""
    groups: dict[tuple, dict] = {}
    for m, c in poly.terms.items():
        cas = tuple((v, e) for v, e in m if v[0] == "C")
        rest = tuple((v, e) for v, e in m if v[0] != "C")
        groups.setdefault(cas, {})[rest] = c
    out = {}
    for cas in sorted(groups):
        key = SparsePoly.monomial(cas).to_json() if cas else {"1": 1}
        out[next(iter(key))] = SparsePoly(groups[cas])
    return out


def _casimir_product(lengths) -> SparsePoly:
    mono: dict = {}
    for k in lengths:
        mono[casimir(k)] = mono.get(casimir(k), 0) + 1
    return SparsePoly.monomial(mono)


def classical_component(p: Permutation, r) -> CasimirPolynomial:
    """Π over cycles of C_(sum of r over the cycle); C_0 = N."""
    r = _exponents(r)
    if len(r) != p.d:
        raise ValueError(f"exponent function has length {len(r)}, expected {p.d}")
    sums = [sum(r[i - 1] for i in c) for c in p.cycles]
    return _casimir_product(s for s in sums if s) * _N ** sum(1 for s in sums if s == 0)


# -- corrections -----------------------------------------------------------------

def _correction(images: tuple[int, ...], j: int) -> list[tuple[SparsePoly, tuple[int, ...], tuple[int, ...]]]:
    """
    Correction terms for conjugating the permutation ``images`` of [1..d] by (j j+1).

    Returns (coefficient, ground set, images on that ground set) triples.
    """
    d = len(images)

    def pi(x):
        return images[x - 1]

    if pi(j) == j + 1:
        raise ValueError(f"conjugation by ({j} {j + 1}) is not nice")
    if pi(j) == j or pi(j + 1) == j + 1:
        return []
    inv = {y: x for x, y in enumerate(images, 1)}

    # π′ on [d] \ {j+1}
    g1 = tuple(x for x in range(1, d + 1) if x != j + 1)
    a = inv[j + 1]
    p1 = {x: pi(x) for x in g1}
    p1[j] = pi(j + 1)
    p1[a] = pi(j)
    terms = [(_HBAR, g1, tuple(p1[x] for x in g1))]

    g2 = tuple(x for x in range(1, d + 1) if x != j)
    if pi(j + 1) != j:
        # π″ on [d] \ {j}
        b = inv[j]
        p2 = {x: pi(x) for x in g2}
        p2[j + 1] = pi(j)
        p2[b] = pi(j + 1)
        terms.append((-_HBAR, g2, tuple(p2[x] for x in g2)))
    else:
        # π‴ on [d] \ {j}
        p3 = {x: pi(x) for x in g2}
        p3[j + 1] = pi(j)
        terms.append((-_HBAR * _N, g2, tuple(p3[x] for x in g2)))
    return terms


def _standardize(ground: tuple[int, ...], images: tuple[int, ...]) -> tuple[int, ...]:
    rank = {x: k for k, x in enumerate(ground, 1)}
    return tuple(rank[y] for y in images)


_memo: dict[tuple[int, ...], SparsePoly] = {}
_memo_lock = threading.Lock()


def _reduce_flat(images: tuple[int, ...], rng: random.Random | None = None,
                 memo: dict | None = None) -> SparsePoly:
    """
    C_π for a flat Biasimir on [1..d], as a polynomial in C_k, ħ and N.

    Deterministic paths share the module memo. A randomized call gets its own
    memo so that every sub-Biasimir is reduced along one random path.
    """
    if memo is None:
        memo = _memo if rng is None else {}
    hit = memo.get(images)
    if hit is not None:
        return hit
    perm = Permutation(images)
    total = SparsePoly()
    cur = perm
    for j in canonical_reduction_path(perm, rng):
        for coeff, ground, sub in _correction(cur.images, j):
            total = total + coeff * _reduce_flat(_standardize(ground, sub), rng, memo)
        cur = coxeter_conjugate(cur, j)
    total = total + _casimir_product(len(c) for c in cur.cycles)
    if memo is _memo:
        with _memo_lock:
            memo[images] = total
    else:
        memo[images] = total
    return total


def biasimir_polynomial(p: Permutation, r, rng: random.Random | None = None) -> CasimirPolynomial:
    """The full Biasimir C_π^(r) = P + ħQ as one polynomial in C_k, ħ and N."""
    r = _exponents(r)
    if len(r) != p.d:
        raise ValueError(f"exponent function has length {len(r)}, expected {p.d}")
    contracted, r2, zero_cycles = contract_zero_exponents(p, r)
    factor = _N ** zero_cycles
    if contracted is None:
        return factor
    return factor * _reduce_flat(flatten(contracted, r2).images, rng)


def reduce(p: Permutation, r, rng: random.Random | None = None) -> tuple[CasimirPolynomial, CasimirPolynomial]:
    """
    Split C_π^(r) into its classical and quantum components.

    Returns ``(classical, quantum)`` with C_π^(r) = classical + ħ·quantum and
    ``classical`` free of ħ. Passing ``rng`` randomizes every reduction path
    and bypasses the memo.
    """
    full = biasimir_polynomial(p, r, rng)
    by_hbar = full.split_by(HBAR_VAR)
    classical = by_hbar.get(0, SparsePoly())
    quantum = SparsePoly()
    for e, part in by_hbar.items():
        if e:
            quantum = quantum + part * _HBAR ** (e - 1)
    expected = classical_component(p, r)
    if classical != expected:
        raise RuntimeError(f"classical part {classical} differs from {expected} for {p}, r={r}")
    return classical, quantum


def reduction_steps(p: Permutation, r=None) -> list[ReductionStep]:
    """The top-level conjugation path with its corrections, labels kept as in the flattened permutation."""
    flat = flatten(p, _exponents(r) if r is not None else ExponentFunction.ones(p.d))
    steps = []
    cur = flat
    for j in canonical_reduction_path(flat):
        terms = tuple(BiasimirTerm(c, g, im) for c, g, im in _correction(cur.images, j))
        nxt = coxeter_conjugate(cur, j)
        steps.append(ReductionStep(j, cur, nxt, BiasimirTermSum(terms)))
        cur = nxt
    return steps
