"""
The finite-N Littlewood–Richardson process and BPP observables.

Tensor products V_λ ⊗ V_μ of gl_N irreps decompose with Littlewood–Richardson
multiplicities; weighting each component by its dimension gives the
isotypic measure on signatures. Each signature ν corresponds to a particle
configuration c on ħZ, and the Casimir C_k acts on V_ν by the deformed power
sum ℘_k(c). The checks at the bottom verify these facts against explicit
representation matrices.
"""

from __future__ import annotations

import bisect
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .irreps import (
    DEFAULT_DEGREE_CAP, DEFAULT_RANK_CAP, IrrepMatrices, build_irrep, operator_matrix_power_trace,
)

__all__ = [
    "DEFAULT_N_CAP", "DEFAULT_SIZE_CAP", "Signature", "ParticleConfig", "IsotypicMeasure",
    "lr_coefficients", "pieri_coefficients", "weyl_dim", "isotypic_measure",
    "bpp_power_sum", "signature_to_config", "irrep_matrices",
    "perelomov_popov_check", "biane_identity_check", "bpp_mixed_moment", "sample", "lln_experiment", "LLNRow",
]

DEFAULT_N_CAP = 5
DEFAULT_SIZE_CAP = 12


@dataclass(frozen=True, order=True)
class Signature:
    """A highest weight of gl_N: N weakly decreasing integers."""

    lam: tuple[int, ...]

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        if not lam:
            raise ValueError("a signature needs N ≥ 1 entries")
        if any(a < b for a, b in zip(lam, lam[1:])):
            raise ValueError(f"signature {lam} is not weakly decreasing")
        object.__setattr__(self, "lam", lam)

    @property
    def N(self) -> int:
        return len(self.lam)

    @property
    def size(self) -> int:
        return sum(self.lam)

    def twisted(self) -> tuple[tuple[int, ...], int]:
        """(λ − λ_N·(1,…,1), λ_N): a partition and the determinant power."""
        t = self.lam[-1]
        return tuple(x - t for x in self.lam), t

    @classmethod
    def trivial(cls, n: int) -> Signature:
        return cls((0,) * n)

    def __str__(self):
        return "(" + ",".join(map(str, self.lam)) + ")"


@dataclass(frozen=True)
class ParticleConfig:
    """Strictly decreasing positions c_1 > ⋯ > c_N on the lattice ħZ (up to a common shift)."""

    c: tuple[Fraction, ...]
    hbar: Fraction

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.c)
        hbar = Fraction(self.hbar)
        if hbar <= 0:
            raise ValueError("hbar must be positive")
        if any(a <= b for a, b in zip(c, c[1:])):
            raise ValueError(f"positions {c} are not strictly decreasing")
        if any(((a - b) / hbar).denominator != 1 for a, b in zip(c, c[1:])):
            raise ValueError("particle gaps must be multiples of hbar")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "hbar", hbar)

    @property
    def N(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class IsotypicMeasure:
    probabilities: dict[Signature, Fraction]

    def __post_init__(self):
        if any(p < 0 for p in self.probabilities.values()):
            raise ValueError("negative probability")
        if sum(self.probabilities.values(), Fraction(0)) != 1:
            raise ValueError("probabilities do not sum to 1")

    def support(self) -> list[Signature]:
        """Signatures in a fixed deterministic order (reverse lexicographic)."""
        return sorted(self.probabilities, reverse=True)

    def expectation(self, fn) -> Fraction:
        return sum((p * fn(s) for s, p in self.probabilities.items()), Fraction(0))


# -- Littlewood–Richardson --------------------------------------------------------------

def weyl_dim(lam: Signature) -> int:
    """Π_{i<j} (λ_i − λ_j + j − i)/(j − i)."""
    lam = lam.lam if isinstance(lam, Signature) else tuple(lam)
    out = Fraction(1)
    for i, j in itertools.combinations(range(len(lam)), 2):
        out *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert out.denominator == 1
    return int(out)


def _partitions_containing(outer_size: int, inner: tuple[int, ...], rows: int) -> Iterable[tuple[int, ...]]:
    def rec(i, remaining, cap):
        if i == rows:
            if remaining == 0:
                yield ()
            return
        low = inner[i] if i < len(inner) else 0
        for part in range(min(cap, remaining), low - 1, -1):
            for rest in rec(i + 1, remaining - part, part):
                yield (part,) + rest
    yield from rec(0, outer_size, outer_size)


def _lr_tableaux(outer: tuple[int, ...], inner: tuple[int, ...], content: tuple[int, ...]) -> int:
    """Count skew SSYT of shape outer/inner with the given content and lattice reverse reading word."""
    cells = [(i, j) for i in range(len(outer)) for j in range(outer[i] - 1, inner[i] - 1, -1)]
    target = [c for c in content]
    k_max = len(target)
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (k_max + 1)

    def rec(idx):
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        hi = filling.get((i, j + 1), k_max)  # rows weakly increase left to right
        lo = filling.get((i - 1, j), 0) + 1 if (i - 1, j) in filling else 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= target[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            filling[(i, j)] = v
            counts[v] += 1
            total += rec(idx + 1)
            counts[v] -= 1
            del filling[(i, j)]
        return total

    return rec(0)


def _check_caps(lam: Signature, mu: Signature, n_cap: int, size_cap: int):
    if lam.N != mu.N:
        raise ValueError(f"signatures for different N: {lam.N} and {mu.N}")
    if lam.N > n_cap:
        raise ValueError(f"N={lam.N} exceeds the cap {n_cap}")
    a, _ = lam.twisted()
    b, _ = mu.twisted()
    if sum(a) + sum(b) > size_cap:
        raise ValueError(f"|λ|+|μ| after twisting exceeds the cap {size_cap}")


def lr_coefficients(lam: Signature, mu: Signature, n_cap: int = DEFAULT_N_CAP,
                    size_cap: int = DEFAULT_SIZE_CAP) -> dict[Signature, int]:
    """Multiplicities of V_ν in V_λ ⊗ V_μ."""
    _check_caps(lam, mu, n_cap, size_cap)
    a, ta = lam.twisted()
    b, tb = mu.twisted()
    n = lam.N
    content = tuple(x for x in b if x)
    out = {}
    for nu in _partitions_containing(sum(a) + sum(b), a, n):
        c = _lr_tableaux(nu, a, content) if content else int(nu == a)
        if c:
            out[Signature(tuple(x + ta + tb for x in nu))] = c
    total = sum(c * weyl_dim(nu) for nu, c in out.items())
    if total != weyl_dim(lam) * weyl_dim(mu):
        raise RuntimeError(f"dimension count failed for {lam} ⊗ {mu}")
    return out


def pieri_coefficients(lam: Signature, m: int) -> dict[Signature, int]:
    """V_λ ⊗ Sym^m: add a horizontal strip of m boxes (independent of the LR code)."""
    a, t = lam.twisted()
    n = lam.N
    out = {}
    for nu in _partitions_containing(sum(a) + m, a, n):
        if all(a[i] >= nu[i + 1] for i in range(n - 1)):
            out[Signature(tuple(x + t for x in nu))] = 1
    return out


def isotypic_measure(lam: Signature, mu: Signature, n_cap: int = DEFAULT_N_CAP,
                     size_cap: int = DEFAULT_SIZE_CAP) -> IsotypicMeasure:
    """P(ν) = mult(ν)·dim ν / (dim λ · dim μ)."""
    mult = lr_coefficients(lam, mu, n_cap, size_cap)
    denom = weyl_dim(lam) * weyl_dim(mu)
    return IsotypicMeasure({nu: Fraction(c * weyl_dim(nu), denom) for nu, c in mult.items()})


# -- BPP observables ---------------------------------------------------------------------

def signature_to_config(lam: Signature, hbar) -> ParticleConfig:
    """c_i = ħ(λ_i + N − i)."""
    hbar = Fraction(hbar)
    n = lam.N
    return ParticleConfig(tuple(hbar * (x + n - i) for i, x in enumerate(lam.lam, 1)), hbar)


def bpp_power_sum(cfg: ParticleConfig, k: int, normalized: bool = False) -> Fraction:
    """℘_k(c) = Σ_i c_i^k Π_{j≠i} (1 − ħ/(c_i − c_j)); divided by N when normalized."""
    total = Fraction(0)
    for i, ci in enumerate(cfg.c):
        term = ci**k
        for j, cj in enumerate(cfg.c):
            if j != i:
                term *= 1 - cfg.hbar / (ci - cj)
        total += term
    return total / cfg.N if normalized else total


def irrep_matrices(lam: Signature, degree_cap: int = DEFAULT_DEGREE_CAP,
                   rank_cap: int = DEFAULT_RANK_CAP) -> IrrepMatrices:
    rep = build_irrep(lam.lam, degree_cap, rank_cap)
    if rep.dim != weyl_dim(lam):
        raise RuntimeError(f"irrep {lam} has dimension {rep.dim}, expected {weyl_dim(lam)}")
    return rep


def _is_scalar(mat: np.ndarray, value: Fraction) -> bool:
    m = mat.shape[0]
    return all(mat[x, y] == (value if x == y else 0) for x in range(m) for y in range(m))


def perelomov_popov_check(lam: Signature, k: int, hbar) -> bool:
    """Tr Z^k with Z_ij = ħρ(e_ij) is the scalar ℘_k(c)·I."""
    hbar = Fraction(hbar)
    rep = irrep_matrices(lam)
    z = {key: mat * hbar for key, mat in rep.matrices.items()}
    trace = operator_matrix_power_trace(z, lam.N, k)
    return _is_scalar(trace, bpp_power_sum(signature_to_config(lam, hbar), k))


def biane_identity_check(lam: Signature, mu: Signature, k_list: Sequence[int], hbar) -> bool:
    """
    ⟨℘̄_k1 ⋯ ℘̄_kr⟩ over the isotypic measure equals E[tr C^k1 ⋯ tr C^kr].

    C = A + B acts on V_λ ⊗ V_μ with A_ij = ħρ(e_ij) ⊗ I and B_ij = I ⊗ ħσ(e_ij);
    E is the normalized trace on V_λ ⊗ V_μ and tr = Tr/N on matrix indices.
    """
    hbar = Fraction(hbar)
    n = lam.N
    measure = isotypic_measure(lam, mu)

    def observable(nu):
        cfg = signature_to_config(nu, hbar)
        out = Fraction(1)
        for k in k_list:
            out *= bpp_power_sum(cfg, k, normalized=True)
        return out

    lhs = measure.expectation(observable)

    rv, rw = irrep_matrices(lam), irrep_matrices(mu)
    iv = np.identity(rv.dim, dtype=object) * Fraction(1)
    iw = np.identity(rw.dim, dtype=object) * Fraction(1)
    c = {key: hbar * (np.kron(rv.matrices[key], iw) + np.kron(iv, rw.matrices[key])) for key in rv.matrices}
    product = np.identity(rv.dim * rw.dim, dtype=object) * Fraction(1)
    for k in k_list:
        product = product.dot(operator_matrix_power_trace(c, n, k) * Fraction(1, n))
    rhs = sum((product[x, x] for x in range(product.shape[0])), Fraction(0)) / (rv.dim * rw.dim)
    return lhs == rhs


def bpp_mixed_moment(lam: Signature, mu: Signature, p: Sequence[int], q: Sequence[int], hbar) -> Fraction:
    """E tr(A^p1 B^q1 ⋯ A^pd B^qd) computed directly on V_λ ⊗ V_μ."""
    hbar = Fraction(hbar)
    n = lam.N
    rv, rw = irrep_matrices(lam), irrep_matrices(mu)
    m = rv.dim * rw.dim
    iv = np.identity(rv.dim, dtype=object) * Fraction(1)
    iw = np.identity(rw.dim, dtype=object) * Fraction(1)

    def big(blocks):
        out = np.empty((n * m, n * m), dtype=object)
        for (i, j), block in blocks.items():
            out[(i - 1) * m:i * m, (j - 1) * m:j * m] = block
        return out

    a = big({key: hbar * np.kron(mat, iw) for key, mat in rv.matrices.items()})
    b = big({key: hbar * np.kron(iv, mat) for key, mat in rw.matrices.items()})
    word = np.identity(n * m, dtype=object) * Fraction(1)
    for x, y in zip(p, q):
        for _ in range(x):
            word = word.dot(a)
        for _ in range(y):
            word = word.dot(b)
    total = sum((word[x, x] for x in range(n * m)), Fraction(0))
    return total / (n * m)


# -- sampling and the law of large numbers ----------------------------------------------

def sample(measure: IsotypicMeasure, seed: int, count: int) -> list[Signature]:
    """Inverse-CDF sampling over the deterministic support order."""
    support = measure.support()
    cdf, acc = [], Fraction(0)
    for s in support:
        acc += measure.probabilities[s]
        cdf.append(float(acc))
    cdf[-1] = 1.0
    rng = random.Random(seed)
    return [support[min(bisect.bisect_right(cdf, rng.random()), len(support) - 1)] for _ in range(count)]


@dataclass(frozen=True)
class LLNRow:
    N: int
    hbar: Fraction
    mean: Fraction
    variance: Fraction


def lln_experiment(family: Iterable[tuple[Signature, Signature, object]], k: int) -> list[LLNRow]:
    """Exact mean and variance of ℘̄_k under each isotypic measure in the family."""
    rows = []
    for lam, mu, hbar in family:
        hbar = Fraction(hbar)
        measure = isotypic_measure(lam, mu)
        values = {nu: bpp_power_sum(signature_to_config(nu, hbar), k, normalized=True) for nu in measure.probabilities}
        mean = measure.expectation(lambda nu: values[nu])
        second = measure.expectation(lambda nu: values[nu] ** 2)
        rows.append(LLNRow(lam.N, hbar, mean, second - mean**2))
    return rows
