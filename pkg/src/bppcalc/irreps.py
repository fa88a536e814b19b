"""
Explicit matrices for irreducible polynomial representations of gl_N.

The irrep with highest weight λ (weakly decreasing, possibly negative) is
realized as the image of the Young symmetrizer of λ − λ_N inside the tensor
power of C^N, twisted by det^λ_N. e_ij acts on tensors as a derivation, and
the twist shifts ρ(e_ii) by λ_N. The basis is obtained by exact row
reduction inside each weight space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "DEFAULT_DEGREE_CAP", "DEFAULT_RANK_CAP", "IrrepMatrices",
    "build_irrep", "operator_matrix_power_trace", "check_commutation_relations",
]

DEFAULT_DEGREE_CAP = 6
DEFAULT_RANK_CAP = 3

Tensor = dict[tuple[int, ...], Fraction]


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        i = s
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _group(blocks: list[list[int]], m: int, signed: bool) -> list[tuple[tuple[int, ...], int]]:
    """All permutations of positions [0..m) preserving each block, with signs if asked."""
    out = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = list(range(m))
        for block, image in zip(blocks, choice):
            for x, y in zip(block, image):
                perm[x] = y
        perm = tuple(perm)
        out.append((perm, _perm_sign(perm) if signed else 1))
    return out


def _act(group, vec: Tensor) -> Tensor:
    # (σ·v)[positions] : the tensor factor at position x moves to position σ(x)
    out: dict = {}
    for perm, sign in group:
        for word, c in vec.items():
            moved = [0] * len(word)
            for x, letter in enumerate(word):
                moved[perm[x]] = letter
            key = tuple(moved)
            out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def _rref(vectors: list[Tensor]) -> list[Tensor]:
    """Row-reduce sparse vectors; each output row has a distinct pivot with value 1, zero in the others."""
    basis: list[tuple[tuple, Tensor]] = []
    for v in vectors:
        v = dict(v)
        for pivot, row in basis:
            c = v.get(pivot, 0)
            if c:
                for k, x in row.items():
                    v[k] = v.get(k, 0) - c * x
                v = {k: x for k, x in v.items() if x}
        if not v:
            continue
        pivot = min(v)
        scale = v[pivot]
        v = {k: Fraction(x) / scale for k, x in v.items()}
        new_basis = []
        for p, row in basis:
            c = row.get(pivot, 0)
            if c:
                row = dict(row)
                for k, x in v.items():
                    row[k] = row.get(k, 0) - c * x
                row = {k: x for k, x in row.items() if x}
            new_basis.append((p, row))
        basis = new_basis + [(pivot, v)]
    basis.sort(key=lambda pr: pr[0])
    return [row for _, row in basis]


@dataclass(frozen=True)
class IrrepMatrices:
    """ρ(e_ij) as exact m×m matrices; ``matrices[(i, j)]`` is a numpy object array of Fractions."""

    highest_weight: tuple[int, ...]
    dim: int
    matrices: dict[tuple[int, int], np.ndarray]

    @property
    def n(self) -> int:
        return len(self.highest_weight)

    def rho(self, i: int, j: int) -> np.ndarray:
        return self.matrices[(i, j)]


def _zeros(m: int) -> np.ndarray:
    out = np.empty((m, m), dtype=object)
    out.fill(Fraction(0))
    return out


def _identity(m: int) -> np.ndarray:
    out = _zeros(m)
    for k in range(m):
        out[k, k] = Fraction(1)
    return out


@lru_cache(maxsize=None)
def build_irrep(highest_weight: tuple[int, ...], degree_cap: int = DEFAULT_DEGREE_CAP,
                rank_cap: int = DEFAULT_RANK_CAP) -> IrrepMatrices:
    lam = tuple(int(x) for x in highest_weight)
    n = len(lam)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"highest weight {lam} is not weakly decreasing")
    if n > rank_cap:
        raise ValueError(f"N={n} exceeds the rank cap {rank_cap}")
    twist = lam[-1]
    shape = [x - twist for x in lam]
    m = sum(shape)
    if m > degree_cap:
        raise ValueError(f"tensor degree {m} exceeds the cap {degree_cap}")

    # Young diagram cells, filled row by row with positions 0..m-1
    rows, pos = [], 0
    for length in shape:
        if length:
            rows.append(list(range(pos, pos + length)))
            pos += length
    cols = [[row[c] for row in rows if c < len(row)] for c in range(shape[0] if m else 0)]
    row_group = _group(rows, m, signed=False)
    col_group = _group(cols, m, signed=True)

    # image of c = (row symmetrizer)(column antisymmetrizer), weight space by weight space
    weights: dict[tuple[int, ...], list[Tensor]] = {}
    for word in itertools.product(range(1, n + 1), repeat=m):
        content = tuple(word.count(i) for i in range(1, n + 1))
        weights.setdefault(content, []).append({word: Fraction(1)})
    basis: list[Tensor] = []
    pivots: dict[tuple[int, ...], list[tuple[int, tuple]]] = {}
    for content in sorted(weights, reverse=True):
        images = [_act(row_group, _act(col_group, v)) for v in weights[content]]
        for row in _rref([v for v in images if v]):
            pivots.setdefault(content, []).append((len(basis), min(row)))
            basis.append(row)
    dim = len(basis)

    def coords(vec: Tensor) -> dict[int, Fraction]:
        out = {}
        for word in vec:
            content = tuple(word.count(i) for i in range(1, n + 1))
            for idx, piv in pivots.get(content, []):
                c = vec.get(piv, 0)
                if c:
                    out[idx] = c
            break  # every word of a homogeneous vector has the same content
        return out

    matrices = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            mat = _zeros(dim)
            for col, vec in enumerate(basis):
                img: dict = {}
                for word, c in vec.items():
                    for x, letter in enumerate(word):
                        if letter == j:
                            new = word[:x] + (i,) + word[x + 1:]
                            img[new] = img.get(new, 0) + c
                img = {k: v for k, v in img.items() if v}
                if img:
                    for row, c in coords(img).items():
                        mat[row, col] = Fraction(c)
            if i == j and twist:
                mat = mat + _identity(dim) * twist
            matrices[(i, j)] = mat
    return IrrepMatrices(lam, dim, matrices)


def check_commutation_relations(rep: IrrepMatrices) -> bool:
    """[ρ(e_ij), ρ(e_kl)] = δ_jk ρ(e_il) − δ_li ρ(e_kj) for all N⁴ index choices."""
    n = rep.n
    zero = _zeros(rep.dim)
    for i, j, k, l in itertools.product(range(1, n + 1), repeat=4):
        lhs = rep.rho(i, j).dot(rep.rho(k, l)) - rep.rho(k, l).dot(rep.rho(i, j))
        rhs = zero.copy()
        if j == k:
            rhs = rhs + rep.rho(i, l)
        if l == i:
            rhs = rhs - rep.rho(k, j)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def operator_matrix_power_trace(blocks: dict[tuple[int, int], np.ndarray], n: int, k: int) -> np.ndarray:
    """
    Σ_i (X^k)_ii for an n×n matrix X whose entries are operators.

    Entry products keep their order, so this is the block-matrix power.
    """
    m = blocks[(1, 1)].shape[0]
    big = np.empty((n * m, n * m), dtype=object)
    for (i, j), block in blocks.items():
        big[(i - 1) * m:i * m, (j - 1) * m:j * m] = block
    power = np.empty_like(big)
    power.fill(Fraction(0))
    for x in range(n * m):
        power[x, x] = Fraction(1)
    for _ in range(k):
        power = power.dot(big)
    out = _zeros(m)
    for i in range(n):
        out = out + power[i * m:(i + 1) * m, i * m:(i + 1) * m]
    return out
