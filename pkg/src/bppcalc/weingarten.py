"""
The unitary Weingarten function Wg_N on S_d × S_d.

Exact values come from inverting the Gram matrix G(σ, ρ) = N^cyc(σ⁻¹ρ) over
Q(N). Since Wg(π₁, π₂) only depends on the cycle type of π₁⁻¹π₂, the d!×d!
inverse collapses to one linear system per d with one unknown per partition
of d, solved by fraction-free elimination. The series route counts monotone
walks instead; the two routes share no code.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .permutations import Permutation, all_permutations, compose, word_norm
from .polynomials import N_FIELD, N_RING, RationalFunctionOfN
from .walks import count_monotone_genus

__all__ = [
    "DEFAULT_D_CAP", "wg_exact", "wg_class", "weingarten_table",
    "wg_series", "wg_evaluate", "partitions",
]

DEFAULT_D_CAP = 7

_R = N_RING
_RN = N_RING.gens[0]
_tables: dict[int, dict[tuple[int, ...], RationalFunctionOfN]] = {}
_lock = threading.Lock()


def partitions(d: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of d as weakly decreasing tuples, in reverse lexicographic order."""
    largest = d if largest is None else largest
    if d == 0:
        return [()]
    out = []
    for first in range(min(d, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(d - first, first))
    return out


def _class_representative(shape: tuple[int, ...]) -> Permutation:
    images = []
    start = 1
    for length in shape:
        images.extend(range(start + 1, start + length))
        images.append(start)
        start += length
    return Permutation(tuple(images))


def _bareiss_solve(matrix: list[list], rhs: list) -> list:
    """Solve a square system over Z[N] fraction-free; the answer lives in Q(N)."""
    n = len(matrix)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    prev = _R(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next(i for i in range(k + 1, n) if a[i][k] != 0)
            a[k], a[swap] = a[swap], a[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = num.div(prev)
                assert r == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][k] = _R(0)
        prev = a[k][k]
    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = N_FIELD(a[i][n])
        for j in range(i + 1, n):
            acc = acc - N_FIELD(a[i][j]) * x[j]
        x[i] = acc / N_FIELD(a[i][i])
    return x


def _build_table(d: int) -> dict[tuple[int, ...], RationalFunctionOfN]:
    shapes = partitions(d)
    index = {s: k for k, s in enumerate(shapes)}
    perms = all_permutations(d)
    # M[ρ][λ] = Σ_{σ : type(σ⁻¹ρ) = λ} N^cyc(σ), one row per class representative ρ
    matrix = []
    for shape in shapes:
        rho = _class_representative(shape)
        counts = [[0] * (d + 1) for _ in shapes]
        for sigma in perms:
            lam = compose(sigma.inverse(), rho).cycle_type()
            counts[index[lam]][sigma.cyc] += 1
        matrix.append([sum((c * _RN**e for e, c in enumerate(row) if c), _R(0)) for row in counts])
    rhs = [_R(1) if s == (1,) * d else _R(0) for s in shapes]
    solution = _bareiss_solve(matrix, rhs)
    return {s: RationalFunctionOfN(w) for s, w in zip(shapes, solution)}


def weingarten_table(d: int, cap: int = DEFAULT_D_CAP) -> dict[tuple[int, ...], RationalFunctionOfN]:
    """Wg values for S_d keyed by cycle type of π₁⁻¹π₂; cached per d."""
    if d < 1:
        raise ValueError("d must be positive")
    if d > cap:
        raise ValueError(f"d={d} exceeds the factorial cap {cap}")
    table = _tables.get(d)
    if table is None:
        with _lock:
            table = _tables.get(d)
            if table is None:
                table = _tables[d] = _build_table(d)
    return table


def wg_class(shape, cap: int = DEFAULT_D_CAP) -> RationalFunctionOfN:
    shape = tuple(sorted((int(x) for x in shape), reverse=True))
    return weingarten_table(sum(shape), cap)[shape]


def wg_exact(p1: Permutation, p2: Permutation, cap: int = DEFAULT_D_CAP) -> RationalFunctionOfN:
    """Wg_N(p1, p2) as an exact rational function of N."""
    if p1.d != p2.d:
        raise ValueError(f"size mismatch: S_{p1.d} vs S_{p2.d}")
    return weingarten_table(p1.d, cap)[compose(p1.inverse(), p2).cycle_type()]


def wg_series(p1: Permutation, p2: Permutation, order: int) -> list[int]:
    """
    Coefficients of N^−(d+|p1⁻¹p2|+2g) for g = 0..order.

    Each is (−1)^|p1⁻¹p2| times the number of monotone walks of genus g.
    """
    sign = -1 if word_norm(compose(p1.inverse(), p2)) % 2 else 1
    return [sign * count_monotone_genus(p1, p2, g) for g in range(order + 1)]


def wg_evaluate(p1: Permutation, p2: Permutation, n) -> Fraction:
    """Numeric Wg at an integer N ≥ d; smaller N hits the known poles."""
    if Fraction(n) < p1.d:
        raise ValueError(f"Wg is only evaluated for N ≥ d = {p1.d}, got N = {n}")
    return wg_exact(p1, p2).evaluate(n)
