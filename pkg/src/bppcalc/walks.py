"""
Monotone walks on the transposition Cayley graph of S_d.

An edge (s t) with s < t carries the label t. A walk from π₁ multiplies on
the right, π₁·(s₁ t₁)⋯(s_r t_r), and is monotone when t₁ ≤ ⋯ ≤ t_r.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NewType

from .permutations import Permutation, compose, word_norm

__all__ = [
    "WalkCount", "DEFAULT_STEP_CAP", "DEFAULT_ENUMERATION_CAP",
    "count_monotone_walks", "count_monotone_genus",
    "enumerate_monotone_walks", "enumerate_monotone_geodesics",
]

WalkCount = NewType("WalkCount", int)

DEFAULT_STEP_CAP = 20
DEFAULT_ENUMERATION_CAP = 10**6


def _norm(images: tuple[int, ...]) -> int:
    seen = bytearray(len(images) + 1)
    cycles = 0
    for s in range(1, len(images) + 1):
        if not seen[s]:
            cycles += 1
            i = s
            while not seen[i]:
                seen[i] = 1
                i = images[i - 1]
    return len(images) - cycles


def _swap(images: tuple[int, ...], s: int, t: int) -> tuple[int, ...]:
    # right multiplication by (s t) swaps the entries at positions s and t
    out = list(images)
    out[s - 1], out[t - 1] = out[t - 1], out[s - 1]
    return tuple(out)


@lru_cache(maxsize=None)
def _count(target: tuple[int, ...], max_label: int, steps: int) -> int:
    """Walks from id to ``target`` with all labels ≤ ``max_label``."""
    dist = _norm(target)
    if dist > steps or (steps - dist) % 2:
        return 0
    # points above max_label can never be touched
    for i in range(max_label + 1, len(target) + 1):
        if target[i - 1] != i:
            return 0
    if steps == 0:
        return 1
    total = 0
    # peel off the last (largest-label) step
    for t in range(2, max_label + 1):
        for s in range(1, t):
            total += _count(_swap(target, s, t), t, steps - 1)
    return total


def _relative(p1: Permutation, p2: Permutation) -> Permutation:
    if p1.d != p2.d:
        raise ValueError(f"size mismatch: S_{p1.d} vs S_{p2.d}")
    return compose(p1.inverse(), p2)


def count_monotone_walks(p1: Permutation, p2: Permutation, steps: int,
                         cap: int = DEFAULT_STEP_CAP) -> WalkCount:
    """Number of monotone walks of exactly ``steps`` edges from ``p1`` to ``p2``."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if steps > cap:
        raise ValueError(f"steps={steps} exceeds the cap {cap}")
    sigma = _relative(p1, p2)
    return WalkCount(_count(sigma.images, sigma.d, steps))


def count_monotone_genus(p1: Permutation, p2: Permutation, g: int,
                         cap: int = DEFAULT_STEP_CAP) -> WalkCount:
    """Monotone walks of length |p1⁻¹p2| + 2g."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return count_monotone_walks(p1, p2, word_norm(_relative(p1, p2)) + 2 * g, cap)


def enumerate_monotone_walks(p1: Permutation, p2: Permutation, steps: int,
                             cap: int = DEFAULT_ENUMERATION_CAP) -> list[tuple[tuple[int, int], ...]]:
    """Explicit list of monotone walks, each a tuple of transpositions (s, t) with s < t."""
    sigma = _relative(p1, p2)
    total = _count(sigma.images, sigma.d, steps)
    if total > cap:
        raise ValueError(f"{total} walks exceed the enumeration cap {cap}")
    out: list[tuple[tuple[int, int], ...]] = []

    def rec(target, max_label, left, suffix):
        if left == 0:
            out.append(tuple(reversed(suffix)))
            return
        for t in range(2, max_label + 1):
            for s in range(1, t):
                nxt = _swap(target, s, t)
                if _count(nxt, t, left - 1):
                    suffix.append((s, t))
                    rec(nxt, t, left - 1, suffix)
                    suffix.pop()

    if total:
        rec(sigma.images, sigma.d, steps, [])
    return sorted(out)


def enumerate_monotone_geodesics(p1: Permutation, p2: Permutation,
                                 cap: int = DEFAULT_ENUMERATION_CAP) -> list[tuple[tuple[int, int], ...]]:
    """Monotone walks of minimal length |p1⁻¹p2|."""
    return enumerate_monotone_walks(p1, p2, word_norm(_relative(p1, p2)), cap)
