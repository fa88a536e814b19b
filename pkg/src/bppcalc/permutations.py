"""
Symmetric-group arithmetic on [1..d] in one-line notation.

Products compose right to left, ``(a * b)(i) == a(b(i))``, and cycles are a
presentation format only.

>>> p = Permutation.from_cycles("(1 2 3)(4 5)")
>>> p.images, p.cyc, p.aex
((2, 3, 1, 5, 4), 2, 2)
>>> str(Permutation.from_cycles("(1 2 3)") * Permutation.from_cycles("(1 2)"))
'(1 3)'
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation", "ExponentFunction",
    "compose", "word_norm", "cyc", "aex", "defect", "genus",
    "all_permutations", "is_canonical", "is_nice", "coxeter_conjugate",
    "flatten", "contract_zero_exponents", "canonical_reduction_path",
    "parse_permutation",
]


def _cycles_of(images: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    seen = [False] * (len(images) + 1)
    out = []
    for start in range(1, len(images) + 1):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = images[i - 1]
        out.append(tuple(cycle))
    return tuple(out)


@dataclass(frozen=True)
class Permutation:
    """A permutation of [1..d]; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    cyc: int = field(init=False, repr=False, compare=False)
    aex: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        d = len(images)
        if d == 0 or sorted(images) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of [1..{d}]: {self.images!r}")
        cycles = _cycles_of(images)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "cycles", cycles)
        object.__setattr__(self, "cyc", len(cycles))
        object.__setattr__(self, "aex", sum(1 for i, x in enumerate(images, 1) if x <= i))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def full_cycle(cls, d: int) -> Permutation:
        """The forward cycle (1 2 ... d)."""
        return cls(tuple(range(2, d + 1)) + (1,))

    @classmethod
    def transposition(cls, s: int, t: int, d: int) -> Permutation:
        images = list(range(1, d + 1))
        images[s - 1], images[t - 1] = t, s
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, spec: str | Iterable[Iterable[int]], d: int | None = None) -> Permutation:
        """Build from cycle notation, e.g. ``"(1 3 2)"`` or ``[[1, 3, 2]]``."""
        if isinstance(spec, str):
            groups = re.findall(r"\(([^)]*)\)", spec)
            if not groups and spec.strip():
                raise ValueError(f"bad cycle notation: {spec!r}")
            cycles = [[int(x) for x in re.split(r"[\s,]+", g.strip()) if x] for g in groups]
        else:
            cycles = [list(c) for c in spec]
        points = [x for c in cycles for x in c]
        if len(points) != len(set(points)):
            raise ValueError(f"cycles are not disjoint: {spec!r}")
        n = max(points, default=1) if d is None else d
        images = list(range(1, n + 1))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside [1..{n}]")
                images[a - 1] = b
        return cls(tuple(images))

    # -- group structure ------------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.d
        for i, x in enumerate(self.images, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    @property
    def norm(self) -> int:
        return self.d - self.cyc

    @property
    def defect(self) -> int:
        return self.aex - self.cyc

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in weakly decreasing order."""
        return tuple(sorted((len(c) for c in self.cycles), reverse=True))

    def is_identity(self) -> bool:
        return self.cyc == self.d

    def __str__(self) -> str:
        parts = [c for c in self.cycles if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in parts)


@dataclass(frozen=True)
class ExponentFunction:
    """A function r: [d] -> N, stored as its list of values."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if any(v < 0 for v in values):
            raise ValueError(f"exponents must be nonnegative: {values}")
        object.__setattr__(self, "values", values)

    @property
    def d(self) -> int:
        return len(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    @classmethod
    def ones(cls, d: int) -> ExponentFunction:
        return cls((1,) * d)


def _exponents(r) -> tuple[int, ...]:
    return r.values if isinstance(r, ExponentFunction) else ExponentFunction(tuple(r)).values


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return a∘b, i.e. apply ``b`` first."""
    if a.d != b.d:
        raise ValueError(f"size mismatch: S_{a.d} vs S_{b.d}")
    return Permutation(tuple(a.images[x - 1] for x in b.images))


def word_norm(p: Permutation) -> int:
    """Distance from the identity in the transposition Cayley graph."""
    return p.d - p.cyc


def cyc(p: Permutation) -> int:
    return p.cyc


def aex(p: Permutation) -> int:
    """Number of weak antiexceedances, #{i : p(i) <= i}."""
    return p.aex


def defect(p: Permutation) -> int:
    return p.aex - p.cyc


def genus(*perms: Permutation) -> int:
    """Half the excess of the norms of a factorization over the norm of its product."""
    if not perms:
        raise ValueError("genus of an empty tuple")
    product = perms[0]
    for p in perms[1:]:
        product = compose(product, p)
    excess = sum(word_norm(p) for p in perms) - word_norm(product)
    if excess % 2 or excess < 0:
        # parity is a theorem; reaching this means a bug upstream
        raise RuntimeError(f"non-integral genus {excess}/2 for {[str(p) for p in perms]}")
    return excess // 2


def all_permutations(d: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, d + 1))]


def parse_permutation(text: str, d: int | None = None) -> Permutation:
    """Accept ``[2,3,1]`` (one-line) or ``(1 2 3)(4 5)`` (cycles)."""
    text = text.strip()
    if text.startswith("["):
        images = [int(x) for x in re.split(r"[\s,]+", text.strip("[]").strip()) if x]
        p = Permutation(tuple(images))
        if d is not None and p.d != d:
            raise ValueError(f"expected a permutation of size {d}, got {p.d}")
        return p
    return Permutation.from_cycles(text, d)


# -- canonical forms and Coxeter conjugation -----------------------------------

def is_canonical(p: Permutation) -> bool:
    """True for products (1..n1)(n1+1..n1+n2)... of forward cycles on consecutive blocks."""
    return _is_canonical_images(p.images)


def _is_canonical_images(images: Sequence[int]) -> bool:
    d = len(images)
    start = 1
    i = 1
    while i <= d:
        if images[i - 1] == i + 1:
            i += 1
            continue
        if images[i - 1] != start:
            return False
        start = i = i + 1
    return True


def is_nice(p: Permutation, j: int) -> bool:
    """Conjugation by (j j+1) is nice when p(j) != j+1."""
    if not 1 <= j < p.d:
        raise ValueError(f"no Coxeter transposition ({j} {j + 1}) in S_{p.d}")
    return p(j) != j + 1


def coxeter_conjugate(p: Permutation, j: int) -> Permutation:
    """Return τ p τ⁻¹ for τ = (j j+1)."""
    return Permutation(_conjugate_images(p.images, j))


def _conjugate_images(images: Sequence[int], j: int) -> tuple[int, ...]:
    def swap(x):
        return j + 1 if x == j else j if x == j + 1 else x

    return tuple(swap(images[swap(i) - 1]) for i in range(1, len(images) + 1))


def canonical_reduction_path(p: Permutation, rng: random.Random | None = None) -> list[int]:
    """
    A sequence of nice Coxeter conjugations taking ``p`` to a canonical permutation.

    Entry ``j`` of the returned list stands for conjugation by (j j+1). The
    deterministic path first bubble-sorts the cycles into consecutive blocks,
    then straightens each block by raising its ``spoil`` statistic. With
    ``rng`` a random run of nice moves is prepended; the end point is still
    canonical, and any such path is valid for the Biasimir reduction.
    """
    return _reduction_path(p.images, rng)


def _reduction_path(images: tuple[int, ...], rng: random.Random | None = None) -> list[int]:
    d = len(images)
    path: list[int] = []
    cur = images

    def step(j: int):
        nonlocal cur
        if cur[j - 1] == j + 1:
            raise RuntimeError(f"conjugation by ({j} {j + 1}) is not nice for {cur}")
        cur = _conjugate_images(cur, j)
        path.append(j)

    if rng is not None and d > 1:
        for _ in range(rng.randint(0, 2 * d)):
            moves = [j for j in range(1, d) if cur[j - 1] != j + 1]
            if not moves:
                break
            step(rng.choice(moves))

    # phase 1: cycle supports into consecutive intervals
    cid = [0] * (d + 1)
    for k, c in enumerate(_cycles_of(cur)):
        for x in c:
            cid[x] = k
    swapped = True
    while swapped:
        swapped = False
        for j in range(1, d):
            if cid[j] > cid[j + 1]:
                step(j)
                cid[j], cid[j + 1] = cid[j + 1], cid[j]
                swapped = True
                break

    # phase 2: straighten each block into a forward cycle
    s = 1
    while s <= d:
        e = s
        while e < d and cid[e + 1] == cid[s]:
            e += 1
        while True:
            m = next((i for i in range(s, e) if cur[i - 1] != i + 1), None)
            if m is None:
                break
            target = cur[m - 1]
            for j in range(target - 1, m, -1):
                step(j)
        s = e + 1
    assert _is_canonical_images(cur)
    return path


# -- exponent handling ---------------------------------------------------------

def flatten(p: Permutation, r) -> Permutation:
    """
    Replace each point i by r(i) ordered copies.

    The rightmost copy of i maps to the leftmost copy of p(i), every other
    copy maps to its right neighbour; copies are relabelled in order.
    """
    r = _exponents(r)
    if len(r) != p.d:
        raise ValueError(f"exponent function has length {len(r)}, expected {p.d}")
    if any(v == 0 for v in r):
        raise ValueError("zero exponent; contract it away before flattening")
    offset = [0] * (p.d + 1)
    for i in range(1, p.d):
        offset[i + 1] = offset[i] + r[i - 1]
    images = []
    for i in range(1, p.d + 1):
        base = offset[i]
        images.extend(base + k + 1 for k in range(1, r[i - 1]))
        images.append(offset[p(i)] + 1)
    return Permutation(tuple(images))


def contract_zero_exponents(p: Permutation, r) -> tuple[Permutation | None, tuple[int, ...], int]:
    """
    Remove points with exponent 0.

    A zero exponent contributes a Kronecker delta, so ``p`` is short-circuited
    through such points. Returns ``(p', r', z)`` where ``p'`` acts on the
    remaining points relabelled in order (``None`` if nothing remains), and
    ``z`` counts cycles made only of zero exponents (each contributes N).
    """
    r = _exponents(r)
    keep = [i for i in range(1, p.d + 1) if r[i - 1] > 0]
    z = sum(1 for c in p.cycles if all(r[i - 1] == 0 for i in c))
    if not keep:
        return None, (), z
    label = {x: k for k, x in enumerate(keep, 1)}
    images = []
    for i in keep:
        j = p(i)
        while r[j - 1] == 0:
            j = p(j)
        images.append(label[j])
    return Permutation(tuple(images)), tuple(r[i - 1] for i in keep), z
