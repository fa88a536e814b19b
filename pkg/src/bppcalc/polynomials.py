"""
Exact coefficient rings used throughout the package.

``RationalFunctionOfN`` is a reduced fraction of integer polynomials in the
formal symbol N (backed by sympy's sparse fraction field). ``SparsePoly`` is a
small commutative polynomial type over named indexed symbols such as ``C3``,
``a2``, ``hbar`` and ``N``; its coefficients may be ints, Fractions or
rational functions of N.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from sympy import ZZ
from sympy.polys.fields import FracElement, field

__all__ = [
    "RationalFunctionOfN", "SparsePoly", "Var", "Monomial",
    "N_FIELD", "N_RING", "N_VAR", "HBAR_VAR", "casimir", "moment_a", "moment_b", "var_name",
]

_FIELD, _N = field("N", ZZ)
N_FIELD = _FIELD
N_RING = _FIELD.ring


class RationalFunctionOfN:
    """Exact element of Q(N), always stored in lowest terms."""

    __slots__ = ("_f",)

    def __init__(self, value=0):
        if isinstance(value, RationalFunctionOfN):
            self._f = value._f
        elif isinstance(value, FracElement):
            self._f = value
        elif isinstance(value, Fraction):
            self._f = _FIELD(value.numerator) / _FIELD(value.denominator)
        elif isinstance(value, int):
            self._f = _FIELD(value)
        else:
            raise TypeError(f"cannot build a rational function from {type(value).__name__}")

    @classmethod
    def N(cls) -> RationalFunctionOfN:
        return cls(_N)

    @classmethod
    def from_coefficients(cls, numerator: Iterable[int], denominator: Iterable[int] = (1,)) -> RationalFunctionOfN:
        """Coefficient lists are in ascending powers of N."""
        num = sum((int(c) * _N**k for k, c in enumerate(numerator)), _FIELD(0))
        den = sum((int(c) * _N**k for k, c in enumerate(denominator)), _FIELD(0))
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return cls(num / den)

    # -- structure --------------------------------------------------------------

    @staticmethod
    def _ascending(p) -> tuple[int, ...]:
        dense = [int(c) for c in p.to_dense()]
        return tuple(reversed(dense)) if dense else (0,)

    @property
    def numerator(self) -> tuple[int, ...]:
        return self._ascending(self._f.numer)

    @property
    def denominator(self) -> tuple[int, ...]:
        return self._ascending(self._f.denom)

    @property
    def raw(self) -> FracElement:
        return self._f

    def order_at_infinity(self) -> int:
        """deg(numerator) − deg(denominator); the zero function gets −∞ as a large negative int."""
        if self._f == 0:
            return -(10**9)
        return self._f.numer.degree() - self._f.denom.degree()

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunctionOfN):
            return other._f
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return _FIELD(other.numerator) / _FIELD(other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else RationalFunctionOfN(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else RationalFunctionOfN(self._f - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else RationalFunctionOfN(o - self._f)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else RationalFunctionOfN(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunctionOfN(self._f / o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunctionOfN(_FIELD(o) / self._f)

    def __neg__(self):
        return RationalFunctionOfN(-self._f)

    def __pow__(self, k: int):
        return RationalFunctionOfN(self._f**k)

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._f == o

    def __hash__(self):
        return hash(self._f)

    def __bool__(self):
        return self._f != 0

    def __repr__(self):
        return f"RationalFunctionOfN({self._f})"

    def __str__(self):
        return str(self._f)

    # -- evaluation and asymptotics ------------------------------------------------

    def evaluate(self, n) -> Fraction:
        """Value at a numeric N (int or Fraction); poles raise ZeroDivisionError."""
        n = Fraction(n)

        def horner(coeffs):
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * n + c
            return acc

        den = horner(self.denominator)
        if den == 0:
            raise ZeroDivisionError(f"pole at N={n}")
        return horner(self.numerator) / den

    def laurent_at_infinity(self, count: int) -> tuple[int, list[Fraction]]:
        """
        Expand at N = ∞.

        Returns ``(top, c)`` with ``self = Σ_k c[k]·N^(top−k)`` for the first
        ``count`` coefficients.
        """
        num = list(reversed(self.numerator))  # descending
        den = list(reversed(self.denominator))
        top = (len(num) - 1) - (len(den) - 1)
        # power-series division in x = 1/N
        out: list[Fraction] = []
        rem = [Fraction(c) for c in num] + [Fraction(0)] * count
        for k in range(count):
            c = rem[k] / den[0] if k < len(rem) else Fraction(0)
            out.append(c)
            if c:
                for i, dc in enumerate(den):
                    if k + i < len(rem):
                        rem[k + i] -= c * dc
        return top, out

    def limit_at_infinity(self) -> Fraction:
        """Finite limit as N → ∞; raises ValueError if the function grows."""
        order = self.order_at_infinity()
        if order > 0:
            raise ValueError(f"{self} diverges as N → ∞")
        if order < 0:
            return Fraction(0)
        return Fraction(self.numerator[-1], self.denominator[-1])


# -- sparse multivariate polynomials ----------------------------------------------

Var = tuple[str, int]
Monomial = tuple[tuple[Var, int], ...]
Coeff = Union[int, Fraction, RationalFunctionOfN]

N_VAR: Var = ("N", 0)
HBAR_VAR: Var = ("hbar", 0)


def casimir(k: int) -> Var:
    return ("C", k)


def moment_a(k: int) -> Var:
    return ("a", k)


def moment_b(k: int) -> Var:
    return ("b", k)


def var_name(v: Var) -> str:
    name, idx = v
    return name if name in ("N", "hbar") else f"{name}{idx}"


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def _mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)


class SparsePoly:
    """
    Immutable sparse polynomial over commuting symbols.

    Terms live in a dict from sorted monomials to nonzero coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None):
        self.terms: dict[Monomial, Coeff] = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors -------------------------------------------------------------

    @classmethod
    def const(cls, c: Coeff) -> SparsePoly:
        return cls({(): c})

    @classmethod
    def var(cls, v: Var, power: int = 1) -> SparsePoly:
        return cls({((v, power),): 1}) if power else cls.const(1)

    @classmethod
    def monomial(cls, mono: Mapping[Var, int] | Monomial, coeff: Coeff = 1) -> SparsePoly:
        items = mono.items() if isinstance(mono, Mapping) else mono
        return cls({tuple(sorted((v, e) for v, e in items if e)): coeff})

    # -- arithmetic ---------------------------------------------------------------

    @staticmethod
    def _lift(other) -> SparsePoly | None:
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, (int, Fraction, RationalFunctionOfN)):
            return SparsePoly.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SparsePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunctionOfN)):
            return SparsePoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        out: dict[Monomial, Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunctionOfN)):
            return SparsePoly({m: other * c for m, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = SparsePoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).terms == {}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection ---------------------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def variables(self) -> set[Var]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, weight: Callable[[Var], int] = lambda v: 1) -> int:
        """Largest weighted total degree; −1 for the zero polynomial."""
        return max((sum(weight(v) * e for v, e in m) for m in self.terms), default=-1)

    def split_by(self, v: Var) -> dict[int, SparsePoly]:
        """Group terms by the power of ``v``; the values are ``v``-free."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            rest = tuple((w, k) for w, k in m if w != v)
            out.setdefault(e, {})[rest] = c
        return {e: SparsePoly(t) for e, t in sorted(out.items())}

    def coefficient_of(self, v: Var, power: int) -> SparsePoly:
        return self.split_by(v).get(power, SparsePoly())

    def map_coefficients(self, fn: Callable[[Coeff], Coeff]) -> SparsePoly:
        return SparsePoly({m: fn(c) for m, c in self.terms.items()})

    def substitute(self, mapping: Mapping[Var, object]) -> SparsePoly:
        """Replace symbols by polynomials or scalars; unmapped symbols are kept."""
        cache: dict[tuple[Var, int], SparsePoly] = {}
        out = SparsePoly()
        for m, c in self.terms.items():
            term = SparsePoly.const(c)
            kept = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        val = mapping[v]
                        cache[key] = (val if isinstance(val, SparsePoly) else SparsePoly.const(val)) ** e
                    term = term * cache[key]
                else:
                    kept.append((v, e))
            if kept:
                term = term * SparsePoly.monomial(tuple(kept))
            out = out + term
        return out

    def evaluate(self, values: Mapping[Var, object]):
        """Evaluate completely; every symbol must be supplied."""
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                if v not in values:
                    raise KeyError(f"no value for {var_name(v)}")
                t = t * values[v] ** e
            total = total + t
        return total

    # -- presentation -------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Coeff]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0])

    def to_json(self, coeff_fmt: Callable[[Coeff], object] | None = None) -> dict[str, object]:
        fmt = coeff_fmt or _default_coeff_json
        return {_mono_str(m): fmt(c) for m, c in self.sorted_terms()}

    def __repr__(self):
        return f"SparsePoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            cs = str(c)
            if not m:
                parts.append(cs)
            elif c == 1:
                parts.append(_mono_str(m))
            elif c == -1:
                parts.append("-" + _mono_str(m))
            else:
                parts.append(f"({cs})*{_mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")


def _default_coeff_json(c: Coeff) -> object:
    if isinstance(c, RationalFunctionOfN):
        return {"numerator": list(c.numerator), "denominator": list(c.denominator)}
    if isinstance(c, Fraction):
        return str(c)
    return int(c)
