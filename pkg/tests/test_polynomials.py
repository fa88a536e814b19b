from fractions import Fraction

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given

from bppcalc.polynomials import (
    HBAR_VAR, N_VAR, RationalFunctionOfN, SparsePoly, casimir, moment_a, var_name,
)

Nsym = sympy.Symbol("N")
R = RationalFunctionOfN


def to_sympy(f: RationalFunctionOfN):
    num = sum(c * Nsym**k for k, c in enumerate(f.numerator))
    den = sum(c * Nsym**k for k, c in enumerate(f.denominator))
    return num / den


coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


@st.composite
def rational_functions(draw):
    num = draw(coeff_lists)
    den = draw(coeff_lists.filter(lambda c: any(c)))
    return R.from_coefficients(num, den)


@given(rational_functions(), rational_functions())
def test_field_ops_match_sympy(f, g):
    assert sympy.cancel(to_sympy(f + g) - (to_sympy(f) + to_sympy(g))) == 0
    assert sympy.cancel(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    if g != 0:
        assert sympy.cancel(to_sympy(f / g) - to_sympy(f) / to_sympy(g)) == 0


@given(rational_functions(), st.integers(7, 40))
def test_evaluate_matches_sympy(f, n):
    try:
        value = f.evaluate(n)
    except ZeroDivisionError:
        return
    expected = sympy.Rational(to_sympy(f).subs(Nsym, n))
    assert value == Fraction(int(expected.p), int(expected.q))


def test_lowest_terms_and_limits():
    f = R.from_coefficients([-1, 0, 1], [-1, 1])  # (N²−1)/(N−1)
    assert f.numerator == (1, 1) and f.denominator == (1,)
    g = R.from_coefficients([1], [0, 0, 2])
    assert g.order_at_infinity() == -2
    assert g.limit_at_infinity() == 0
    assert R.from_coefficients([1, 3], [5, 2]).limit_at_infinity() == Fraction(3, 2)
    with pytest.raises(ValueError):
        f.limit_at_infinity()
    with pytest.raises(ZeroDivisionError):
        R.from_coefficients([1], [0])


def test_laurent_of_geometric_series():
    top, coeffs = (1 / (R.N() ** 2 - 1)).laurent_at_infinity(6)
    assert top == -2
    assert coeffs == [1, 0, 1, 0, 1, 0]


@given(rational_functions(), st.integers(2, 6))
def test_laurent_reconstructs_value(f, count):
    top, coeffs = f.laurent_at_infinity(count)
    n = 10**6
    approx = sum(Fraction(c) * Fraction(n) ** (top - k) for k, c in enumerate(coeffs))
    exact = f.evaluate(n)
    # the truncation error is of the order of the first dropped term
    assert abs(approx - exact) * Fraction(n) ** (count - top) < 10**6


def test_sparse_poly_basics():
    c1, c2 = SparsePoly.var(casimir(1)), SparsePoly.var(casimir(2))
    n = SparsePoly.var(N_VAR)
    p = c1 * c2 - n * c1 * c2 + 3
    assert p.coefficient_of(N_VAR, 1) == -(c1 * c2)
    assert (p - p).is_zero()
    assert p.degree(lambda v: v[1] if v[0] == "C" else 0) == 3
    assert str(c1 ** 2 * c2) == "C1^2*C2"
    assert p.substitute({N_VAR: 1}) == SparsePoly.const(3)
    assert p.evaluate({casimir(1): 2, casimir(2): 5, N_VAR: Fraction(1, 2)}) == Fraction(8)
    assert var_name(moment_a(3)) == "a3" and var_name(HBAR_VAR) == "hbar"
    assert SparsePoly.var(moment_a(1)).to_json() == {"a1": 1}


monomial_vars = st.sampled_from([casimir(1), casimir(2), N_VAR, HBAR_VAR])


@st.composite
def sparse_polys(draw):
    out = SparsePoly.const(draw(st.integers(-3, 3)))
    for _ in range(draw(st.integers(0, 3))):
        mono = {draw(monomial_vars): draw(st.integers(1, 2))}
        out = out + SparsePoly.monomial(mono, draw(st.integers(-3, 3)))
    return out


@given(sparse_polys(), sparse_polys(), sparse_polys())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a - a).is_zero()


@given(sparse_polys(), sparse_polys(), st.integers(-4, 4), st.integers(-4, 4))
def test_evaluation_is_a_homomorphism(a, b, x, y):
    point = {casimir(1): x, casimir(2): y, N_VAR: 3, HBAR_VAR: Fraction(1, 2)}
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


@given(sparse_polys())
def test_split_by_hbar_recombines(a):
    h = SparsePoly.var(HBAR_VAR)
    total = SparsePoly()
    for power, part in a.split_by(HBAR_VAR).items():
        assert HBAR_VAR not in part.variables()
        total = total + part * h ** power
    assert total == a
