import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mckay.exact import (
    ArithmeticError_,
    CyclotomicNumber,
    MotiveExpr,
    MultiPoly,
    cyclo_dft_multiplicities,
    cyclotomic_polynomial,
    euler_phi,
    lefschetz_series,
    motive_eval,
    motive_eval_at_one,
    motive_to_text,
    poly_substitute,
)

CONDUCTORS = [3, 4, 5, 7, 8, 12]


def numeric(x: CyclotomicNumber) -> complex:
    w = cmath.exp(2j * cmath.pi / x.m)
    return sum(float(c) * w**k for k, c in enumerate(x.coefficients))


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-7 * (1 + abs(a) + abs(b))


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def field_elements(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(rationals, min_size=euler_phi(m), max_size=euler_phi(m)))
    return CyclotomicNumber(m, coeffs)


@st.composite
def triples(draw):
    m = draw(st.sampled_from(CONDUCTORS))
    return tuple(draw(field_elements(m)) for _ in range(3))


# --- cyclotomic field --------------------------------------------------------


def test_zeta_has_order_m():
    for m in CONDUCTORS + [1, 2, 9, 60]:
        z = CyclotomicNumber.zeta(m)
        assert z**m == 1
        if m > 1:
            assert all(z**k != 1 for k in range(1, m))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_polynomial(7) == (1,) * 7
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)


def test_sum_of_primitive_roots_is_mobius():
    # sum of primitive m-th roots of unity = mu(m)
    mu = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1, 8: 0, 12: 0, 30: -1}
    from math import gcd

    for m, want in mu.items():
        s = sum((CyclotomicNumber.zeta(m, k) for k in range(m) if gcd(k, m) == 1), CyclotomicNumber.from_rational(m, 0))
        assert s == want


@settings(max_examples=1000, deadline=None)
@given(triples())
def test_field_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=300, deadline=None)
@given(triples())
def test_arithmetic_matches_complex_numbers(t):
    a, b, c = t
    assert close(numeric(a * b + c), numeric(a) * numeric(b) + numeric(c))
    assert close(numeric(a.conjugate()), numeric(a).conjugate())
    if not a.is_zero():
        assert close(numeric(b / a), numeric(b) / numeric(a))


@settings(max_examples=200, deadline=None)
@given(field_elements(), st.sampled_from([2, 3, 5]))
def test_embedding_is_a_ring_map(a, k):
    big = a.m * k
    z = CyclotomicNumber.zeta(a.m)
    assert close(numeric(a.embed(big)), numeric(a))
    assert (a * z).embed(big) == a.embed(big) * z.embed(big)


def test_rational_comparisons():
    x = CyclotomicNumber.from_rational(5, Fraction(3, 4))
    assert x == Fraction(3, 4)
    assert x.is_rational() and x.to_rational() == Fraction(3, 4)
    assert CyclotomicNumber.zeta(5) != 1
    assert not CyclotomicNumber.zeta(5).is_rational()
    with pytest.raises(ValueError):
        CyclotomicNumber.zeta(5) + CyclotomicNumber.zeta(7)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber.from_rational(7, 0).inverse()


def test_hash_consistent_with_equality():
    a = CyclotomicNumber.zeta(4) ** 2
    assert a == -1
    assert hash(a) == hash(CyclotomicNumber.from_rational(4, -1))


# --- eigenvalue multiplicities ----------------------------------------------


def test_dft_multiplicities_binary_dihedral_beta():
    # beta = [[0,1],[-1,0]] has traces 2, 0, -2, 0 on its powers: eigenvalues i, -i
    tr = [CyclotomicNumber.from_rational(4, v) for v in (2, 0, -2, 0)]
    assert cyclo_dft_multiplicities(tr, 4) == [0, 1, 0, 1]


def test_dft_multiplicities_rejects_non_characters():
    tr = [CyclotomicNumber.from_rational(2, v) for v in (2, 1)]
    with pytest.raises(ArithmeticError_):
        cyclo_dft_multiplicities(tr, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12).flatmap(lambda r: st.tuples(st.just(r), st.lists(st.integers(0, r - 1), min_size=1, max_size=4))))
def test_dft_recovers_diagonal_exponents(data):
    r, exps = data
    traces = [sum((CyclotomicNumber.zeta(r, a * k) for a in exps), CyclotomicNumber.from_rational(r, 0)) for k in range(r)]
    want = [exps.count(j) for j in range(r)]
    assert cyclo_dft_multiplicities(traces, r) == want


# --- motives ----------------------------------------------------------------

L = MotiveExpr.L(1)


def test_motive_text_forms():
    assert motive_to_text(L**3 + 3 * L**2 + 3 * L) == "L^3 + 3*L^2 + 3*L"
    assert motive_to_text(MotiveExpr.const(0)) == "0"
    assert motive_to_text(L - 1) == "L - 1"
    assert motive_to_text((L - 1) / (L**2 - 1)) == "(1) / (L + 1)"
    assert motive_to_text(MotiveExpr.L(-2) * 3) == "3*L^-2"


def test_eval_at_one():
    assert motive_eval_at_one(L**3 + 3 * L**2 + 3 * L) == 7
    assert motive_eval_at_one((L - 1) / (L**3 - 1)) == Fraction(1, 3)
    with pytest.raises(ArithmeticError_):
        motive_eval_at_one(1 / (L - 1))


motive_polys = st.lists(st.integers(-5, 5), min_size=1, max_size=5)


@settings(max_examples=300, deadline=None)
@given(motive_polys, motive_polys, motive_polys, st.integers(2, 9))
def test_motive_arithmetic_matches_evaluation(p, q, d, x):
    a, b = MotiveExpr(p), MotiveExpr(q)
    den = MotiveExpr(d)
    assert motive_eval(a * b + a, x) == motive_eval(a, x) * motive_eval(b, x) + motive_eval(a, x)
    if den != 0 and motive_eval(den, x) != 0:
        assert motive_eval(a / den, x) == motive_eval(a, x) / motive_eval(den, x)


def test_lefschetz_series():
    top, c = lefschetz_series(1 / (1 - MotiveExpr.L(-1)), 4)
    assert top == 0 and c == [1, 1, 1, 1, 1]
    top, c = lefschetz_series((L - 1) / (L**2 - 1), 3)
    assert top == -1 and c == [1, -1, 1, -1]
    top, c = lefschetz_series(L**2 + 3, 3)
    assert top == 2 and c == [1, 0, 3, 0]


# --- multivariate polynomials ------------------------------------------------


def test_multipoly_substitution_and_degree():
    V = ("u", "v")
    u, v = (MultiPoly.var(V, s) for s in V)
    p = (u + v) ** 3
    assert p.degree() == 3 and p.degree("u") == 3
    X = MultiPoly.var(("x",), "x")
    assert poly_substitute(X**2 - 1, {"x": u + v}) == (u + v - 1) * (u + v + 1)
    with pytest.raises(KeyError):
        poly_substitute(X, {"y": u})


def test_multipoly_cyclotomic_coefficients():
    V = ("u",)
    u = MultiPoly.var(V, "u")
    i = CyclotomicNumber.zeta(4)
    assert (u * i) ** 2 == -(u**2)
