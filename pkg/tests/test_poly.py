import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from frobmult.poly import (GradedRing, PolyParseError, RingMismatchError, frobenius_power,
                           monomial_basis, monomials_of_degree, normal_form, parse_poly, polynomial_ring)
from helpers import hilbert_by_span, random_form, random_ring


def poly_strategy(ring, max_deg=3):
    mons = [m for d in range(max_deg + 1) for m in monomials_of_degree(ring.nvars, d)]
    return st.dictionaries(st.sampled_from(mons), st.integers(1, ring.p - 1), max_size=6).map(
        lambda terms: sum((ring.monomial(m, c) for m, c in terms.items()), ring.zero()))


S2 = polynomial_ring(2, "xy")
S3 = polynomial_ring(3, "xyz")
S5 = polynomial_ring(5, "xy")


def test_arithmetic_examples():
    x, y = S2.gens()
    assert (x + y) * (x + y) == x ** 2 + y ** 2
    assert x + S2.zero() == x
    a, b = S5.gens()
    assert (a + b) * (a - b) == a ** 2 - b ** 2
    assert str(S5("x^2 - y^2")) == "x^2 + 4*y^2"


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        S2.var("x") + S5.var("x")


def test_ring_validation():
    with pytest.raises(ValueError):
        GradedRing(4, ["x"])
    with pytest.raises(ValueError):
        GradedRing(2, ["x", "x"])
    with pytest.raises(ValueError):
        GradedRing(2, ["x", "y"], [S2("x^2 + y")])


def test_parse_grammar():
    R = polynomial_ring(7, "x,y,z")
    f = parse_poly("x^2*y - 3*z", R)
    assert f == R.var("x") ** 2 * R.var("y") - R.var("z").scalar_mul(3)
    assert parse_poly("(x+y)^2", R) == parse_poly("x^2 + 2*x*y + y^2", R)
    assert parse_poly("-x", R) == parse_poly("6*x", R)
    for bad in ["x^-1", "w", "x/y", "x^", "import os", "x^y"]:
        with pytest.raises(PolyParseError):
            parse_poly(bad, R)


@given(poly_strategy(S3))
def test_str_parse_round_trip(f):
    assert parse_poly(str(f), S3) == f


@given(poly_strategy(S3), poly_strategy(S3), poly_strategy(S3))
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f - f == S3.zero()


@given(poly_strategy(S3), poly_strategy(S3), st.integers(0, 2))
def test_frobenius_is_ring_endomorphism(f, g, e):
    F = lambda u: frobenius_power(u, e)
    assert F(f * g) == F(f) * F(g)
    assert F(f + g) == F(f) + F(g)
    assert F(f) == f ** (3 ** e)


def test_frobenius_examples():
    assert frobenius_power(S2("x+y"), 1) == S2("x^2+y^2")
    assert frobenius_power(S2("x+y"), 0) == S2("x+y")
    assert frobenius_power(S3("x+y"), 1) == S3("x^3+y^3")


def test_normal_form_examples():
    R = GradedRing(2, ["x", "y"], [S2("x*y")])
    assert not normal_form(R.poly("x*y"), R)
    Q = GradedRing(2, ["x", "y"], [S2("x*y"), S2("x+y")])
    assert not normal_form(Q.poly("x^2"), Q)
    assert normal_form(Q.poly("y"), Q) == Q.poly("y")


def test_monomial_basis_examples():
    assert monomial_basis(S5, 2) == [(2, 0), (1, 1), (0, 2)]
    R = GradedRing(2, ["x", "y"], [S2("x*y")])
    assert set(monomial_basis(R, 3)) == {(3, 0), (0, 3)}
    T = polynomial_ring(3, "xy")
    A = GradedRing(3, ["x", "y"], [T("x^2"), T("y^2")])
    assert monomial_basis(A, 3) == []
    assert A.socle_degree() == 2


def test_hilbert_function_of_polynomial_ring():
    for d in range(6):
        assert S3.hilbert_function(d) == comb(d + 2, 2)


def test_hilbert_function_against_span_oracle():
    rng = random.Random(3)
    for _ in range(25):
        R = random_ring(rng)
        S = R.ambient
        for d in range(5):
            assert R.hilbert_function(d) == hilbert_by_span(S, list(R.ideal), d)


def test_normal_form_properties():
    rng = random.Random(11)
    for _ in range(20):
        R = random_ring(rng)
        S = R.ambient
        for _ in range(4):
            d = rng.randint(0, 3)
            f, g = random_form(rng, S, d), random_form(rng, S, rng.randint(0, 3))
            nf = R.normal_form(R.poly(f))
            assert R.normal_form(nf) == nf
            assert all(R.is_standard(m) for m in nf.terms)
            assert R.normal_form(R.poly(f * g)) == R.normal_form(nf * R.normal_form(R.poly(g)))
            # f - nf(f) lies in I: its normal form is zero
            assert not R.normal_form(R.poly(f) - nf)


def test_krull_dim_reference_cases():
    assert S2.krull_dim == 2
    assert GradedRing(2, ["x", "y"], [S2("x"), S2("y")]).krull_dim == 0
    assert GradedRing(5, ["x", "y"], [S5("x*y")]).krull_dim == 1
