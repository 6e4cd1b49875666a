import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frobmult.exact import (FpScalar, SingularSystemError, format_rational, is_prime, matrix_rank_fp,
                            nullspace_fp, parse_rational, solve_rational, solve_vandermonde, vandermonde)
from helpers import rank_mod_p

PRIMES = [2, 3, 5, 7, 11]
fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10 ** 6)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.sampled_from(PRIMES), st.integers(-100, 100), st.integers(-100, 100))
def test_fp_scalar_matches_integer_arithmetic(p, a, b):
    x, y = FpScalar(a, p), FpScalar(b, p)
    assert (x + y).value == (a + b) % p
    assert (x - y).value == (a - b) % p
    assert (x * y).value == (a * b) % p
    if b % p:
        assert ((x / y) * y).value == a % p
        assert (y * y.inverse()).value == 1


def test_fp_scalar_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        FpScalar(0, 5).inverse()


def test_rank_examples():
    assert matrix_rank_fp([[0, 0], [0, 0]], 5) == 0
    assert matrix_rank_fp(np.eye(3, dtype=np.int64), 7) == 3
    assert matrix_rank_fp([[1, 2], [2, 4]], 5) == 1
    assert matrix_rank_fp([[FpScalar(1, 3), FpScalar(2, 3)], [FpScalar(2, 3), FpScalar(1, 3)]]) == 1


def test_rank_by_exhaustive_image_count():
    # |image of F_p^cols| = p^rank, enumerated directly
    rng = random.Random(1)
    for _ in range(30):
        p = rng.choice([2, 3])
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        M = [[rng.randrange(p) for _ in range(c)] for _ in range(r)]
        image = {tuple(sum(M[i][j] * v[j] for j in range(c)) % p for i in range(r))
                 for v in itertools.product(range(p), repeat=c)}
        assert p ** matrix_rank_fp(M, p) == len(image)


@given(st.sampled_from(PRIMES), st.integers(1, 6), st.integers(1, 6), st.randoms(use_true_random=False))
def test_rank_nullity(p, r, c, rnd):
    M = [[rnd.randrange(p) for _ in range(c)] for _ in range(r)]
    rank = matrix_rank_fp(M, p)
    assert rank == rank_mod_p(M, p)
    null = nullspace_fp(M, p)
    assert rank + len(null) == c
    for v in null:
        assert all(sum(M[i][j] * v[j] for j in range(c)) % p == 0 for i in range(r))


def test_vandermonde_examples():
    assert solve_vandermonde([1], [Fraction(7, 3)]) == [Fraction(7, 3)]
    assert solve_vandermonde([1, Fraction(1, 2)], [3, 2]) == [1, 2]


def test_vandermonde_recovers_random_cubic():
    rng = random.Random(7)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)]
        nodes = [Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
        rhs = [sum(c * x ** j for j, c in enumerate(coeffs)) for x in nodes]
        assert solve_vandermonde(nodes, rhs) == coeffs


def test_vandermonde_three_nodes_cubic_truncation():
    # three nodes determine a quadratic exactly
    nodes = [Fraction(1), Fraction(1, 2), Fraction(1, 4)]
    coeffs = [Fraction(3), Fraction(-1, 2), Fraction(5)]
    rhs = [sum(c * x ** j for j, c in enumerate(coeffs)) for x in nodes]
    assert solve_vandermonde(nodes, rhs) == coeffs


def test_vandermonde_duplicate_nodes():
    with pytest.raises(SingularSystemError):
        solve_vandermonde([1, 1], [0, 1])


def test_vandermonde_length_mismatch():
    with pytest.raises(ValueError):
        solve_vandermonde([1, 2], [0])


@given(st.lists(fractions, min_size=1, max_size=5, unique=True), st.data())
def test_vandermonde_reevaluation(nodes, data):
    rhs = data.draw(st.lists(fractions, min_size=len(nodes), max_size=len(nodes)))
    c = solve_vandermonde(nodes, rhs)
    for x, b in zip(nodes, rhs):
        assert sum(cj * x ** j for j, cj in enumerate(c)) == b


def test_vandermonde_matrix_rows():
    assert vandermonde([2, 3]) == [[1, 2], [1, 3]]


def test_solve_rational_singular():
    with pytest.raises(SingularSystemError):
        solve_rational([[1, 2], [2, 4]], [1, 1])


@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert parse_rational(format_rational(a)) == a


def test_format_rational():
    assert format_rational(Fraction(1)) == "1/1"
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(float("inf")) == "inf"
    assert parse_rational("inf") == float("inf")
