"""Random small objects and independent oracles shared by the test modules."""

import itertools
import random
from fractions import Fraction

import numpy as np

from frobmult import GradedRing, Complex, koszul, polynomial_ring
from frobmult.poly import Poly, monomials_of_degree

NAMES = "xyz"


def random_form(rng: random.Random, ring, d: int, density: float = 0.6) -> Poly:
    """Random homogeneous polynomial of degree d (possibly zero)."""
    terms = {}
    for m in monomials_of_degree(ring.nvars, d):
        if rng.random() < density:
            c = rng.randrange(1, ring.p)
            terms[m] = c
    f = ring.zero()
    for m, c in terms.items():
        f = f + ring.monomial(m, c)
    return f


def random_nonzero_form(rng, ring, d):
    while True:
        f = ring.normal_form(random_form(rng, ring, d))
        if f:
            return f


def random_ring(rng, artinian=False, max_vars=3, primes=(2, 3, 5)):
    p = rng.choice(primes)
    n = rng.randint(1, max_vars)
    S = polynomial_ring(p, NAMES[:n])
    gens = []
    if artinian:
        # pure powers make the quotient artinian; extra forms perturb it
        gens = [S.var(NAMES[i]) ** rng.randint(1, 3) for i in range(n)]
    for _ in range(rng.randint(0, 2)):
        f = random_form(rng, S, rng.randint(2, 3))
        if f:
            gens.append(f)
    return GradedRing(p, list(NAMES[:n]), gens)


def random_two_term(rng, R, max_rank=2):
    """A random homogeneous map R^b -> R^a as a complex in degrees 0,1."""
    a, b = rng.randint(1, max_rank), rng.randint(1, max_rank)
    tw0 = [-rng.randint(0, 1) for _ in range(a)]
    tw1 = []
    rows = [[None] * b for _ in range(a)]
    for j in range(b):
        dj = -min(tw0) + rng.randint(1, 2)  # source generator degree
        tw1.append(-dj)
        for i in range(a):
            rows[i][j] = random_form(rng, R, dj + tw0[i]) if dj + tw0[i] >= 0 else R.zero()
    return Complex.free(R, {0: tw0, 1: tw1}, {1: rows})


def random_koszul(rng, R, k=None):
    k = rng.randint(1, min(3, R.nvars + 1)) if k is None else k
    return koszul(R, [random_form(rng, R, rng.randint(1, 2)) for _ in range(k)])


def random_free_complex(rng, R):
    """Koszul complex, two-term complex, or a tensor of two small pieces."""
    kind = rng.choice(["koszul", "two", "tensor"])
    if kind == "koszul":
        return random_koszul(rng, R)
    if kind == "two":
        return random_two_term(rng, R)
    from frobmult import tensor
    return tensor(random_koszul(rng, R, 1), random_two_term(rng, R, 1))


# oracles ----------------------------------------------------------------------

def rank_mod_p(rows, p):
    """Rank over F_p by plain Python elimination, independent of numpy."""
    M = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col]:
                c = M[r][col]
                M[r] = [(x - c * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


def hilbert_by_span(S, gens, d):
    """dim_k (S/(gens))_d by spanning m*g in S_d; no Groebner basis involved."""
    mons = monomials_of_degree(S.nvars, d)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > d or not g:
            continue
        for m in monomials_of_degree(S.nvars, d - dg):
            h = g.mul_monomial(m)
            row = [0] * len(mons)
            for e, c in h.terms.items():
                row[index[e]] = c
            rows.append(row)
    return len(mons) - (rank_mod_p(rows, S.p) if rows else 0)


def colength_by_span(S, gens, dmax):
    return sum(hilbert_by_span(S, gens, d) for d in range(dmax + 1))
