"""Bounded graded complexes over R = S/I.

A :class:`Complex` has a :class:`PresentedModule` in each homological
degree and a differential ``d_i : X_i -> X_{i-1}`` given as a matrix on
generators (rows index the target).  A complex whose terms carry no
relations is a free complex.

Homology lengths come from two independent routes: Groebner kernels and
subquotient presentations (:func:`homology_length`) and degreewise F_p
linear algebra on standard-monomial bases (:func:`strand_homology_length`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .exact import matrix_rank_fp
from .groebner import (INFINITE, PresentedModule, _ideal_multiples, _kernel_raw, decode,
                       kernel as _kernel_generators, nf_raw, relation_length_and_dim,
                       subquotient_relations, to_raw)
from .poly import NEG_INF, GradedRing, Poly

Matrix = list  # list of rows of Poly


class ComplexError(ValueError):
    pass


def zero_matrix(ring: GradedRing, rows: int, cols: int) -> Matrix:
    return [[ring.zero() for _ in range(cols)] for _ in range(rows)]


def matmul(ring: GradedRing, A: Matrix, B: Matrix, inner: int) -> Matrix:
    rows = len(A)
    cols = len(B[0]) if B else 0
    out = zero_matrix(ring, rows, cols)
    for r in range(rows):
        for c in range(cols):
            acc = ring.zero()
            for k in range(inner):
                a, b = A[r][k], B[k][c]
                if a and b:
                    acc = acc + a * b
            out[r][c] = ring.normal_form(acc)
    return out


def transpose(A: Matrix, rows: int, cols: int) -> Matrix:
    return [[A[r][c] for r in range(rows)] for c in range(cols)]


def _zero_module(ring):
    return PresentedModule(ring, [], [])


class Complex:
    """A bounded complex of presented (typically free) graded R-modules."""

    def __init__(self, ring: GradedRing, terms: Mapping[int, PresentedModule],
                 maps: Mapping[int, Matrix] | None = None, check: bool = True):
        self.ring = ring
        self.terms = {int(i): M for i, M in terms.items() if M.rank > 0}
        for M in self.terms.values():
            if M.ring != ring:
                raise ComplexError("term over a different ring")
        self.maps: dict[int, Matrix] = {}
        for i, A in (maps or {}).items():
            i = int(i)
            rows, cols = self.rank(i - 1), self.rank(i)
            if len(A) != rows or any(len(row) != cols for row in A):
                raise ComplexError(f"d_{i} has shape {len(A)}x{len(A[0]) if A else 0}, "
                                   f"expected {rows}x{cols}")
            if rows and cols:
                self.maps[i] = [[ring.normal_form(ring.poly(f)) for f in row] for row in A]
        self._homology: dict[int, tuple] = {}
        if check:
            self.check_homogeneous()
            self.check_well_defined()

    # construction --------------------------------------------------------

    @classmethod
    def free(cls, ring: GradedRing, twists: Mapping[int, Sequence[int]],
             maps: Mapping[int, Matrix] | None = None, check: bool = True) -> "Complex":
        return cls(ring, {i: PresentedModule(ring, t) for i, t in twists.items()}, maps, check)

    @classmethod
    def from_module(cls, M: PresentedModule, degree: int = 0) -> "Complex":
        return cls(M.ring, {degree: M}, {})

    @classmethod
    def ring_complex(cls, ring: GradedRing, twist: int = 0) -> "Complex":
        """R(twist) concentrated in degree 0."""
        return cls.free(ring, {0: [twist]})

    # accessors -------------------------------------------------------------

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def lo(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def hi(self) -> int:
        return max(self.terms) if self.terms else -1

    def term(self, i: int) -> PresentedModule:
        return self.terms.get(i) or _zero_module(self.ring)

    def rank(self, i: int) -> int:
        M = self.terms.get(i)
        return M.rank if M else 0

    def twists(self, i: int) -> tuple:
        return self.term(i).twists

    def d(self, i: int) -> Matrix:
        A = self.maps.get(i)
        if A is None:
            return zero_matrix(self.ring, self.rank(i - 1), self.rank(i))
        return A

    def is_free(self) -> bool:
        return all(M.is_free() for M in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def ranks(self) -> dict[int, int]:
        return {i: self.rank(i) for i in self.degrees}

    def max_generator_degree(self) -> int:
        return max((max(M.gdeg) for M in self.terms.values()), default=0)

    def min_generator_degree(self) -> int:
        return min((min(M.gdeg) for M in self.terms.values()), default=0)

    # certificates ------------------------------------------------------------

    def check_homogeneous(self) -> None:
        for i, A in self.maps.items():
            src, tgt = self.term(i).gdeg, self.term(i - 1).gdeg
            for r, row in enumerate(A):
                for c, f in enumerate(row):
                    if f and not (f.is_homogeneous() and f.degree() == src[c] - tgt[r]):
                        raise ComplexError(f"d_{i}[{r}][{c}] = {f} is not homogeneous of "
                                           f"degree {src[c] - tgt[r]}")

    def _in_relations(self, i: int, col: Sequence[Poly]) -> bool:
        M = self.term(i)
        if M.is_free():
            return all(not self.ring.normal_form(f) for f in col)
        return not M.gb().reduce_raw(to_raw(col))

    def check_well_defined(self) -> None:
        """Each differential maps relations into relations."""
        for i, A in self.maps.items():
            M = self.term(i)
            tgt_rank = self.rank(i - 1)
            for u in M.relations:
                image = [self.ring.normal_form(sum((A[r][c] * u[c] for c in range(M.rank)), self.ring.zero()))
                         for r in range(tgt_rank)]
                if not self._in_relations(i - 1, image):
                    raise ComplexError(f"d_{i} does not respect the relations of X_{i}")
        if not self.dd_is_zero():
            raise ComplexError("consecutive differentials do not compose to zero")

    def dd_is_zero(self) -> bool:
        """d_{i-1} o d_i = 0 (modulo relations and the ring ideal) for all i."""
        for i in self.maps:
            if (i - 1) not in self.maps:
                continue
            P = matmul(self.ring, self.maps[i - 1], self.maps[i], self.rank(i - 1))
            for c in range(self.rank(i)):
                if not self._in_relations(i - 2, [P[r][c] for r in range(self.rank(i - 2))]):
                    return False
        return True

    # misc --------------------------------------------------------------------

    def __repr__(self):
        parts = [f"{i}:{self.rank(i)}" for i in self.degrees]
        kind = "free" if self.is_free() else "presented"
        return f"Complex({kind}; " + ", ".join(parts) + ")"

    def same_as(self, other: "Complex") -> bool:
        """Equal terms (twists and relations) and equal differential normal forms."""
        if self.degrees != other.degrees:
            return False
        for i in self.degrees:
            a, b = self.term(i), other.term(i)
            if a.twists != b.twists or [[f.terms for f in c] for c in a.relations] != \
                    [[f.terms for f in c] for c in b.relations]:
                return False
        for i in set(self.maps) | set(other.maps):
            A, B = self.d(i), other.d(i)
            if [[f.terms for f in row] for row in A] != [[f.terms for f in row] for row in B]:
                return False
        return True


FreeComplex = Complex
PresentedComplex = Complex


# constructors ---------------------------------------------------------------

def koszul(ring: GradedRing, elements: Sequence) -> Complex:
    """Koszul complex on ``elements``; basis of K_i is the i-subsets in lex order.

    d(e_J) = sum_k (-1)^k a_{j_k} e_{J - j_k}; e_J has twist -sum deg a_j.
    """
    elems = [ring.normal_form(ring.poly(a)) for a in elements]
    for a in elems:
        if not a.is_homogeneous():
            raise ComplexError(f"Koszul element {a} is not homogeneous")
    degs = [a.degree() if a else 0 for a in elems]
    t = len(elems)
    subsets = {i: list(itertools.combinations(range(t), i)) for i in range(t + 1)}
    twists = {i: [-sum(degs[j] for j in J) for J in subsets[i]] for i in range(t + 1)}
    maps = {}
    for i in range(1, t + 1):
        index = {J: r for r, J in enumerate(subsets[i - 1])}
        A = zero_matrix(ring, len(subsets[i - 1]), len(subsets[i]))
        for c, J in enumerate(subsets[i]):
            for k, j in enumerate(J):
                r = index[J[:k] + J[k + 1:]]
                A[r][c] = elems[j] if k % 2 == 0 else -elems[j]
        maps[i] = A
    return Complex.free(ring, twists, maps)


def shift(X: Complex, n: int) -> Complex:
    """Sigma^n X: (Sigma^n X)_i = X_{i-n} with differential (-1)^n d_{i-n}."""
    sign = -1 if n % 2 else 1
    terms = {i + n: M for i, M in X.terms.items()}
    maps = {i + n: [[f * sign for f in row] for row in A] for i, A in X.maps.items()}
    return Complex(X.ring, terms, maps, check=False)


def _tensor_modules(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    ring = M.ring
    twists = [a + b for a in M.twists for b in N.twists]
    rels = []
    for u in M.relations:
        for b in range(N.rank):
            col = [ring.zero()] * len(twists)
            for a in range(M.rank):
                col[a * N.rank + b] = u[a]
            rels.append(col)
    for a in range(M.rank):
        for v in N.relations:
            col = [ring.zero()] * len(twists)
            for b in range(N.rank):
                col[a * N.rank + b] = v[b]
            rels.append(col)
    return PresentedModule(ring, twists, rels)


def _same_ring(X: Complex, Y: Complex):
    if X.ring != Y.ring:
        raise ComplexError("complexes over different rings")


def tensor(X: Complex, Y: Complex) -> Complex:
    """Total tensor complex; d(x(x)y) = dx(x)y + (-1)^i x(x)dy.

    For free X this computes the derived tensor product.
    """
    if isinstance(Y, PresentedModule):
        Y = Complex.from_module(Y)
    _same_ring(X, Y)
    ring = X.ring
    blocks: dict[int, list[tuple[int, int, int]]] = {}  # n -> [(i, j, offset)]
    terms = {}
    for n in range(X.lo + Y.lo, X.hi + Y.hi + 1):
        parts, mods, off = [], [], 0
        for i in X.degrees:
            j = n - i
            if j in Y.terms:
                M = _tensor_modules(X.terms[i], Y.terms[j])
                parts.append((i, j, off))
                mods.append(M)
                off += M.rank
        if off:
            blocks[n] = parts
            terms[n] = PresentedModule(ring, [t for M in mods for t in M.twists],
                                       _stack_relations(ring, mods))
    maps = {}
    for n, parts in blocks.items():
        if n - 1 not in blocks:
            continue
        tgt = {(i, j): off for i, j, off in blocks[n - 1]}
        A = zero_matrix(ring, terms[n - 1].rank, terms[n].rank)
        for i, j, off in parts:
            ri, rj = X.rank(i), Y.rank(j)
            if (i - 1, j) in tgt:
                DX, toff = X.d(i), tgt[(i - 1, j)]
                for a in range(ri):
                    for a2 in range(X.rank(i - 1)):
                        f = DX[a2][a]
                        if f:
                            for b in range(rj):
                                A[toff + a2 * rj + b][off + a * rj + b] = f
            if (i, j - 1) in tgt:
                DY, toff = Y.d(j), tgt[(i, j - 1)]
                rj2 = Y.rank(j - 1)
                sign = -1 if i % 2 else 1
                for b in range(rj):
                    for b2 in range(rj2):
                        f = DY[b2][b]
                        if f:
                            for a in range(ri):
                                A[toff + a * rj2 + b2][off + a * rj + b] = f * sign
        maps[n] = A
    return Complex(ring, terms, maps, check=False)


def _stack_relations(ring, mods):
    total = sum(M.rank for M in mods)
    rels, off = [], 0
    for M in mods:
        for u in M.relations:
            col = [ring.zero()] * total
            col[off:off + M.rank] = u
            rels.append(col)
        off += M.rank
    return rels


def _hom_free_module(F: PresentedModule, M: PresentedModule) -> PresentedModule:
    """Hom(F, M) for free F: basis f_{k,b} sending e_k to the b-th generator of M."""
    ring = M.ring
    twists = [tb - sk for sk in F.twists for tb in M.twists]
    rels = []
    for k in range(F.rank):
        for u in M.relations:
            col = [ring.zero()] * len(twists)
            col[k * M.rank:(k + 1) * M.rank] = u
            rels.append(col)
    return PresentedModule(ring, twists, rels)


def hom_complex(X: Complex, Y: Complex) -> Complex:
    """Hom(X, Y)_n = prod_i Hom(X_i, Y_{i+n}), d(f) = d^Y f - (-1)^n f d^X.

    X must be free; it then computes RHom(X, Y).
    """
    if isinstance(Y, PresentedModule):
        Y = Complex.from_module(Y)
    _same_ring(X, Y)
    if not X.is_free():
        raise ComplexError("hom_complex needs a free first argument")
    ring = X.ring
    blocks, terms = {}, {}
    for n in range(Y.lo - X.hi, Y.hi - X.lo + 1):
        parts, mods, off = [], [], 0
        for i in X.degrees:
            if i + n in Y.terms:
                H = _hom_free_module(X.terms[i], Y.terms[i + n])
                parts.append((i, off))
                mods.append(H)
                off += H.rank
        if off:
            blocks[n] = parts
            terms[n] = PresentedModule(ring, [t for H in mods for t in H.twists],
                                       _stack_relations(ring, mods))
    maps = {}
    for n, parts in blocks.items():
        if n - 1 not in blocks:
            continue
        tgt = dict(blocks[n - 1])
        A = zero_matrix(ring, terms[n - 1].rank, terms[n].rank)
        sign = 1 if n % 2 else -1  # -(-1)^n
        for i, off in parts:
            rx, ry = X.rank(i), Y.rank(i + n)
            if i in tgt:
                DY, toff = Y.d(i + n), tgt[i]
                ry2 = Y.rank(i + n - 1)
                for k in range(rx):
                    for b in range(ry):
                        for c in range(ry2):
                            f = DY[c][b]
                            if f:
                                A[toff + k * ry2 + c][off + k * ry + b] = f
            if i + 1 in tgt:
                DX, toff = X.d(i + 1), tgt[i + 1]
                for k in range(rx):
                    for l in range(X.rank(i + 1)):
                        f = DX[k][l]
                        if f:
                            for b in range(ry):
                                A[toff + l * ry + b][off + k * ry + b] = f * sign
        maps[n] = A
    return Complex(ring, terms, maps, check=False)


def star_dual(X: Complex) -> Complex:
    """X^* = Hom(X, R)."""
    return hom_complex(X, Complex.ring_complex(X.ring))


def direct_sum(X: Complex, Y: Complex) -> Complex:
    _same_ring(X, Y)
    ring = X.ring
    terms, maps = {}, {}
    for i in set(X.terms) | set(Y.terms):
        terms[i] = PresentedModule(ring, list(X.twists(i)) + list(Y.twists(i)),
                                   _stack_relations(ring, [X.term(i), Y.term(i)]))
    for i in set(X.maps) | set(Y.maps):
        A = zero_matrix(ring, X.rank(i - 1) + Y.rank(i - 1), X.rank(i) + Y.rank(i))
        for r, row in enumerate(X.d(i)):
            for c, f in enumerate(row):
                A[r][c] = f
        for r, row in enumerate(Y.d(i)):
            for c, f in enumerate(row):
                A[X.rank(i - 1) + r][X.rank(i) + c] = f
        maps[i] = A
    return Complex(ring, terms, maps, check=False)


def is_chain_map(X: Complex, Y: Complex, phi: Mapping[int, Matrix]) -> bool:
    ring = X.ring
    for i in set(X.degrees) | set(Y.degrees) | {i + 1 for i in X.degrees}:
        P = phi.get(i)
        Q = phi.get(i - 1)
        left = matmul(ring, Y.d(i), P, Y.rank(i)) if P is not None and Y.rank(i - 1) else None
        right = matmul(ring, Q, X.d(i), X.rank(i - 1)) if Q is not None and X.rank(i) else None
        rows, cols = Y.rank(i - 1), X.rank(i)
        for r in range(rows):
            for c in range(cols):
                a = left[r][c] if left else ring.zero()
                b = right[r][c] if right else ring.zero()
                if ring.normal_form(a - b):
                    return False
    return True


def cone(X: Complex, Y: Complex, phi: Mapping[int, Matrix]) -> Complex:
    """Mapping cone of a chain map phi : X -> Y of free complexes.

    cone_n = X_{n-1} + Y_n with d = [[-d^X, 0], [phi, d^Y]].
    """
    _same_ring(X, Y)
    if not (X.is_free() and Y.is_free()):
        raise ComplexError("cone is defined here for free complexes")
    phi = {int(i): [[X.ring.normal_form(X.ring.poly(f)) for f in row] for row in A]
           for i, A in phi.items()}
    for i, A in phi.items():
        if len(A) != Y.rank(i) or any(len(r) != X.rank(i) for r in A):
            raise ComplexError(f"phi_{i} has the wrong shape")
    if not is_chain_map(X, Y, phi):
        raise ComplexError("phi does not commute with the differentials")
    ring = X.ring
    degs = {i + 1 for i in X.degrees} | set(Y.degrees)
    twists = {n: list(X.twists(n - 1)) + list(Y.twists(n)) for n in degs}
    maps = {}
    for n in degs:
        if n - 1 not in degs:
            continue
        xs, ys = X.rank(n - 1), Y.rank(n)
        xt, yt = X.rank(n - 2), Y.rank(n - 1)
        A = zero_matrix(ring, xt + yt, xs + ys)
        DX = X.d(n - 1)
        for r in range(xt):
            for c in range(xs):
                A[r][c] = -DX[r][c]
        P = phi.get(n - 1)
        if P is not None:
            for r in range(yt):
                for c in range(xs):
                    A[xt + r][c] = P[r][c]
        DY = Y.d(n)
        for r in range(yt):
            for c in range(ys):
                A[xt + r][xs + c] = DY[r][c]
        maps[n] = A
    return Complex.free(ring, twists, maps)


def multiplication_map(X: Complex, f: Poly) -> tuple[Complex, dict]:
    """Source complex and chain map for multiplication by homogeneous ``f`` on X.

    Returns (X twisted by -deg f, phi) with phi_i = f * identity.
    """
    ring = X.ring
    f = ring.normal_form(ring.poly(f))
    deg = f.degree() if f else 0
    src = Complex(ring, {i: M.twisted(-deg) for i, M in X.terms.items()}, X.maps, check=False)
    phi = {}
    for i in X.degrees:
        A = zero_matrix(ring, X.rank(i), X.rank(i))
        for k in range(X.rank(i)):
            A[k][k] = f
        phi[i] = A
    return src, phi


# homology -----------------------------------------------------------------

def _homology_data(X: Complex, i: int):
    """(length, dim) of H_i(X), cached on the complex."""
    hit = X._homology.get(i)
    if hit is not None:
        return hit
    R = X.ring
    M = X.term(i)
    if M.rank == 0:
        hit = (0, NEG_INF)
        X._homology[i] = hit
        return hit
    r = M.rank
    prev = X.term(i - 1)
    if prev.rank == 0 or i not in X.maps:
        kgens = [to_raw([R.one() if k == j else R.zero() for k in range(r)]) for j in range(r)]
    else:
        A = X.maps[i]
        cols = [to_raw([A[row][j] for row in range(prev.rank)]) for j in range(r)]
        raw = _kernel_raw(R, cols, M.twists, prev.twists, [to_raw(u) for u in prev.relations])
        kgens = [v for v in (nf_raw(v, R, r) for _, v in raw) if v]
    if not kgens:
        hit = (0, NEG_INF)
    else:
        bgens = [to_raw(u) for u in M.relations] + _ideal_multiples(R, r)
        if i + 1 in X.maps:
            B = X.maps[i + 1]
            bgens += [to_raw([B[row][j] for row in range(r)]) for j in range(X.rank(i + 1))]
        kdeg, rel = subquotient_relations(R, M.twists, kgens, bgens)
        hit = relation_length_and_dim(R, kdeg, rel)
    X._homology[i] = hit
    return hit


def homology_length(X: Complex, i: int):
    """Length of H_i(X) (``inf`` when H_i has positive dimension)."""
    return _homology_data(X, i)[0]


def homology_dim(X: Complex, i: int):
    return _homology_data(X, i)[1]


def homology_lengths(X: Complex) -> dict[int, object]:
    return {i: homology_length(X, i) for i in X.degrees}


def support_dim(X: Complex):
    """dim Supp X = max_i dim H_i(X); ``-inf`` for an exact complex."""
    return max((homology_dim(X, i) for i in X.degrees), default=NEG_INF)


def codim(X: Complex):
    s = support_dim(X)
    if s == NEG_INF:
        raise ComplexError("codim of an exact complex is undefined")
    return X.ring.krull_dim - s


# strand oracle --------------------------------------------------------------

class StrandResult(NamedTuple):
    length: int
    warning: bool


def _strand_basis(M: PresentedModule, d: int):
    R = M.ring
    basis = [(j, m) for j, g in enumerate(M.gdeg) for m in R.monomial_basis(d - g)]
    return basis, {b: k for k, b in enumerate(basis)}


def _coords(R, vec: Sequence[Poly], index, size) -> list[int]:
    out = [0] * size
    for j, f in enumerate(vec):
        for e, c in R.normal_form(f).terms.items():
            out[index[(j, e)]] = c
    return out


def _map_strand(R, A, src_basis, tgt_index, tgt_size) -> list[list[int]]:
    """Columns (as rows) of the degree strand of the matrix map A."""
    cols = []
    for j, m in src_basis:
        image = [A[r][j].mul_monomial(m) for r in range(len(A))]
        cols.append(_coords(R, image, tgt_index, tgt_size))
    return cols


def _relation_strand(M: PresentedModule, d: int, index, size) -> list[list[int]]:
    R = M.ring
    gdeg = M.gdeg
    rows = []
    for u in M.relations:
        k = next(j for j, f in enumerate(u) if f)
        deg = u[k].degree() + gdeg[k]
        for m in R.monomial_basis(d - deg):
            rows.append(_coords(R, [f.mul_monomial(m) for f in u], index, size))
    return rows


def _rank(rows, size, p) -> int:
    if not rows or size == 0:
        return 0
    return matrix_rank_fp(np.array(rows, dtype=np.int64).reshape(len(rows), size), p)


def strand_dims(X: Complex, i: int, d: int) -> tuple[int, int]:
    """(dim H_i(X)_d, dim of the cycle strand) by linear algebra over F_p."""
    R, p = X.ring, X.ring.p
    M = X.term(i)
    if M.rank == 0:
        return 0, 0
    F_basis, F_index = _strand_basis(M, d)
    n_f = len(F_basis)
    if n_f == 0:
        return 0, 0
    W_i = _relation_strand(M, d, F_index, n_f)
    prev = X.term(i - 1)
    if prev.rank and i in X.maps:
        P_basis, P_index = _strand_basis(prev, d)
        n_p = len(P_basis)
        W_prev = _relation_strand(prev, d, P_index, n_p)
        D = _map_strand(R, X.maps[i], F_basis, P_index, n_p)
        image_rank = _rank(W_prev + D, n_p, p) - _rank(W_prev, n_p, p)
    else:
        image_rank = 0
    cycles = n_f - image_rank
    B = list(W_i)
    if X.rank(i + 1) and i + 1 in X.maps:
        N_basis, _ = _strand_basis(X.term(i + 1), d)
        B += _map_strand(R, X.maps[i + 1], N_basis, F_index, n_f)
    boundaries = _rank(B, n_f, p)
    return cycles - boundaries, cycles


def default_strand_cap(X: Complex) -> int:
    """A degree cap for the strand oracle derived from twists and the ring.

    Over an artinian ring the cap sits one past the last possibly nonzero
    strand, so a nonzero strand at the cap really signals truncation.
    """
    R = X.ring
    top = X.max_generator_degree()
    socle = R.socle_degree()
    if socle is not None:
        return top + socle + 1
    entry = max((f.degree() for A in X.maps.values() for row in A for f in row if f), default=0)
    ideal = max((g.degree() for g in R.gb), default=0)
    rel = max((f.degree() for M in X.terms.values() for u in M.relations for f in u if f), default=0)
    return top + R.nvars * max(entry, ideal, rel, 1)


def strand_homology_length(X: Complex, i: int, dmax: int | None = None) -> StrandResult:
    """Sum over degrees d <= dmax of dim_k H_i(X)_d.

    ``warning`` is set when the degree range is empty or the strand at
    ``dmax`` is nonzero (the cap may be too small).
    """
    if dmax is None:
        dmax = default_strand_cap(X)
    M = X.term(i)
    if M.rank == 0:
        return StrandResult(0, dmax < X.min_generator_degree())
    dmin = min(M.gdeg)
    if dmax < dmin:
        return StrandResult(0, True)
    total = 0
    last = 0
    for d in range(dmin, dmax + 1):
        last, _ = strand_dims(X, i, d)
        total += last
    return StrandResult(total, last != 0)


# resolutions ----------------------------------------------------------------

@dataclass
class Resolution:
    complex: Complex
    terminated: bool

    @property
    def length(self) -> int:
        return self.complex.hi if self.complex.terms else 0


def _unit_entry(A, rows, cols):
    for c in range(cols):
        for r in range(rows):
            f = A[r][c]
            if f and f.is_constant():
                return r, c
    return None


def _prune(ring, A, rows, cols, src_tw, tgt_tw, prev=None, prev_rows=0):
    """Split off unit entries of A : F_src -> F_tgt.

    Returns the reduced (A, src_tw, tgt_tw, prev) where ``prev`` is the
    differential leaving F_tgt, whose columns follow the removed rows.
    """
    A = [list(row) for row in A]
    src_tw, tgt_tw = list(src_tw), list(tgt_tw)
    while True:
        hit = _unit_entry(A, len(tgt_tw), len(src_tw))
        if hit is None:
            return A, src_tw, tgt_tw, prev
        r, c = hit
        u = A[r][c].constant_coeff()
        inv = pow(u, -1, ring.p)
        v = [A[k][c] for k in range(len(tgt_tw))]
        for j in range(len(src_tw)):
            if j == c or not A[r][j]:
                continue
            factor = A[r][j] * inv
            for k in range(len(tgt_tw)):
                A[k][j] = ring.normal_form(A[k][j] - factor * v[k])
        A = [row[:c] + row[c + 1:] for k, row in enumerate(A) if k != r]
        del src_tw[c]
        del tgt_tw[r]
        if prev is not None:
            prev = [row[:r] + row[r + 1:] for row in prev]


def resolve(M: PresentedModule, max_steps: int) -> Resolution:
    """Minimal graded free resolution of M over its ring, up to ``max_steps`` maps."""
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    R = M.ring
    tw0 = list(M.twists)
    rel_tw = []
    for u in M.relations:
        k = next(j for j, f in enumerate(u) if f)
        rel_tw.append(-(u[k].degree() - tw0[k]))
    d1 = [[u[r] for u in M.relations] for r in range(len(tw0))]
    d1, rel_tw, tw0, _ = _prune(R, d1, len(tw0), len(rel_tw), rel_tw, tw0)
    twists = {0: tw0}
    maps = {}
    current, cur_tw, prev_tw = d1, rel_tw, tw0
    terminated = False
    k = 1
    while True:
        if not cur_tw:
            terminated = True
            break
        if k > max_steps:
            break
        gens = _kernel_generators(current, R, cur_tw, prev_tw)
        nxt = [[g.components[r] for g in gens] for r in range(len(cur_tw))]
        nxt_tw = [-(g.degree()) for g in gens]
        nxt, nxt_tw, cur_tw, current = _prune(R, nxt, len(cur_tw), len(nxt_tw), nxt_tw, cur_tw,
                                              prev=current)
        maps[k] = current
        twists[k] = cur_tw
        if not nxt_tw:
            terminated = True
            break
        if k == max_steps:
            break
        current, prev_tw, cur_tw = nxt, cur_tw, nxt_tw
        k += 1
    twists = {i: t for i, t in twists.items() if t}
    maps = {i: A for i, A in maps.items() if i in twists and i - 1 in twists}
    return Resolution(Complex.free(R, twists, maps), terminated)
