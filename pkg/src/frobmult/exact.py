"""Exact scalar and matrix arithmetic.

Rationals are :class:`fractions.Fraction`.  Prime-field values are plain
``int`` residues; :class:`FpScalar` wraps one together with its modulus
for callers that want a self-describing value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

# p must keep p*p inside int64 for the numpy elimination kernel.
MAX_PRIME = 2**31


class SingularSystemError(ValueError):
    """Raised when a linear system has no unique solution."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FpScalar:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, FpScalar):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.value
        return int(other)

    def __add__(self, other):
        return FpScalar(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpScalar(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpScalar(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FpScalar(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.p)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpScalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FpScalar(self._coerce(other), self.p).inverse()

    def __pow__(self, e: int):
        return FpScalar(pow(self.value, e, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def _to_fp_array(M, p: int) -> np.ndarray:
    rows = [[int(x) for x in row] for row in M]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1) % p


def row_reduce_fp(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``A`` over F_p and its pivot columns."""
    if p >= MAX_PRIME:
        raise ValueError(f"prime {p} too large for the word-size kernel")
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def matrix_rank_fp(M, p: int | None = None) -> int:
    """Rank of ``M`` over F_p.

    ``M`` may hold ints (then ``p`` is required) or :class:`FpScalar`
    entries, or be an integer numpy array.
    """
    if p is None:
        for row in M:
            for x in row:
                if isinstance(x, FpScalar):
                    p = x.p
                    break
            if p is not None:
                break
        if p is None:
            raise ValueError("modulus required for integer matrices")
    A = M if isinstance(M, np.ndarray) else _to_fp_array(M, p)
    if A.size == 0:
        return 0
    return len(row_reduce_fp(A, p)[1])


def nullspace_fp(M, p: int) -> list[list[int]]:
    """A basis of the right kernel of ``M`` over F_p."""
    A = M if isinstance(M, np.ndarray) else _to_fp_array(M, p)
    ncols = A.shape[1]
    R, pivots = row_reduce_fp(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = int(-R[i, f]) % p
        basis.append(v)
    return basis


def solve_rational(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve the square system ``A x = b`` exactly by Gaussian elimination."""
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("system must be square")
    M = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise SingularSystemError("singular system")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def vandermonde(nodes: Sequence[Fraction]) -> list[list[Fraction]]:
    """Matrix with row i equal to (1, x_i, x_i^2, ...)."""
    n = len(nodes)
    return [[Fraction(x) ** j for j in range(n)] for x in nodes]


def solve_vandermonde(nodes: Iterable, rhs: Iterable) -> list[Fraction]:
    """Coefficients ``c`` with ``sum_j c_j * nodes[i]**j == rhs[i]`` for every i.

    For nodes ``1, p^-1, ..., p^-u`` the matrix is symmetric, so the same
    call inverts the Frobenius eigen-decomposition system.
    """
    nodes = [Fraction(x) for x in nodes]
    rhs = [Fraction(x) for x in rhs]
    if len(nodes) != len(rhs):
        raise ValueError("nodes and rhs differ in length")
    if len(set(nodes)) != len(nodes):
        raise SingularSystemError("Vandermonde nodes must be pairwise distinct")
    return solve_rational(vandermonde(nodes), rhs)


def format_rational(q) -> str:
    """``num/den`` string, denominator always present; ``inf`` for infinity."""
    if isinstance(q, float):
        if q == float("inf"):
            return "inf"
        if q == float("-inf"):
            return "-inf"
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str):
    if s in ("inf", "-inf"):
        return float(s)
    return Fraction(s)
