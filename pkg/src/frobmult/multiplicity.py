"""Intersection multiplicities, Euler forms and Frobenius eigen-decompositions.

A class in the Grothendieck space of perfect complexes supported on
Supp X is handled through its pairings ``chi(X, Y)`` against test
complexes Y; nothing else about the space is materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .complexes import (Complex, ComplexError, homology_length, resolve, star_dual,
                        support_dim, tensor, hom_complex)
from .exact import solve_vandermonde
from .frobenius import (CanonicalModule, OmegaComplex, UnsupportedRingError, canonical_module,
                        g_on_omega, hom_into_omega, lf)
from .groebner import INFINITE, PresentedModule
from .poly import NEG_INF, GradedRing

Testable = Union[Complex, PresentedModule, OmegaComplex]


class HypothesisViolation(ValueError):
    """The supports of a pair do not meet the definition's requirements."""


class SupportViolation(HypothesisViolation):
    """Some homology module has infinite length."""


class OrderTooSmallError(ValueError):
    """A decomposition failed its held-out exponent check."""


def as_complex(Z: Testable) -> Complex:
    if isinstance(Z, Complex):
        return Z
    if isinstance(Z, PresentedModule):
        return Complex.from_module(Z)
    if isinstance(Z, OmegaComplex):
        return Z.as_complex()
    raise TypeError(f"not a complex: {Z!r}")


def euler_char(Z: Testable) -> Fraction:
    """sum_i (-1)^i length H_i(Z); every H_i must have finite length."""
    Z = as_complex(Z)
    total = 0
    for i in Z.degrees:
        L = homology_length(Z, i)
        if L == INFINITE:
            raise SupportViolation(f"H_{i} has infinite length")
        total += -L if i % 2 else L
    return Fraction(total)


def _dim(Z: Testable):
    if isinstance(Z, PresentedModule):
        return Z.dim()
    return support_dim(as_complex(Z))


def _require_free(X: Complex):
    if not isinstance(X, Complex) or not X.is_free():
        raise ComplexError("the first argument must be a free complex")


def check_pair(X: Complex, Y: Testable, lenient: bool = False,
               warnings: list | None = None) -> None:
    """Supp X meets Supp Y only at the maximal ideal, and dims sum to at most dim R."""
    problems = []
    inter = support_dim(tensor(X, as_complex(Y)))
    if inter > 0:
        problems.append(f"Supp X and Supp Y meet in dimension {inter}")
    dx, dy = support_dim(X), _dim(Y)
    if dx != NEG_INF and dy != NEG_INF and dx + dy > X.ring.krull_dim:
        problems.append(f"dim Supp X + dim Supp Y = {dx + dy} exceeds dim R = {X.ring.krull_dim}")
    if problems:
        if not lenient:
            raise HypothesisViolation("; ".join(problems))
        if warnings is not None:
            warnings.extend(problems)


def chi(X: Complex, Y: Testable, lenient: bool = False, warnings: list | None = None) -> Fraction:
    """Intersection multiplicity chi(X, Y) = euler_char(X (x) Y) for free X."""
    _require_free(X)
    check_pair(X, Y, lenient, warnings)
    return _chi(X, Y)


def _chi(X: Complex, Y: Testable) -> Fraction:
    return euler_char(tensor(X, as_complex(Y)))


def xi(X: Complex, Y: Testable, lenient: bool = False, warnings: list | None = None) -> Fraction:
    """Euler form xi(X, Y) = euler_char(Hom(X, Y)) for free X."""
    _require_free(X)
    check_pair(X, Y, lenient, warnings)
    return _xi(X, Y)


def _xi(X: Complex, Y: Testable) -> Fraction:
    if isinstance(Y, OmegaComplex):
        return euler_char(hom_into_omega(X, Y))
    return euler_char(hom_complex(X, as_complex(Y)))


def vdim_bound(X: Testable) -> int:
    """max(0, codim Supp X - 2), the default decomposition order."""
    Z = as_complex(X)
    s = support_dim(Z)
    if s == NEG_INF:
        raise ComplexError("vanishing dimension of an exact complex")
    return max(0, Z.ring.krull_dim - s - 2)


# contexts and decompositions -------------------------------------------------

@dataclass
class PairingContext:
    """A free complex X together with admissible test objects."""

    X: Complex
    tests: list
    s: int
    p: int
    lenient: bool = False
    warnings: list = field(default_factory=list)

    @classmethod
    def build(cls, X: Complex, tests: Sequence[Testable] = (), lenient: bool = False) -> "PairingContext":
        _require_free(X)
        dx = support_dim(X)
        if dx == NEG_INF:
            raise ComplexError("X is exact; its class is zero")
        ctx = cls(X, [], X.ring.krull_dim - dx, X.ring.p, lenient)
        for Y in tests:
            ctx.add_test(Y)
        return ctx

    def add_test(self, Y: Testable) -> None:
        check_pair(self.X, Y, self.lenient, self.warnings)
        self.tests.append(Y)


@dataclass
class EigenDecomposition:
    """Components c_i with sequence(e) = sum_i p^(-i e) c_i."""

    p: int
    order: int
    sequence: list
    components: list
    held_out: dict = field(default_factory=dict)

    def predicted(self, e: int) -> Fraction:
        return sum((Fraction(1, self.p ** (i * e)) * c for i, c in enumerate(self.components)),
                   Fraction(0))

    @property
    def consistent(self) -> bool:
        return all(self.predicted(e) == v for e, v in self.held_out.items())


def decompose_sequence(sequence: Sequence, p: int) -> list[Fraction]:
    """Invert the Vandermonde system on nodes 1, 1/p, ..., 1/p^u."""
    nodes = [Fraction(1, p ** e) for e in range(len(sequence))]
    return solve_vandermonde(nodes, sequence)


def _normalized(values, p, s):
    return [Fraction(v) / Fraction(p) ** (e * s) for e, v in enumerate(values)]


def _pairing_sequence(kind: str, ctx: PairingContext, Y: Testable, n_terms: int, X=None):
    X = ctx.X if X is None else X
    if kind == "chi":
        raw = [_chi(lf(X, e), Y) for e in range(n_terms)]
        return _normalized(raw, ctx.p, ctx.s)
    if kind == "xi_upper":
        raw = [_xi(lf(X, e), Y) for e in range(n_terms)]
        return _normalized(raw, ctx.p, ctx.s)
    if kind == "xi_lower":
        if not isinstance(Y, OmegaComplex):
            raise UnsupportedRingError("the lower Euler-form analog needs an omega complex")
        t = Y.ring.krull_dim - support_dim(Y.as_complex())
        raw = [_xi(X, g_on_omega(Y, e)) for e in range(n_terms)]
        return _normalized(raw, ctx.p, t)
    raise ValueError(f"unknown pairing kind {kind!r}")


def phi_sequence(ctx: PairingContext, Y: Testable, u: int) -> list[Fraction]:
    """p^(-e s) chi(lf(X, e), Y) for e = 0..u."""
    if u < 0:
        raise ValueError("order must be non-negative")
    if Y not in ctx.tests:
        ctx.add_test(Y)
    return _pairing_sequence("chi", ctx, Y, u + 1)


def _default_order(kind, ctx, Y):
    if kind == "xi_lower":
        return vdim_bound(Y)
    return max(0, ctx.s - 2)


def decompose(ctx: PairingContext, Y: Testable, u: int | None = None, kind: str = "chi",
              validate: bool = True, X: Complex | None = None) -> EigenDecomposition:
    """Vandermonde eigen-decomposition of the normalized pairing sequence.

    With ``validate`` the pairing at e = u + 1 is computed directly and
    must match the prediction, else :class:`OrderTooSmallError`.
    """
    if not any(Y is T for T in ctx.tests):
        ctx.add_test(Y)
    if u is None:
        u = _default_order(kind, ctx, Y)
    n_terms = u + 2 if validate else u + 1
    seq = _pairing_sequence(kind, ctx, Y, n_terms, X)
    comps = decompose_sequence(seq[:u + 1], ctx.p)
    dec = EigenDecomposition(ctx.p, u, seq[:u + 1], comps)
    if validate:
        dec.held_out[u + 1] = seq[u + 1]
        if not dec.consistent:
            raise OrderTooSmallError(
                f"order {u} predicts {dec.predicted(u + 1)} at e={u + 1}, computed {seq[u + 1]}")
    return dec


def dutta(ctx: PairingContext, Y: Testable, u: int | None = None) -> Fraction:
    """chi_infinity(X, Y): the degree-0 eigencomponent of the chi pairing."""
    return decompose(ctx, Y, u).components[0]


def xi_analogs(ctx: PairingContext, Y: Testable, u: int | None = None):
    """(xi^infinity, xi_infinity or None) as degree-0 eigencomponents."""
    upper = decompose(ctx, Y, u, kind="xi_upper").components[0]
    lower = None
    if isinstance(Y, OmegaComplex):
        lower = decompose(ctx, Y, u, kind="xi_lower").components[0]
    return upper, lower


# checkers --------------------------------------------------------------------

@dataclass
class SelfDualityVerdict:
    passed: bool
    records: list

    def __bool__(self):
        return self.passed


def check_self_duality(ctx: PairingContext, u: int | None = None) -> SelfDualityVerdict:
    """chi(X,Y) = (-1)^s xi(X,Y) and (X^*)^(i) = (-1)^(i+s) X^(i) for every test Y."""
    if not ctx.tests:
        raise ValueError("self-duality check needs at least one test object")
    sign = -1 if ctx.s % 2 else 1
    Xs = star_dual(ctx.X)
    records = []
    for Y in ctx.tests:
        c, x = _chi(ctx.X, Y), _xi(ctx.X, Y)
        dec = decompose(ctx, Y, u)
        dec_star = decompose(ctx, Y, dec.order, X=Xs)
        expected = [(-1) ** (i + ctx.s) * ci for i, ci in enumerate(dec.components)]
        rec = {
            "chi": c, "xi": x, "identity": c == sign * x,
            "components": dec.components, "star_components": dec_star.components,
            "components_match": dec_star.components == expected,
        }
        records.append(rec)
    return SelfDualityVerdict(all(r["identity"] and r["components_match"] for r in records), records)


@dataclass
class NumericalVanishingVerdict:
    passed: bool
    length: int
    f_side: list | None
    g_side: list | None
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def check_numerical_vanishing(ring: GradedRing, N: PresentedModule, e_max: int,
                              omega: CanonicalModule | None = None) -> NumericalVanishingVerdict:
    """Frobenius scaling of Euler characteristics for a finite-length module N.

    F-side: euler_char(lf(F, e)) = p^(e dim R) length N for a finite free
    resolution F of N.  G-side (Cohen-Macaulay R): the omega complex
    Y = Hom(F, omega) satisfies euler_char(G^e Y) = p^(e dim R) euler_char(Y).
    """
    length = N.length()
    if length == INFINITE:
        raise SupportViolation("N must have finite length")
    p, d = ring.p, ring.krull_dim
    notes = []
    res = resolve(N, ring.nvars + 1)
    if not res.terminated:
        notes.append("N has infinite projective dimension; both sides skipped")
        return NumericalVanishingVerdict(False, length, None, None, notes)
    F = res.complex
    f_side = []
    for e in range(1, e_max + 1):
        lhs = euler_char(lf(F, e))
        rhs = Fraction(p) ** (e * d) * length
        f_side.append((e, lhs, rhs))
    g_side = None
    if omega is None:
        try:
            omega = canonical_module(ring)
        except UnsupportedRingError as exc:
            notes.append(f"G-side skipped: {exc}")
    if omega is not None:
        Y = hom_into_omega(F, OmegaComplex.omega_in_degree(omega))
        base = euler_char(Y)
        g_side = []
        for e in range(1, e_max + 1):
            lhs = euler_char(g_on_omega(Y, e))
            g_side.append((e, lhs, Fraction(p) ** (e * d) * base))
    ok = all(l == r for _, l, r in f_side) and all(l == r for _, l, r in (g_side or []))
    return NumericalVanishingVerdict(ok, length, f_side, g_side, notes)


# aggregate report --------------------------------------------------------------

@dataclass
class MultiplicityReport:
    chi: Fraction
    xi: Fraction
    chi_infinity: Fraction
    xi_upper_infinity: Fraction
    xi_lower_infinity: Fraction | None
    dim_X: int
    dim_Y: object
    dim_R: int
    codim_X: int
    vdim_bound: int
    self_dual: bool
    vanishing: bool | None
    warnings: list


def multiplicity_report(ctx: PairingContext, Y: Testable, u: int | None = None) -> MultiplicityReport:
    if not any(Y is T for T in ctx.tests):
        ctx.add_test(Y)
    c, x = _chi(ctx.X, Y), _xi(ctx.X, Y)
    upper, lower = xi_analogs(ctx, Y, u)
    dim_y = _dim(Y)
    dim_r = ctx.X.ring.krull_dim
    dim_x = dim_r - ctx.s
    strict = dim_y == NEG_INF or dim_x + dim_y < dim_r
    return MultiplicityReport(
        chi=c, xi=x, chi_infinity=dutta(ctx, Y, u), xi_upper_infinity=upper,
        xi_lower_infinity=lower, dim_X=dim_x, dim_Y=dim_y, dim_R=dim_r, codim_X=ctx.s,
        vdim_bound=max(0, ctx.s - 2), self_dual=c == (-1) ** ctx.s * x,
        vanishing=(c == 0) if strict else None, warnings=list(ctx.warnings))


def is_finite(value) -> bool:
    return not (isinstance(value, float) and math.isinf(value))
