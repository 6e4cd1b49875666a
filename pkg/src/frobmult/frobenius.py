"""Frobenius functors on free complexes and on canonical-module complexes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .complexes import Complex, ComplexError, hom_complex, resolve, tensor
from .groebner import PresentedModule, quotient_module
from .poly import GradedRing, Poly, frobenius_power


class UnsupportedRingError(ValueError):
    """The ring lacks a property (e.g. Cohen-Macaulay) an operation needs."""


def bracket_power(gens: Sequence[Poly], e: int) -> list[Poly]:
    """Generators of the Frobenius power I^[p^e]."""
    return [frobenius_power(g, e) for g in gens]


def _frobenius_matrix(ring: GradedRing, A, e: int):
    return [[ring.normal_form(frobenius_power(f, e)) for f in row] for row in A]


def lf(X: Complex, e: int) -> Complex:
    """Frobenius functor on a free complex: entries to the p^e, twists times p^e."""
    if e < 0:
        raise ValueError("e must be non-negative")
    if not X.is_free():
        raise ComplexError("lf acts on free complexes")
    if e == 0:
        return X
    ring = X.ring
    q = ring.p ** e
    twists = {i: [t * q for t in M.twists] for i, M in X.terms.items()}
    maps = {i: _frobenius_matrix(ring, A, e) for i, A in X.maps.items()}
    return Complex.free(ring, twists, maps, check=False)


# canonical module ------------------------------------------------------------

@dataclass
class CanonicalModule:
    """omega_R = Ext^c_S(R, S(-n)) with c = codim of R in S."""

    module: PresentedModule
    codim: int

    @property
    def ring(self) -> GradedRing:
        return self.module.ring

    def is_free_rank_one(self) -> bool:
        return self.module.rank == 1 and self.module.is_free()

    @property
    def a_invariant(self) -> int | None:
        """a with omega = R(a), when omega is free of rank one."""
        return self.module.twists[0] if self.is_free_rank_one() else None


def is_cohen_macaulay(ring: GradedRing) -> bool:
    S = ring.ambient
    res = resolve(quotient_module(S, ring.ideal), ring.nvars + 1)
    return res.terminated and res.length == ring.nvars - ring.krull_dim


def canonical_module(ring: GradedRing) -> CanonicalModule:
    """Presentation of omega_R from a minimal S-free resolution of R.

    Raises :class:`UnsupportedRingError` unless that resolution has length
    exactly codim R (the Cohen-Macaulay case).
    """
    if ring.krull_dim < 0:
        raise UnsupportedRingError("the zero ring has no canonical module")
    S = ring.ambient
    n = ring.nvars
    c = n - ring.krull_dim
    res = resolve(quotient_module(S, ring.ideal), n + 1)
    F = res.complex
    if not res.terminated or res.length != c:
        raise UnsupportedRingError(
            f"ring is not Cohen-Macaulay: projective dimension {res.length} over the "
            f"polynomial ring, codimension {c}")
    top = F.term(c)
    # Hom(S(t), S(-n)) = S(-n - t)
    twists = [-n - t for t in top.twists]
    rels = []
    if c > 0:
        D = F.d(c)
        for l in range(F.rank(c - 1)):
            rels.append([ring.normal_form(ring.poly(D[l][k])) for k in range(top.rank)])
    return CanonicalModule(PresentedModule(ring, twists, rels), c)


# omega complexes -------------------------------------------------------------

@dataclass
class OmegaComplex:
    """A complex whose i-th term is sum_k omega(t_k), maps given by R-matrices.

    ``skeleton`` is a free complex holding the twists t_k and the matrices;
    its d o d = 0 over R, so every entry acts on omega by multiplication.
    """

    skeleton: Complex
    omega: CanonicalModule

    def __post_init__(self):
        if not self.skeleton.is_free():
            raise ComplexError("omega complex skeleton must be free")
        if self.skeleton.ring != self.omega.ring:
            raise ComplexError("omega complex over a different ring")
        if not self.skeleton.dd_is_zero():
            raise ComplexError("omega complex matrices do not compose to zero")

    @property
    def ring(self) -> GradedRing:
        return self.skeleton.ring

    def as_complex(self) -> Complex:
        """The presented complex skeleton (x) omega."""
        return tensor(self.skeleton, Complex.from_module(self.omega.module))

    @classmethod
    def omega_in_degree(cls, omega: CanonicalModule, degree: int = 0, twist: int = 0) -> "OmegaComplex":
        return cls(Complex.free(omega.ring, {degree: [twist]}), omega)

    @classmethod
    def from_matrices(cls, omega: CanonicalModule, twists: Mapping[int, Sequence[int]],
                      maps: Mapping) -> "OmegaComplex":
        return cls(Complex.free(omega.ring, twists, maps), omega)


def g_on_omega(Y: OmegaComplex, e: int) -> OmegaComplex:
    """The analogous Frobenius functor: entries to the p^e, twists times p^e."""
    return OmegaComplex(lf(Y.skeleton, e), Y.omega)


def hom_into_omega(X: Complex, Y: OmegaComplex) -> OmegaComplex:
    """Hom(X, Y) for free X, using Hom(R(s), omega(t)) = omega(t - s)."""
    return OmegaComplex(hom_complex(X, Y.skeleton), Y.omega)


def tensor_omega(X: Complex, Y: OmegaComplex) -> OmegaComplex:
    return OmegaComplex(tensor(X, Y.skeleton), Y.omega)
