"""Sparse polynomials over F_p and standard-graded quotient rings.

Monomials are exponent tuples.  The monomial order is graded reverse
lexicographic with the declared variable order (first variable largest).
"""

from __future__ import annotations

import ast
import itertools
import math
from typing import Iterable, Mapping

from .exact import is_prime, MAX_PRIME

Exps = tuple  # tuple[int, ...]

NEG_INF = -math.inf


class RingMismatchError(ValueError):
    pass


class PolyParseError(ValueError):
    pass


def mono_key(e: Exps):
    """Sort key realizing degrevlex: larger key means larger monomial."""
    return (sum(e), tuple(-x for x in reversed(e)))


def mono_divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list[Exps]:
    """All exponent vectors of total degree ``d`` in ``n`` variables, descending."""
    if d < 0:
        return []
    if n == 0:
        return [()] if d == 0 else []
    out = []
    for cut in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        e = []
        for c in cut:
            e.append(c - prev - 1)
            prev = c
        e.append(d + n - 2 - prev)
        out.append(tuple(e))
    out.sort(key=mono_key, reverse=True)
    return out


class Poly:
    """A polynomial with coefficients in F_p, stored as {exponents: coeff}.

    Arithmetic happens in the ambient polynomial ring; use
    :meth:`GradedRing.normal_form` to pass to the quotient.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "GradedRing", terms: Mapping | None = None):
        self.ring = ring
        p = ring.p
        clean = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # arithmetic -----------------------------------------------------------

    def _check(self, other) -> "Poly":
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.ring.same_ambient(other.ring):
            raise RingMismatchError("polynomials from different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar_mul(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = (out.get(e, 0) + c1 * c2) % p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.ring, out)

    __rmul__ = __mul__

    def scalar_mul(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if c == 0:
            return Poly._raw(self.ring, {})
        return Poly._raw(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_monomial(self, m: Exps, c: int = 1) -> "Poly":
        p = self.ring.p
        c %= p
        if c == 0:
            return Poly._raw(self.ring, {})
        return Poly._raw(self.ring, {mono_mul(e, m): v * c % p for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # structure ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring.same_ambient(other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | float:
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def leading(self):
        """(exponents, coefficient) of the degrevlex leading term."""
        e = max(self.terms, key=mono_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def frobenius_power(f: Poly, e: int) -> Poly:
    """``f ** (p**e)`` computed termwise (coefficients are fixed by Frobenius on F_p)."""
    if e < 0:
        raise ValueError("e must be non-negative")
    q = f.ring.p ** e
    return Poly._raw(f.ring, {tuple(x * q for x in m): c for m, c in f.terms.items()})


# parsing ------------------------------------------------------------------

def parse_poly(text: str, ring: "GradedRing") -> Poly:
    """Parse ``x^2*y - 3*z`` style input (ints, names, + - * ^, parentheses)."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return ring.const(text)
        raise PolyParseError(f"not a polynomial string: {text!r}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolyParseError(f"malformed polynomial {text!r}") from exc
    index = {name: i for i, name in enumerate(ring.names)}

    def walk(node) -> Poly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return ring.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in index:
                raise PolyParseError(f"unknown variable {node.id!r} in {text!r}")
            return ring.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and type(node.right.value) is int):
                    raise PolyParseError(f"exponent must be a non-negative integer in {text!r}")
                if node.right.value < 0:
                    raise PolyParseError(f"negative exponent in {text!r}")
                return walk(node.left) ** node.right.value
            ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
                   ast.Mult: lambda a, b: a * b}
            for kind, fn in ops.items():
                if isinstance(node.op, kind):
                    return fn(walk(node.left), walk(node.right))
        raise PolyParseError(f"unsupported syntax in {text!r}")

    return walk(tree)


# rings --------------------------------------------------------------------

class GradedRing:
    """F_p[x_1..x_n]/I for a homogeneous ideal I.

    The reduced Groebner basis of I and the Krull dimension are computed at
    construction.
    """

    def __init__(self, p: int, names: Iterable[str], ideal: Iterable = ()):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if p >= MAX_PRIME:
            raise ValueError(f"prime {p} exceeds the supported word size")
        self.p = p
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for name in self.names:
            if not name.isidentifier():
                raise ValueError(f"bad variable name {name!r}")
        self.nvars = len(self.names)
        gens = []
        for g in ideal:
            f = parse_poly(g, self) if isinstance(g, (str, int)) else Poly(self, g.terms)
            if not f.is_homogeneous():
                raise ValueError(f"ideal generator {f} is not homogeneous")
            if f:
                gens.append(f)
        self.ideal = tuple(gens)
        self._nf_cache: dict = {}
        self._basis_cache: dict = {}

        from . import groebner

        self.gb = groebner.ideal_groebner_basis(self, self.ideal)
        self.lead_monomials = tuple(g.leading()[0] for g in self.gb)
        self.krull_dim = groebner.monomial_dimension(self.lead_monomials, self.nvars)

    # construction helpers ------------------------------------------------

    def same_ambient(self, other: "GradedRing") -> bool:
        return self is other or (self.p == other.p and self.names == other.names)

    def __eq__(self, other):
        if not isinstance(other, GradedRing):
            return NotImplemented
        return self is other or (self.same_ambient(other) and
                                 [g.terms for g in self.gb] == [g.terms for g in other.gb])

    def __hash__(self):
        return hash((self.p, self.names, len(self.gb)))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal) or "0"
        return f"GradedRing(F_{self.p}[{','.join(self.names)}]/({gens}))"

    @property
    def ambient(self) -> "GradedRing":
        """The polynomial ring S this ring is a quotient of."""
        if not self.ideal:
            return self
        if not hasattr(self, "_ambient"):
            self._ambient = GradedRing(self.p, self.names, ())
        return self._ambient

    def is_polynomial_ring(self) -> bool:
        return not self.gb

    def const(self, c: int) -> Poly:
        return Poly(self, {(0,) * self.nvars: c})

    def zero(self) -> Poly:
        return Poly._raw(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def var(self, name: str) -> Poly:
        i = self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly._raw(self, {tuple(e): 1})

    def gens(self) -> list[Poly]:
        return [self.var(n) for n in self.names]

    def monomial(self, e: Exps, c: int = 1) -> Poly:
        return Poly(self, {tuple(e): c})

    def poly(self, f) -> Poly:
        if isinstance(f, Poly):
            if not self.same_ambient(f.ring):
                raise RingMismatchError("polynomial from a different ring")
            return Poly._raw(self, dict(f.terms))
        return parse_poly(f, self) if isinstance(f, str) else self.const(int(f))

    def __call__(self, f) -> Poly:
        """Parse/coerce and reduce to normal form."""
        return self.normal_form(self.poly(f))

    # quotient structure ---------------------------------------------------

    def is_standard(self, e: Exps) -> bool:
        return not any(mono_divides(m, e) for m in self.lead_monomials)

    def _nf_monomial(self, e: Exps) -> dict:
        hit = self._nf_cache.get(e)
        if hit is None:
            if self.is_standard(e):
                hit = {e: 1}
            else:
                from .groebner import reduce_poly_terms
                hit = reduce_poly_terms({e: 1}, self)
            self._nf_cache[e] = hit
        return hit

    def normal_form(self, f: Poly) -> Poly:
        if not self.gb:
            return Poly._raw(self, dict(f.terms)) if f.ring is not self else f
        p = self.p
        out: dict = {}
        for e, c in f.terms.items():
            for e2, c2 in self._nf_monomial(e).items():
                v = (out.get(e2, 0) + c * c2) % p
                if v:
                    out[e2] = v
                else:
                    out.pop(e2, None)
        return Poly._raw(self, out)

    def monomial_basis(self, d: int) -> list[Exps]:
        if d < 0:
            return []
        hit = self._basis_cache.get(d)
        if hit is None:
            hit = [e for e in monomials_of_degree(self.nvars, d) if self.is_standard(e)]
            self._basis_cache[d] = hit
        return hit

    def hilbert_function(self, d: int) -> int:
        return len(self.monomial_basis(d))

    def socle_degree(self) -> int | None:
        """Top degree of a finite-length ring, ``None`` when dim > 0."""
        if self.krull_dim > 0:
            return None
        if self.krull_dim == NEG_INF:
            return -1
        d = 0
        while self.monomial_basis(d + 1):
            d += 1
        return d


def normal_form(f: Poly, ring: GradedRing) -> Poly:
    return ring.normal_form(f)


def monomial_basis(ring: GradedRing, d: int) -> list[Exps]:
    return ring.monomial_basis(d)


def polynomial_ring(p: int, names) -> GradedRing:
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",")] if "," in names else list(names)
    return GradedRing(p, names, ())
