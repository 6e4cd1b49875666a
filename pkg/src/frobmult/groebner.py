"""Buchberger's algorithm for homogeneous submodules of graded free modules.

Internally a module element of S^r is a dict from *term keys* to F_p
coefficients.  A term key for ``x^e`` in position ``i`` is::

    (-i, |e|, -e[n-1], ..., -e[0])

so that plain tuple comparison is the position-over-term order atop
degrevlex (lower position index is larger).  Keys turn monomial
multiplication into elementwise addition and divisibility into an
elementwise comparison.

Computations over R = S/I always adjoin I * (ambient basis) so a single
engine handles both S and R.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from operator import add, sub
from typing import Iterable, Sequence

from .poly import GradedRing, Poly, NEG_INF

INFINITE = math.inf


# term keys ----------------------------------------------------------------

def encode(pos: int, e) -> tuple:
    return (-pos, sum(e)) + tuple(-x for x in reversed(e))


def decode(key: tuple) -> tuple[int, tuple]:
    return -key[0], tuple(-x for x in reversed(key[2:]))


def _divides(a: tuple, b: tuple) -> bool:
    """Key ``a`` divides key ``b`` (same position, exponents below)."""
    if a[0] != b[0]:
        return False
    for x, y in zip(a[2:], b[2:]):
        if x < y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    neg = tuple(min(x, y) for x, y in zip(a[2:], b[2:]))
    return (a[0], -sum(neg)) + neg


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a[2:], b[2:]))


def _add_scaled(f: dict, g: dict, c: int, delta, p: int) -> None:
    """In place: ``f += c * x^delta * g``; ``delta`` is a key difference or None."""
    for k, v in g.items():
        if delta is not None:
            k = tuple(map(add, k, delta))
        nv = (f.get(k, 0) + c * v) % p
        if nv:
            f[k] = nv
        else:
            f.pop(k, None)


def _shift(g: dict, delta, c: int, p: int) -> dict:
    return {tuple(map(add, k, delta)): v * c % p for k, v in g.items()}


def _monic(f: dict, p: int) -> dict:
    inv = pow(f[max(f)], -1, p)
    return {k: v * inv % p for k, v in f.items()}


class _Basis:
    """A growing list of monic elements indexed by leading position."""

    def __init__(self):
        self.elems: list[tuple[tuple, dict]] = []
        self.by_pos: dict[int, list[tuple[tuple, dict]]] = {}

    def add(self, lead, vec):
        self.elems.append((lead, vec))
        self.by_pos.setdefault(lead[0], []).append((lead, vec))

    def reducer(self, t):
        for lead, vec in self.by_pos.get(t[0], ()):
            if _divides(lead, t):
                return lead, vec
        return None


def _reduce(f: dict, basis: _Basis, p: int, full: bool = True) -> dict:
    f = dict(f)
    rem: dict = {}
    while f:
        t = max(f)
        c = f[t]
        hit = basis.reducer(t)
        if hit is None:
            if not full:
                f.update(rem)
                return f
            rem[t] = c
            del f[t]
            continue
        lead, vec = hit
        _add_scaled(f, vec, p - c, tuple(map(sub, t, lead)), p)
    return rem


def _term_degree(key, gdeg) -> int:
    return key[1] + gdeg[-key[0]]


def _buchberger(gens: Iterable[dict], p: int, gdeg: Sequence[int], rank: int) -> list[tuple[tuple, dict]]:
    """Reduced Groebner basis (list of (lead, monic vector), ascending leads)."""
    basis = _Basis()
    queue: list = []
    counter = itertools.count()
    for g in gens:
        if g:
            heapq.heappush(queue, (_term_degree(max(g), gdeg), next(counter), None, g))
    alive: dict[tuple[int, int], tuple] = {}
    product_ok = rank == 1
    while queue:
        _, _, pair, vec = heapq.heappop(queue)
        if pair is not None:
            if alive.pop(pair, None) is None:
                continue
            i, j = pair
            (li, gi), (lj, gj) = basis.elems[i], basis.elems[j]
            L = vec
            s = _shift(gi, tuple(map(sub, L, li)), 1, p)
            _add_scaled(s, gj, p - 1, tuple(map(sub, L, lj)), p)
            vec = s
        h = _reduce(vec, basis, p)
        if not h:
            continue
        h = _monic(h, p)
        lead = max(h)
        k = len(basis.elems)
        # chain criterion on pending pairs
        for (i, j), L in list(alive.items()):
            if _divides(lead, L):
                li, lj = basis.elems[i][0], basis.elems[j][0]
                if _lcm(li, lead) != L and _lcm(lj, lead) != L:
                    del alive[(i, j)]
        basis.add(lead, h)
        for i, (li, _) in enumerate(basis.elems[:-1]):
            if li[0] != lead[0]:
                continue
            if product_ok and _coprime(li, lead):
                continue
            L = _lcm(li, lead)
            alive[(i, k)] = L
            heapq.heappush(queue, (_term_degree(L, gdeg), next(counter), (i, k), L))
    return _interreduce(basis.elems, p)


def _interreduce(elems, p):
    elems = sorted(elems, key=lambda t: t[0])
    keep = []
    for idx, (lead, vec) in enumerate(elems):
        if any(_divides(l2, lead) for j, (l2, _) in enumerate(elems) if j != idx and (l2 != lead or j < idx)):
            continue
        keep.append((lead, vec))
    out = []
    for idx, (lead, vec) in enumerate(keep):
        others = _Basis()
        for j, (l2, v2) in enumerate(keep):
            if j != idx:
                others.add(l2, v2)
        tail = dict(vec)
        del tail[lead]
        red = _reduce(tail, others, p)
        red[lead] = 1
        out.append((lead, red))
    return out


# monomial ideal combinatorics -------------------------------------------

def monomial_dimension(leads: Sequence[tuple], nvars: int) -> int | float:
    """Krull dimension of S/L for the monomial ideal L with the given generators."""
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in leads]
    if any(not s for s in supports):
        return NEG_INF
    for size in range(nvars, -1, -1):
        for U in itertools.combinations(range(nvars), size):
            U = set(U)
            if not any(s <= U for s in supports):
                return size
    return NEG_INF


def monomial_colength(leads: Sequence[tuple], nvars: int) -> int | float:
    """Number of monomials outside the monomial ideal L (``inf`` if infinite)."""
    if monomial_dimension(leads, nvars) > 0:
        return INFINITE
    return _colength(tuple(sorted(set(tuple(e) for e in leads))), nvars)


@lru_cache(maxsize=4096)
def _colength(leads: tuple, n: int) -> int:
    if any(not any(e) for e in leads):
        return 0
    if n == 1:
        return min(e[0] for e in leads)
    bound = min(e[-1] for e in leads if not any(e[:-1]))
    total = 0
    for k in range(bound):
        sub_leads = {e[:-1] for e in leads if e[-1] <= k}
        total += _colength(_minimalize(sub_leads), n - 1)
    return total


def _minimalize(gens) -> tuple:
    gens = sorted(gens, key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


# public types ---------------------------------------------------------------

@dataclass(frozen=True)
class ModuleElement:
    """An element of a graded free module sum_i R(twists[i])."""

    components: tuple
    twists: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "twists", tuple(self.twists))
        if len(self.components) != len(self.twists):
            raise ValueError("component/twist count mismatch")

    @property
    def ring(self) -> GradedRing:
        return self.components[0].ring

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def degree(self):
        """Degree of a homogeneous element (``None`` for zero)."""
        for c, t in zip(self.components, self.twists):
            if c:
                return c.degree() - t
        return None

    def is_homogeneous(self) -> bool:
        degs = set()
        for c, t in zip(self.components, self.twists):
            for e in c.terms:
                degs.add(sum(e) - t)
        return len(degs) <= 1

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def to_raw(components: Sequence[Poly], offset: int = 0) -> dict:
    out = {}
    for i, f in enumerate(components):
        for e, c in f.terms.items():
            out[encode(i + offset, e)] = c
    return out


def from_raw(vec: dict, ring: GradedRing, rank: int, offset: int = 0) -> list[Poly]:
    comps = [dict() for _ in range(rank)]
    for k, c in vec.items():
        pos, e = decode(k)
        comps[pos - offset][e] = c
    return [Poly._raw(ring, d) for d in comps]


def _ideal_multiples(ring: GradedRing, rank: int) -> list[dict]:
    """Raw generators of I * S^rank."""
    out = []
    for g in ring.gb:
        for i in range(rank):
            out.append(to_raw([g], offset=i))
    return out


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of a homogeneous submodule of sum_i S(twists[i])."""

    ring: GradedRing
    twists: tuple
    raw: list = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def gdeg(self) -> list[int]:
        return [-t for t in self.twists]

    @property
    def generators(self) -> list[ModuleElement]:
        return [ModuleElement(from_raw(v, self.ring, self.rank), self.twists) for _, v in self.raw]

    def leading_terms(self) -> list[tuple[int, tuple]]:
        return [decode(lead) for lead, _ in self.raw]

    def _basis(self) -> _Basis:
        b = _Basis()
        for lead, vec in self.raw:
            b.add(lead, vec)
        return b

    def reduce_raw(self, vec: dict) -> dict:
        return _reduce(vec, self._basis(), self.ring.p)

    def reduce(self, el) -> ModuleElement:
        comps = el.components if isinstance(el, ModuleElement) else list(el)
        red = self.reduce_raw(to_raw(comps))
        return ModuleElement(from_raw(red, self.ring, self.rank), self.twists)

    def contains(self, el) -> bool:
        comps = el.components if isinstance(el, ModuleElement) else list(el)
        return not self.reduce_raw(to_raw(comps))

    def s_pairs_reduce_to_zero(self) -> bool:
        p = self.ring.p
        basis = self._basis()
        for (li, gi), (lj, gj) in itertools.combinations(self.raw, 2):
            if li[0] != lj[0]:
                continue
            L = _lcm(li, lj)
            s = _shift(gi, tuple(map(sub, L, li)), 1, p)
            _add_scaled(s, gj, p - 1, tuple(map(sub, L, lj)), p)
            if _reduce(s, basis, p):
                return False
        return True

    def lead_monomials_by_position(self) -> list[list[tuple]]:
        out = [[] for _ in range(self.rank)]
        for pos, e in self.leading_terms():
            out[pos].append(e)
        return out

    def quotient_dim(self) -> int | float:
        """Krull dimension of the quotient module S^r / (this submodule)."""
        n = self.ring.nvars
        return max((monomial_dimension(L, n) for L in self.lead_monomials_by_position()),
                   default=NEG_INF)

    def quotient_length(self) -> int | float:
        n = self.ring.nvars
        total = 0
        for L in self.lead_monomials_by_position():
            c = monomial_colength(L, n)
            if c == INFINITE:
                return INFINITE
            total += c
        return total


def _check_homogeneous(vecs, gdeg):
    for v in vecs:
        degs = {_term_degree(k, gdeg) for k in v}
        if len(degs) > 1:
            raise ValueError("generator is not homogeneous for the given twists")


def groebner_raw(ring: GradedRing, twists: Sequence[int], vecs: Iterable[dict]) -> GroebnerBasis:
    twists = tuple(twists)
    gdeg = [-t for t in twists]
    vecs = [v for v in vecs if v]
    _check_homogeneous(vecs, gdeg)
    raw = _buchberger(vecs, ring.p, gdeg, len(twists))
    return GroebnerBasis(ring.ambient, twists, raw)


def buchberger(gens: Sequence, twists: Sequence[int] | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule (or ideal) spanned by ``gens``.

    ``gens`` holds :class:`ModuleElement` values, or plain polynomials for
    an ideal.  Computation is in the ambient polynomial ring.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    if isinstance(gens[0], Poly):
        twists = (0,) if twists is None else tuple(twists)
        vecs = [to_raw([g]) for g in gens]
    else:
        twists = gens[0].twists if twists is None else tuple(twists)
        vecs = [to_raw(g.components) for g in gens]
    return groebner_raw(ring, twists, vecs)


def ideal_groebner_basis(ring: GradedRing, gens: Sequence[Poly]) -> list[Poly]:
    raw = _buchberger([to_raw([g]) for g in gens], ring.p, [0], 1)
    ring._gb_raw = _Basis()
    for lead, vec in raw:
        ring._gb_raw.add(lead, vec)
    return [from_raw(v, ring, 1)[0] for _, v in raw]


def reduce_poly_terms(terms: dict, ring: GradedRing) -> dict:
    """Normal form of a polynomial (as an exponent dict) modulo the ring ideal."""
    red = _reduce({encode(0, e): c for e, c in terms.items()}, ring._gb_raw, ring.p)
    return {decode(k)[1]: c for k, c in red.items()}


def krull_dim(gb) -> int | float:
    """Krull dimension of S/I for an ideal Groebner basis (or a ring)."""
    if isinstance(gb, GradedRing):
        return gb.krull_dim
    if gb.rank != 1:
        raise ValueError("krull_dim expects an ideal (ambient rank 1)")
    return monomial_dimension([e for _, e in gb.leading_terms()], gb.ring.nvars)


# elimination ----------------------------------------------------------------

def _eliminate(ring: GradedRing, first_gdeg: Sequence[int], tagged: Sequence[dict],
               tag_gdeg: Sequence[int], untagged: Sequence[dict]) -> list[tuple[tuple, dict]]:
    """GB of {(v, w) : w in S^m, v - sum w_j tagged_j in <untagged>} restricted to v = 0.

    Equivalently the module of w with ``sum w_j tagged_j`` in the span of
    ``untagged``; returned as (lead, vector) pairs in tag coordinates,
    already a Groebner basis for the restricted order.
    """
    b = len(first_gdeg)
    gdeg = list(first_gdeg) + list(tag_gdeg)
    gens = []
    for j, v in enumerate(tagged):
        g = dict(v)
        g[encode(b + j, (0,) * ring.nvars)] = 1
        gens.append(g)
    gens.extend(v for v in untagged if v)
    raw = _buchberger(gens, ring.p, gdeg, len(gdeg))
    out = []
    for lead, vec in raw:
        if -lead[0] >= b:
            moved = {(k[0] + b,) + k[1:]: c for k, c in vec.items()}
            out.append(((lead[0] + b,) + lead[1:], moved))
    return out


def syzygies(gb, twists: Sequence[int] | None = None) -> list[ModuleElement]:
    """Generators of the first syzygy module of a list of generators.

    ``gb`` may be a :class:`GroebnerBasis` or a list of elements; the
    returned syzygies live in sum_j S(-deg g_j).
    """
    if isinstance(gb, GroebnerBasis):
        ring, amb_twists = gb.ring, gb.twists
        vecs = [v for _, v in gb.raw]
    else:
        gens = list(gb)
        if not gens:
            return []
        if isinstance(gens[0], Poly):
            ring, amb_twists = gens[0].ring, (0,)
            vecs = [to_raw([g]) for g in gens]
        else:
            ring, amb_twists = gens[0].ring, gens[0].twists
            vecs = [to_raw(g.components) for g in gens]
    gdeg = [-t for t in amb_twists]
    tag_gdeg = [(_term_degree(max(v), gdeg) if v else 0) for v in vecs]
    rows = _eliminate(ring.ambient, gdeg, vecs, tag_gdeg, [])
    tag_twists = tuple(-d for d in tag_gdeg)
    return [ModuleElement(from_raw(v, ring.ambient, len(vecs)), tag_twists) for _, v in rows]


# presented modules ----------------------------------------------------------

def _columns_raw(columns, rank):
    return [to_raw(col) for col in columns] if rank else [{} for _ in columns]


class PresentedModule:
    """coker(relations) for a homogeneous relation matrix over R.

    ``relations`` is a list of columns, each a list of ``rank`` polynomials.
    Twists follow ``R(t)``: a generator with twist t sits in degree -t.
    """

    def __init__(self, ring: GradedRing, twists: Sequence[int], relations: Sequence[Sequence] = ()):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)
        rels = []
        for col in relations:
            col = [ring.normal_form(ring.poly(f)) for f in col]
            if len(col) != self.rank:
                raise ValueError("relation has the wrong length")
            if any(col):
                rels.append(col)
        self.relations = rels
        _check_homogeneous([to_raw(c) for c in rels], self.gdeg)
        self._gb = None

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def gdeg(self) -> list[int]:
        return [-t for t in self.twists]

    def is_free(self) -> bool:
        return not self.relations

    def submodule_raw(self) -> list[dict]:
        """Raw generators of relations + I * ambient in S^rank."""
        return [to_raw(c) for c in self.relations] + _ideal_multiples(self.ring, self.rank)

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner_raw(self.ring, self.twists, self.submodule_raw())
        return self._gb

    def length(self) -> int | float:
        return self.gb().quotient_length()

    def dim(self) -> int | float:
        return self.gb().quotient_dim()

    def twisted(self, shift: int) -> "PresentedModule":
        return PresentedModule(self.ring, [t + shift for t in self.twists], self.relations)

    def __repr__(self):
        return f"PresentedModule(twists={list(self.twists)}, relations={len(self.relations)})"


def module_length(M: PresentedModule) -> int | float:
    """Length of a presented module; ``inf`` unless it has Krull dimension 0."""
    return M.length()


def quotient_module(ring: GradedRing, gens: Sequence) -> PresentedModule:
    """The cyclic module R/J for J generated by ``gens``."""
    return PresentedModule(ring, [0], [[ring.poly(g)] for g in gens])


def kernel(A: Sequence[Sequence[Poly]], R: GradedRing, source_twists: Sequence[int],
           target_twists: Sequence[int], target_relations: Sequence[Sequence[Poly]] = ()) -> list[ModuleElement]:
    """Generators of ker(A : sum R(source) -> sum R(target) / target_relations).

    Lifted to S: syzygies of [columns of A | relations | I * basis],
    projected to the A coordinates.
    """
    a, b = len(source_twists), len(target_twists)
    cols = [to_raw([A[r][j] for r in range(b)]) for j in range(a)]
    gens = _kernel_raw(R, cols, source_twists, target_twists,
                       [to_raw(c) for c in target_relations])
    out = []
    for _, v in gens:
        v = nf_raw(v, R, a)
        if v:
            out.append(ModuleElement(from_raw(v, R, a), source_twists))
    return out


def nf_raw(vec: dict, R: GradedRing, rank: int) -> dict:
    """Componentwise normal form modulo the ring ideal."""
    if not R.gb:
        return vec
    return to_raw([R.normal_form(f) for f in from_raw(vec, R, rank)])


def _kernel_raw(R, cols, source_twists, target_twists, target_rel_raw):
    a = len(source_twists)
    tgt_gdeg = [-t for t in target_twists]
    if not target_twists:
        return [(encode(j, (0,) * R.nvars), {encode(j, (0,) * R.nvars): 1}) for j in range(a)]
    untagged = list(target_rel_raw) + _ideal_multiples(R, len(target_twists))
    return _eliminate(R, tgt_gdeg, cols, [-t for t in source_twists], untagged)


def subquotient_relations(R: GradedRing, twists: Sequence[int], kgens: Sequence[dict],
                          bgens: Sequence[dict]) -> tuple[list[int], list]:
    """Presentation of (K + B)/B for K, B inside sum S(twists); B must contain I * basis.

    Returns the generator degrees of the K generators and a Groebner
    basis (lead, vec) of the relation module among them.
    """
    gdeg = [-t for t in twists]
    kdeg = [_term_degree(max(v), gdeg) for v in kgens]
    rel = _eliminate(R, gdeg, kgens, kdeg, bgens)
    return kdeg, rel


def relation_length_and_dim(R: GradedRing, kdeg, rel) -> tuple:
    per_pos = [[] for _ in kdeg]
    for lead, _ in rel:
        pos, e = decode(lead)
        per_pos[pos].append(e)
    n = R.nvars
    dim = max((monomial_dimension(L, n) for L in per_pos), default=NEG_INF)
    if dim > 0:
        return INFINITE, dim
    total = sum(monomial_colength(L, n) for L in per_pos)
    return total, dim
