"""Gröbner bases and the ideal operations built on them.

The engine is a Buchberger loop with Gebauer–Möller pair pruning and the
normal selection strategy.  Over the rationals all work is done with
primitive integer polynomials (fraction-free reduction); over a prime field
basis elements are kept monic.  Results are converted back to
:class:`~singres.ring.Polynomial` with monic leading coefficients.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Callable, Iterable, Sequence, Union

from . import ring as _ring
from .errors import DomainError, SaturationCapExceeded, TermLimitExceeded
from .ring import Polynomial, Ring

SATURATION_CAP = 64


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; ``key(e)`` is a flat int tuple, larger means bigger.

    ``kind`` is one of ``lex``, ``deglex``, ``degrevlex``, ``weighted``
    (compare ``weights`` first, then ``tie``) or ``block`` (the variables in
    ``elim`` dominate, each block compared by ``tie``).
    """

    kind: str
    weights: tuple[int, ...] = ()
    tie: "MonomialOrder | None" = None
    elim: tuple[int, ...] = ()

    def key_function(self, n: int) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
        return _key_function(self, n)

    def key(self, e: Sequence[int]) -> tuple[int, ...]:
        return _key_function(self, len(e))(tuple(e))

    def __str__(self) -> str:
        if self.kind == "weighted":
            return f"weighted{self.weights}/{self.tie}"
        if self.kind == "block":
            return f"block{self.elim}/{self.tie}"
        return self.kind


LEX = MonomialOrder("lex")
DEGLEX = MonomialOrder("deglex")
DEGREVLEX = MonomialOrder("degrevlex")


def weighted(weights: Sequence[int], tie: MonomialOrder = DEGREVLEX) -> MonomialOrder:
    return MonomialOrder("weighted", tuple(weights), tie)


def block(elim: Iterable[int], inner: MonomialOrder = DEGREVLEX) -> MonomialOrder:
    return MonomialOrder("block", (), inner, tuple(sorted(elim)))


@lru_cache(maxsize=None)
def _key_function(order: MonomialOrder, n: int):
    kind = order.kind
    if kind == "lex":
        return lambda e: e
    if kind == "deglex":
        return lambda e: (sum(e),) + e
    if kind == "degrevlex":
        return lambda e: (sum(e),) + tuple([-x for x in e[::-1]])
    if kind == "weighted":
        w = order.weights
        if len(w) != n:
            raise DomainError(f"weight vector has length {len(w)}, ring has {n} variables")
        tie = _key_function(order.tie, n)
        return lambda e: (sum(a * b for a, b in zip(w, e)),) + tie(e)
    if kind == "block":
        first = order.elim
        rest = tuple(i for i in range(n) if i not in first)
        k1 = _key_function(order.tie, len(first))
        k2 = _key_function(order.tie, len(rest))
        return lambda e: k1(tuple([e[i] for i in first])) + k2(tuple([e[i] for i in rest]))
    raise DomainError(f"unknown monomial order {kind!r}")


# ---------------------------------------------------------------------------
# the fraction-free kernel
# ---------------------------------------------------------------------------


def _lcm_exp(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Kernel:
    """Reduction machinery for one (ring, order) pair on dict polynomials."""

    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.p = ring.field.p
        self.key = order.key_function(ring.ngens)

    # conversions -----------------------------------------------------------

    def to_internal(self, f: Polynomial) -> dict:
        if self.p:
            return self.normalize(dict(f.terms))
        den = 1
        for c in f.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        return self.normalize({e: int(c * den) for e, c in f.terms.items()})

    def to_polynomial(self, d: dict, scale=1) -> Polynomial:
        if self.p:
            return Polynomial(self.ring, {e: c * scale % self.p for e, c in d.items()}, check=False)
        return Polynomial(self.ring, {e: Fraction(c) * scale for e, c in d.items()}, check=False)

    def to_monic_polynomial(self, d: dict) -> Polynomial:
        lm = self.lead(d)
        if self.p:
            return self.to_polynomial(d, pow(d[lm], -1, self.p))
        return self.to_polynomial(d, Fraction(1, d[lm]))

    def lead(self, d: dict):
        return max(d, key=self.key)

    def normalize(self, d: dict) -> dict:
        """Primitive with positive leading coefficient (Q) or monic (F_p)."""
        if not d:
            return d
        lm = self.lead(d)
        if self.p:
            inv = pow(d[lm], -1, self.p)
            if inv == 1:
                return d
            return {e: c * inv % self.p for e, c in d.items()}
        g = reduce(math.gcd, d.values())
        if d[lm] < 0:
            g = -g
        if g == 1:
            return d
        return {e: c // g for e, c in d.items()}

    # reduction --------------------------------------------------------------

    def reduce(self, f: dict, basis: Sequence[tuple], full: bool = True):
        """Reduce ``f`` by ``basis`` (list of (lm, poly)).

        Returns ``(remainder, scale)`` where ``remainder / scale`` is the true
        remainder of ``f``.  With ``full=False`` only the leading term is
        reduced until it is irreducible.
        """
        key, p = self.key, self.p
        f = dict(f)
        rem: dict = {}
        scale = 1
        heap = [(tuple([-k for k in key(e)]), e) for e in f]
        heapq.heapify(heap)
        limit = _ring.MAX_TERMS
        while heap:
            _, e = heapq.heappop(heap)
            c = f.get(e)
            if c is None:
                continue
            reducer = None
            for lm, g in basis:
                if _divides(lm, e):
                    reducer = (lm, g)
                    break
            if reducer is None:
                if not full:
                    rem.update(f)
                    return rem, scale
                rem[e] = f.pop(e)
                continue
            lm, g = reducer
            m = tuple([x - y for x, y in zip(e, lm)])
            a = g[lm]
            if p:
                # g is monic
                for ge, gc in g.items():
                    t = tuple([x + y for x, y in zip(m, ge)])
                    old = f.get(t)
                    v = ((old or 0) - c * gc) % p
                    if v:
                        if old is None:
                            heapq.heappush(heap, (tuple([-k for k in key(t)]), t))
                        f[t] = v
                    elif old is not None:
                        del f[t]
            else:
                d = math.gcd(c, a)
                mult, cc = a // d, c // d
                if mult < 0:
                    mult, cc = -mult, -cc
                if mult != 1:
                    for t in f:
                        f[t] *= mult
                    for t in rem:
                        rem[t] *= mult
                    scale *= mult
                for ge, gc in g.items():
                    t = tuple([x + y for x, y in zip(m, ge)])
                    old = f.get(t)
                    v = (old or 0) - cc * gc
                    if v:
                        if old is None:
                            heapq.heappush(heap, (tuple([-k for k in key(t)]), t))
                        f[t] = v
                    elif old is not None:
                        del f[t]
                if len(f) > 8 and mult != 1:
                    g0 = reduce(math.gcd, itertools.chain(f.values(), rem.values()), 0)
                    g0 = math.gcd(g0, scale)
                    if g0 > 1:
                        for t in f:
                            f[t] //= g0
                        for t in rem:
                            rem[t] //= g0
                        scale //= g0
            if len(f) + len(rem) > limit:
                raise TermLimitExceeded(f"reduction exceeded {limit} terms")
        return rem, scale

    def spoly(self, f: dict, lf, g: dict, lg) -> dict:
        L = _lcm_exp(lf, lg)
        mf = tuple([x - y for x, y in zip(L, lf)])
        mg = tuple([x - y for x, y in zip(L, lg)])
        a, b = f[lf], g[lg]
        if not self.p:
            d = math.gcd(a, b)
            a, b = a // d, b // d
        out: dict = {}
        for e, c in f.items():
            t = tuple([x + y for x, y in zip(mf, e)])
            out[t] = out.get(t, 0) + b * c
        for e, c in g.items():
            t = tuple([x + y for x, y in zip(mg, e)])
            out[t] = out.get(t, 0) - a * c
        if self.p:
            return {e: c % self.p for e, c in out.items() if c % self.p}
        return {e: c for e, c in out.items() if c}

    # Buchberger -------------------------------------------------------------

    def buchberger(self, gens: Sequence[dict]) -> list[dict]:
        key = self.key
        polys: list[dict] = []
        leads: list = []
        active: list[int] = []
        pairs: list[tuple[int, int, tuple]] = []

        def update(h: int):
            nonlocal active, pairs
            lh = leads[h]
            C = [(g, _lcm_exp(lh, leads[g])) for g in active]
            D: list = []
            while C:
                g1, L1 = C.pop(0)
                if _coprime(lh, leads[g1]) or (
                    not any(_divides(L2, L1) for _g, L2 in C)
                    and not any(_divides(L2, L1) for _, L2, _c in D)
                ):
                    D.append((g1, L1, _coprime(lh, leads[g1])))
            kept = D
            new_pairs = [(g, h, L) for g, L, cop in kept if not cop]
            pairs = [
                (a, b, L)
                for a, b, L in pairs
                if not (
                    _divides(lh, L)
                    and _lcm_exp(leads[a], lh) != L
                    and _lcm_exp(leads[b], lh) != L
                )
            ] + new_pairs
            active = [g for g in active if not _divides(lh, leads[g])] + [h]

        def add(d: dict):
            d = self.normalize(d)
            polys.append(d)
            leads.append(self.lead(d))
            update(len(polys) - 1)

        basis_view = lambda: [(leads[i], polys[i]) for i in active]
        # Seed with inter-reduced generators, smallest leading monomial first.
        seeds = sorted((self.normalize(g) for g in gens if g), key=lambda d: key(self.lead(d)))
        for g in seeds:
            r, _ = self.reduce(g, basis_view(), full=True)
            if r:
                add(r)
                if not any(any(e) for e in r):
                    return [self.normalize(r)]
        while pairs:
            idx = min(range(len(pairs)), key=lambda i: (key(pairs[i][2]), pairs[i][0], pairs[i][1]))
            a, b, _ = pairs.pop(idx)
            s = self.spoly(polys[a], leads[a], polys[b], leads[b])
            if not s:
                continue
            r, _ = self.reduce(s, basis_view(), full=True)
            if r:
                add(r)
                if not any(any(e) for e in r):
                    return [self.normalize(r)]
        return [polys[i] for i in active]

    def reduced(self, basis: list[dict]) -> list[dict]:
        """Minimal, inter-reduced basis (still primitive/monic internally)."""
        key = self.key
        items = sorted(((self.lead(g), g) for g in basis), key=lambda t: key(t[0]))
        minimal = []
        for i, (lm, g) in enumerate(items):
            if any(_divides(lm2, lm) for lm2, _ in minimal):
                continue
            if any(_divides(lm2, lm) and lm2 != lm for lm2, _ in items[i + 1 :]):
                continue
            minimal.append((lm, g))
        out = []
        for i, (lm, g) in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1 :]
            r, _ = self.reduce(g, others, full=True)
            out.append((lm, self.normalize(r)))
        return [g for _, g in out]


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------


class GroebnerBasis:
    """A reduced Gröbner basis: monic elements sorted by increasing leading monomial."""

    def __init__(self, ring: Ring, order: MonomialOrder, internal: list[dict]):
        self.ring = ring
        self.order = order
        self._kernel = _Kernel(ring, order)
        self._internal = [(self._kernel.lead(g), g) for g in internal]
        self.elements: tuple[Polynomial, ...] = tuple(
            self._kernel.to_monic_polynomial(g) for g in internal
        )

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def leading_exponents(self) -> list[tuple[int, ...]]:
        return [lm for lm, _ in self._internal]

    def leading_monomials(self) -> list[Polynomial]:
        return [self.ring.monomial(lm) for lm in self.leading_exponents()]

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_exponents())

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise _ring.ContextMismatch(f"{f.ring} is not {self.ring}")
        k = self._kernel
        if not f:
            return f
        if k.p:
            r, s = k.reduce(dict(f.terms), self._internal)
            return k.to_polynomial(r, pow(s, -1, k.p))
        den = 1
        for c in f.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        r, s = k.reduce({e: int(c * den) for e, c in f.terms.items()}, self._internal)
        return k.to_polynomial(r, Fraction(1, s * den))

    def contains(self, f: Polynomial) -> bool:
        if not f:
            return True
        if self.is_unit():
            return True
        k = self._kernel
        r, _ = k.reduce(k.to_internal(f), self._internal)
        return not r

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.elements) + "}"


class Ideal:
    """Finitely generated ideal with a per-order cache of reduced bases."""

    def __init__(self, ring: Ring, generators: Iterable = ()):
        gens = []
        seen = set()
        for g in generators:
            g = ring(g)
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one])

    @classmethod
    def maximal(cls, ring: Ring, point: Sequence | None = None) -> "Ideal":
        point = point or [0] * ring.ngens
        return cls(ring, [g - c for g, c in zip(ring.gens(), point)])

    gens = property(lambda self: self.generators)

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            k = _Kernel(self.ring, order)
            internal = k.reduced(k.buchberger([k.to_internal(g) for g in self.generators]))
            gb = GroebnerBasis(self.ring, order, internal)
            self._gb[order] = gb
        return gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.generators):
            return True
        return self.groebner().is_unit()

    def contains(self, f) -> bool:
        f = self.ring(f)
        if not f:
            return True
        if not self.generators:
            return False
        return self.groebner().contains(f)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        _check(self, other)
        return all(other.contains(g) for g in self.generators)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.issubset(other) and other.issubset(self)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, Ideal):
            _check(self, other)
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + (self.ring(other),))

    def __mul__(self, other):
        if isinstance(other, Ideal):
            _check(self, other)
            return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])
        other = self.ring(other)
        return Ideal(self.ring, [f * other for f in self.generators])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative ideal power")
        out = Ideal.unit(self.ring)
        for _ in range(k):
            out = out * self
            out = Ideal(self.ring, _minimal_products(out.generators))
        return out

    def reduced(self, order: MonomialOrder = DEGREVLEX) -> "Ideal":
        """The same ideal, generated by its reduced Gröbner basis."""
        if not self.generators:
            return self
        gb = self.groebner(order)
        out = Ideal(self.ring, gb.elements)
        out._gb[order] = gb
        return out

    def canonical(self) -> "Ideal":
        """Reduced basis, each element scaled so its first printed term is monic,
        listed in decreasing lexicographic order of their terms."""
        if not self.generators:
            return self
        gb = self.groebner()
        if gb.is_unit():
            return Ideal.unit(self.ring)
        gens = sorted((g.monic() for g in gb.elements), key=lambda g: [e for e, _ in g.sorted_terms()], reverse=True)
        out = Ideal(self.ring, gens)
        out._gb[DEGREVLEX] = gb
        return out

    def map(self, phi) -> "Ideal":
        return Ideal(phi.target, [phi(g) for g in self.generators])

    def __str__(self) -> str:
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self} in {self.ring}"


def _minimal_products(gens: Sequence[Polynomial]) -> list[Polynomial]:
    # drop exact scalar duplicates produced by expanding products of generators
    seen, out = set(), []
    for g in gens:
        m = g.monic()
        if m not in seen:
            seen.add(m)
            out.append(g)
    return out


def _check(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise _ring.ContextMismatch(f"{a.ring} is not {b.ring}")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    return I.groebner(order)


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    return B.normal_form(f)


def _eliminate_same_ring(I: Ideal, drop: Sequence[int]) -> list[Polynomial]:
    """Generators of I ∩ K[vars not in drop], still written in I's ring."""
    drop = tuple(sorted(set(drop)))
    if not drop:
        return list(I.groebner().elements)
    gb = I.groebner(block(drop))
    return [g for g in gb.elements if not any(g.degree_in(i) > 0 for i in drop)]


def eliminate(I: Ideal, drop: Iterable[str]) -> Ideal:
    """The elimination ideal ``I ∩ K[remaining variables]`` in the smaller ring."""
    drop = list(drop)
    idx = [I.ring.index(v) for v in drop]
    if len(set(idx)) >= I.ring.ngens:
        raise DomainError("cannot eliminate every variable")
    if not idx:
        return Ideal(I.ring, I.generators)
    keep = tuple(v for v in I.ring.variables if v not in drop)
    sub = Ring(keep, I.ring.field)
    return Ideal(sub, [g.change_ring(sub) for g in _eliminate_same_ring(I, idx)])


def _with_aux(ring: Ring, stem: str = "t") -> tuple[Ring, Polynomial]:
    (name,) = ring.fresh_names(f"_{stem}", 1)
    big = Ring((name,) + ring.variables, ring.field)
    return big, big.gen(name)


def _lift(f: Polynomial, big: Ring) -> Polynomial:
    return Polynomial(big, {(0,) + e: c for e, c in f.terms.items()}, check=False)


def _drop_first(f: Polynomial, ring: Ring) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.terms.items()}, check=False)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` via one auxiliary variable: eliminate t from t·I + (1−t)·J."""
    _check(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring)
    big, t = _with_aux(I.ring)
    gens = [t * _lift(f, big) for f in I.generators]
    gens += [(1 - t) * _lift(g, big) for g in J.generators]
    elim = _eliminate_same_ring(Ideal(big, gens), [0])
    return Ideal(I.ring, [_drop_first(g, I.ring) for g in elim])


def colon_principal(I: Ideal, g: Polynomial) -> Ideal:
    g = I.ring(g)
    if not g:
        raise DomainError("colon by the zero ideal")
    if g.is_constant() or I.is_zero():
        return Ideal(I.ring, I.generators)
    if I.is_unit():
        return Ideal.unit(I.ring)
    inter = intersect(I, Ideal(I.ring, [g]))
    return Ideal(I.ring, [f.exact_div(g) for f in inter.generators])


def colon(I: Ideal, J: Union[Ideal, Polynomial]) -> Ideal:
    """``(I : J) = {f : f·J ⊆ I}``, intersecting the colons by each generator of J."""
    if isinstance(J, Polynomial):
        return colon_principal(I, J)
    _check(I, J)
    if J.is_zero():
        raise DomainError("colon by the zero ideal")
    parts = [colon_principal(I, g) for g in J.generators]
    return reduce(intersect, parts)


def _monomial_strip(f: Polynomial, support: Iterable[int]) -> tuple[Polynomial, tuple[int, ...]]:
    ring = f.ring
    powers = [0] * ring.ngens
    for i in support:
        powers[i] = f.max_power_dividing(i)
    m = ring.monomial(powers)
    return f.exact_div(m), tuple(powers)


def saturate(I: Ideal, h: Polynomial, cap: int = SATURATION_CAP) -> tuple[Ideal, int]:
    """``(I : h^∞)`` together with the least k such that ``I : h^k`` already equals it.

    Raises :class:`SaturationCapExceeded` when that k exceeds ``cap``.
    """
    h = I.ring(h)
    if not h:
        raise DomainError("saturation by zero")
    if h.is_constant() or I.is_zero():
        return Ideal(I.ring, I.generators), 0
    if len(I.generators) == 1 and h.is_monomial():
        (f,) = I.generators
        ((hm, _),) = h.terms.items()
        supp = [i for i, k in enumerate(hm) if k]
        stripped, powers = _monomial_strip(f, supp)
        k = max((-(-powers[i] // hm[i]) for i in supp), default=0)
        if k > cap:
            raise SaturationCapExceeded(f"saturation needs {k} steps (cap {cap})")
        return Ideal(I.ring, [stripped]), k
    big, t = _with_aux(I.ring)
    gens = [_lift(f, big) for f in I.generators] + [1 - t * _lift(h, big)]
    sat = Ideal(I.ring, [_drop_first(g, I.ring) for g in _eliminate_same_ring(Ideal(big, gens), [0])])
    sat = sat.reduced()
    k, hk = 0, I.ring.one
    while not all(I.contains(hk * s) for s in sat.generators):
        k += 1
        if k > cap:
            raise SaturationCapExceeded(f"saturation did not stabilise within {cap} steps")
        hk = hk * h
    return sat, k


def radical_contains(I: Ideal, f: Polynomial) -> bool:
    """``f ∈ rad(I)`` by the Rabinowitsch trick: 1 ∈ I + (1 − t·f)."""
    f = I.ring(f)
    if not f:
        return True
    big, t = _with_aux(I.ring)
    J = Ideal(big, [_lift(g, big) for g in I.generators] + [1 - t * _lift(f, big)])
    return J.is_unit()


def krull_dimension(I: Ideal) -> int:
    """Dimension of V(I): largest set of variables free of leading monomials."""
    n = I.ring.ngens
    if I.is_zero():
        return n
    gb = I.groebner(DEGREVLEX)
    if gb.is_unit():
        raise DomainError("the unit ideal has empty zero set")
    supports = [frozenset(i for i, k in enumerate(lm) if k) for lm in gb.leading_exponents()]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


# ---------------------------------------------------------------------------
# Macaulay bases (lowest initial forms)
# ---------------------------------------------------------------------------


def initial_form_along(f: Polynomial, indices: Sequence[int] | None = None) -> Polynomial:
    """Lowest-degree part of f, degree counted only in the variables ``indices``."""
    if indices is None:
        return f.initial_form()
    if not f:
        raise DomainError("the zero polynomial has no initial form")
    deg = lambda e: sum(e[i] for i in indices)
    o = min(deg(e) for e in f.terms)
    return Polynomial(f.ring, {e: c for e, c in f.terms.items() if deg(e) == o}, check=False)


def initial_ideal(I: Ideal, indices: Sequence[int] | None = None) -> Ideal:
    """Ideal generated by the lowest initial forms of all elements of I.

    With ``indices`` the grading counts only those variables (initial forms
    along the coordinate subspace where they vanish).
    """
    return Ideal(I.ring, [initial_form_along(g, indices) for g in _lazard_basis(I, indices)])


def _lazard_basis(I: Ideal, indices: Sequence[int] | None = None) -> list[Polynomial]:
    """Dehomogenized standard basis for the lowest-degree (local) order."""
    if I.is_zero():
        return []
    ring = I.ring
    n = ring.ngens
    indices = tuple(range(n)) if indices is None else tuple(indices)
    (hname,) = ring.fresh_names("_h", 1)
    big = ring.extend([hname])
    w = [1 if i in indices else 0 for i in range(n)]
    # graded degree first, then the larger power of the homogenizing variable
    order = weighted(tuple(w) + (1,), weighted((0,) * n + (1,), DEGREVLEX))
    hom = []
    for g in I.generators:
        D = max(sum(e[i] for i in indices) for e in g.terms)
        hom.append(Polynomial(big, {e + (D - sum(e[i] for i in indices),): c for e, c in g.terms.items()}, check=False))
    gb = Ideal(big, hom).groebner(order)
    out = []
    for g in gb.elements:
        d = {}
        for e, c in g.terms.items():
            d[e[:n]] = d.get(e[:n], 0) + c
        out.append(Polynomial(ring, d))
    return [g for g in out if g]


def macaulay_basis(I: Ideal, indices: Sequence[int] | None = None) -> list[Polynomial]:
    """Elements of I whose lowest initial forms generate the initial ideal of I.

    The original generators are kept first; basis elements are added only
    when their initial form is not already generated by the others.
    """
    if I.is_zero():
        return []
    ini = lambda g: initial_form_along(g, indices)
    cands = list(I.generators)
    for g in _lazard_basis(I, indices):
        if not any(g.monic() == c.monic() for c in cands):
            cands.append(g)
    keep = list(cands)
    original = len(I.generators)
    for i in range(len(cands) - 1, original - 1, -1):
        g = cands[i]
        others = [c for c in keep if c is not g]
        if Ideal(I.ring, [ini(c) for c in others]).contains(ini(g)):
            keep = others
    return keep


def is_macaulay_basis(I: Ideal, gens: Sequence[Polynomial], indices: Sequence[int] | None = None) -> bool:
    """Check that the initial forms of ``gens`` generate the initial ideal of I."""
    target = initial_ideal(I, indices)
    got = Ideal(I.ring, [initial_form_along(g, indices) for g in gens])
    return got == target
