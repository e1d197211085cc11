"""Local invariants of ideals: orders, symbolic powers and special loci."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DomainError, GuardError, NonRationalPoint, PositiveDimensional
from .groebner import (
    DEGREVLEX,
    Ideal,
    colon,
    eliminate,
    initial_ideal,
    krull_dimension,
    radical_contains,
)
from .ring import Polynomial, Ring

ORDER_ALONG_PRIME_CAP = 32
Order = Union[int, float]


@dataclass(frozen=True)
class OrderReport:
    """An order value with the generator attaining it and where it was measured."""

    value: Order
    witness: Optional[Polynomial]
    site: object

    def __int__(self) -> int:
        if self.value == math.inf:
            raise DomainError("order is infinite")
        return int(self.value)


@dataclass(frozen=True)
class SymbolicMembership:
    member: bool
    witness: Optional[Polynomial]

    def __bool__(self) -> bool:
        return self.member


def _as_ideal(I, ring: Ring | None = None) -> Ideal:
    if isinstance(I, Ideal):
        return I
    if isinstance(I, Polynomial):
        return Ideal(I.ring, [I])
    raise DomainError(f"expected an ideal, got {I!r}")


def order_at_point(I: Union[Ideal, Polynomial], a: Sequence | None = None) -> OrderReport:
    """Largest k with I contained in the k-th power of the maximal ideal at ``a``."""
    I = _as_ideal(I)
    a = tuple(a) if a is not None else (0,) * I.ring.ngens
    best: Order = math.inf
    witness = None
    for g in I.generators:
        o = g.translate(a).order()
        if o < best:
            best, witness = o, g
    return OrderReport(best, witness, tuple(I.ring.field(x) for x in a))


def coordinate_indices(P: Ideal) -> Optional[list[int]]:
    """Variable indices if P is generated by (scalar multiples of) variables."""
    out = []
    for g in P.generators:
        if not (g.is_monomial() and g.total_degree() == 1):
            return None
        (e,) = g.terms
        out.append(e.index(1))
    return sorted(set(out))


def order_along_coordinates(f: Polynomial, indices: Sequence[int]) -> Order:
    """Order of f along the coordinate subspace where the given variables vanish."""
    if not f:
        return math.inf
    return min(sum(e[i] for i in indices) for e in f.terms)


def symbolic_power_membership(f: Polynomial, P: Ideal, k: int) -> SymbolicMembership:
    """Decide f ∈ P^(k) using the localisation form: (P^k : f) is not inside P.

    The certificate is an element y of (P^k : f) outside P, so y·f ∈ P^k.
    """
    f = P.ring(f)
    if not f:
        raise DomainError("symbolic-power membership of 0 is not informative")
    if k <= 0:
        return SymbolicMembership(True, P.ring.one)
    idx = coordinate_indices(P)
    if idx is not None:
        ok = order_along_coordinates(f, idx) >= k
        return SymbolicMembership(ok, P.ring.one if ok else None)
    Pk = P**k
    if Pk.contains(f):
        return SymbolicMembership(True, P.ring.one)
    C = colon(Pk, f).canonical()
    for y in C.generators:
        if not P.contains(y):
            return SymbolicMembership(True, y)
    return SymbolicMembership(False, None)


def order_along_prime(I: Union[Ideal, Polynomial], P: Ideal, cap: int = ORDER_ALONG_PRIME_CAP) -> OrderReport:
    """Largest k with I ⊆ P^(k), found by ascending search (P is trusted to be prime)."""
    I = _as_ideal(I)
    if I.is_zero():
        return OrderReport(math.inf, None, P)
    idx = coordinate_indices(P)
    if idx is not None:
        vals = [(order_along_coordinates(g, idx), i) for i, g in enumerate(I.generators)]
        v, i = min(vals)
        return OrderReport(v, I.generators[i], P)
    best, witness = math.inf, None
    for g in I.generators:
        if not P.contains(g):
            return OrderReport(0, g, P)
        k = 1
        while symbolic_power_membership(g, P, k + 1).member:
            k += 1
            if k >= cap:
                raise GuardError(f"order along the prime exceeds the cap {cap}")
        if k < best:
            best, witness = k, g
    return OrderReport(best, witness, P)


def _det(m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0].ring.zero


def jacobian_minors(gens: Sequence[Polynomial], k: int) -> list[Polynomial]:
    if not gens:
        return []
    ring = gens[0].ring
    J = [[g.derivative(v) for v in ring.variables] for g in gens]
    out = []
    for rows in itertools.combinations(range(len(gens)), k):
        for cols in itertools.combinations(range(ring.ngens), k):
            d = _det([[J[r][c] for c in cols] for r in rows])
            if d:
                out.append(d)
    return out


def singular_locus(I: Ideal) -> Ideal:
    """Jacobian criterion: I plus the c×c minors of the Jacobian, c the codimension.

    I is assumed radical and equidimensional.
    """
    if I.is_unit():
        raise DomainError("the unit ideal defines the empty set")
    c = I.ring.ngens - krull_dimension(I)
    if c == 0:
        return Ideal.unit(I.ring)
    return Ideal(I.ring, list(I.generators) + jacobian_minors(I.generators, c))


def order_at_least_ideal(I: Ideal, k: int) -> Ideal:
    """Ideal whose zero set is {b : ord_b(I) ≥ k}, built from Hasse derivatives.

    Divided-power derivatives make the criterion valid in every characteristic.
    """
    ring = I.ring
    gens = []
    for d in range(k):
        for alpha in _multi_indices(ring.ngens, d):
            for g in I.generators:
                h = g.derivative(alpha, divided=True)
                if h:
                    gens.append(h)
    return Ideal(ring, gens)


def _multi_indices(n: int, d: int):
    for combo in itertools.combinations_with_replacement(range(n), d):
        a = [0] * n
        for i in combo:
            a[i] += 1
        yield tuple(a)


def top_locus_ideal(I: Ideal, a: Sequence | None = None) -> Ideal:
    """Derivatives up to order o−1 of the generators, o the order of I at ``a``."""
    if I.ring.field.p:
        raise DomainError("the derivative criterion for the top locus needs characteristic 0")
    o = order_at_point(I, a).value
    if o == math.inf:
        raise DomainError("the zero ideal has infinite order everywhere")
    gens = []
    for d in range(int(o)):
        for alpha in _multi_indices(I.ring.ngens, d):
            for g in I.generators:
                h = g.derivative(alpha)
                if h:
                    gens.append(h)
    return Ideal(I.ring, gens)


def hilbert_samuel_prefix(I: Ideal, a: Sequence | None = None, N: int = 3) -> list[int]:
    """dim m^k/m^(k+1) of the local ring at ``a`` for k = 0..N."""
    ring = I.ring
    a = tuple(a) if a is not None else (0,) * ring.ngens
    moved = Ideal(ring, [g.translate(a) for g in I.generators])
    leads = []
    if not moved.is_zero():
        inI = initial_ideal(moved)
        leads = inI.groebner(DEGREVLEX).leading_exponents()
    out = []
    for k in range(N + 1):
        count = 0
        for e in _multi_indices(ring.ngens, k):
            if not any(all(x <= y for x, y in zip(lm, e)) for lm in leads):
                count += 1
        out.append(count)
    return out


# ---------------------------------------------------------------------------
# rational points of zero-dimensional ideals
# ---------------------------------------------------------------------------

PRIME_FIELD_SEARCH_CAP = 1 << 16


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def univariate_roots(f: Polynomial, var: int) -> list:
    """Roots in the ground field of a polynomial involving only variable ``var``."""
    coeffs = f.coefficients_in(var)
    vals = [c.constant_coeff() for c in coeffs]
    field = f.ring.field
    if not any(vals):
        raise PositiveDimensional("the zero polynomial has every point as a root")
    if field.p:
        if field.p > PRIME_FIELD_SEARCH_CAP:
            raise GuardError(f"root search over F{field.p} exceeds the cap")
        return [x for x in range(field.p) if sum(c * pow(x, i, field.p) for i, c in enumerate(vals)) % field.p == 0]
    den = 1
    for c in vals:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in vals]
    roots = set()
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    ints = ints[shift:]
    lead, const = ints[-1], ints[0]
    for p_ in _divisors(const):
        for q in _divisors(lead):
            for s in (1, -1):
                r = Fraction(s * p_, q)
                if r not in roots and sum(c * r**i for i, c in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)


def rational_points(I: Ideal) -> list[tuple]:
    """All points of V(I) when it is finite and consists of rational points.

    Raises :class:`PositiveDimensional` for infinite zero sets and
    :class:`NonRationalPoint` when some point needs a field extension.
    """
    ring = I.ring
    if I.is_unit():
        return []
    if I.is_zero():
        raise PositiveDimensional("the zero ideal is not zero-dimensional")
    if krull_dimension(I) > 0:
        raise PositiveDimensional(f"{I} has a positive-dimensional zero set")
    root_lists = []
    for i, v in enumerate(ring.variables):
        elim = eliminate(I, [w for w in ring.variables if w != v])
        (g,) = elim.reduced().generators
        gi = g.change_ring(ring)
        root_lists.append(univariate_roots(gi, i))
    pts = []
    for cand in itertools.product(*root_lists):
        if all(g.evaluate(cand) == 0 for g in I.generators):
            pts.append(tuple(cand))
    pts.sort()
    # every point of V(I) must be among those found
    prod = Ideal.unit(ring)
    for p in pts:
        prod = prod * Ideal.maximal(ring, p)
    if not pts or not all(radical_contains(I, g) for g in prod.generators):
        raise NonRationalPoint(f"{I} has points that are not rational")
    return pts
