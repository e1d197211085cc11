"""Descent in dimension: osculating frames, coefficient ideals, exceptional
factorization and the residual order of purely inseparable equations."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .blowup import BlowupChart
from .errors import DomainError
from .geometry import order_at_point
from .groebner import Ideal
from .ring import Polynomial, Ring, RingMorphism
from .transform import controlled_transform, weak_transform

#: Scalars tried, in order, when a linear change is needed for regularity.
REGULARIZING_SCALARS = (1, -1, 2, -2, 3, -3, 5, 7)


@dataclass(frozen=True)
class HypersurfaceFrame:
    """Coordinates in which V: ``variable`` = 0 is the chosen hypersurface.

    ``change`` maps the original coordinates to the framed ones (base point
    moved to the origin) and ``framed`` is the transformed equation.
    """

    ring: Ring
    variable: str
    base_point: tuple
    order: int
    change: RingMorphism
    framed: Optional[Polynomial] = None

    @property
    def index(self) -> int:
        return self.ring.index(self.variable)

    @classmethod
    def at_origin(cls, ring: Ring, variable: str, order: int) -> "HypersurfaceFrame":
        return cls(ring, variable, (0,) * ring.ngens, order, RingMorphism.identity(ring))


@dataclass(frozen=True)
class ExceptionalEntry:
    variable: str
    multiplicity: int = 1
    birth: int = 0


@dataclass(frozen=True)
class ExceptionalRecord:
    """Exceptional components through the current point, as coordinate hyperplanes."""

    entries: tuple[ExceptionalEntry, ...] = ()

    def __post_init__(self):
        names = [e.variable for e in self.entries]
        if len(set(names)) != len(names):
            raise DomainError("exceptional variables must be distinct")
        if any(e.multiplicity < 0 for e in self.entries):
            raise DomainError("exceptional multiplicities are natural numbers")

    @classmethod
    def of(cls, source) -> "ExceptionalRecord":
        if isinstance(source, ExceptionalRecord):
            return source
        if source is None:
            return cls()
        if isinstance(source, dict):
            return cls(tuple(ExceptionalEntry(v, m) for v, m in source.items()))
        return cls(tuple(e if isinstance(e, ExceptionalEntry) else ExceptionalEntry(e) for e in source))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(e.variable for e in self.entries)

    def multiplicity(self, name: str) -> int:
        for e in self.entries:
            if e.variable == name:
                return e.multiplicity
        return 0

    def to_json(self) -> list:
        return [[e.variable, e.multiplicity, e.birth] for e in self.entries]


@dataclass(frozen=True)
class FactoredIdeal:
    """J = x^monomial · residual, monomial over exceptional variables."""

    ring: Ring
    monomial: tuple[int, ...]
    residual: Ideal

    @property
    def monomial_polynomial(self) -> Polynomial:
        return self.ring.monomial(self.monomial)

    def product(self) -> Ideal:
        return self.residual * self.monomial_polynomial


# ---------------------------------------------------------------------------
# Tschirnhaus and osculating frames
# ---------------------------------------------------------------------------


def _regular_in(f: Polynomial, i: int, o: int) -> bool:
    """f has x_i-degree o with a nonzero constant coefficient of x_i^o."""
    coeffs = f.coefficients_in(i)
    return len(coeffs) == o + 1 and coeffs[o].is_constant() and bool(coeffs[o])


def tschirnhaus(f: Polynomial, variable: Union[str, int, None] = None, order: Optional[int] = None):
    """Complete the power in ``variable``: x ↦ x − a_(o−1)/(o·a_o).

    Returns ``(change, f')`` where f' = change(f) has no x^(o−1) term.  The
    coefficient of x^o must be a nonzero constant and o the x-degree of f.
    """
    ring = f.ring
    if ring.field.p:
        raise DomainError("the Tschirnhaus transformation needs characteristic 0")
    i = ring.ngens - 1 if variable is None else (ring.index(variable) if isinstance(variable, str) else variable)
    o = int(f.order()) if order is None else order
    if o < 1:
        raise DomainError("the Tschirnhaus transformation needs order at least 1")
    if not _regular_in(f, i, o):
        raise DomainError(
            f"{f} is not {ring.variables[i]}-regular of order {o} with constant leading coefficient"
        )
    coeffs = f.coefficients_in(i)
    shift = coeffs[o - 1] / (o * coeffs[o].constant_coeff())
    images = list(ring.gens())
    images[i] = images[i] - shift
    change = RingMorphism(ring, ring, tuple(images))
    return change, change(f)


def osculating_frame(f: Polynomial, a: Sequence | None = None) -> HypersurfaceFrame:
    """Maximal-contact frame at ``a``: an order-1 derivative of order o−1 becomes a
    coordinate, then the Tschirnhaus step removes the x^(o−1) coefficient."""
    ring = f.ring
    if ring.field.p:
        raise DomainError("osculating hypersurfaces are a characteristic-0 construction")
    if not f:
        raise DomainError("the zero polynomial has no osculating hypersurface")
    a = tuple(ring.field(x) for x in (a if a is not None else (0,) * ring.ngens))
    shift = RingMorphism(ring, ring, tuple(g + c for g, c in zip(ring.gens(), a)))
    g = shift(f)
    o = g.order()
    if o == 0:
        raise DomainError("the point is not on the hypersurface")
    o = int(o)
    linear = None
    for combo in itertools.combinations_with_replacement(range(ring.ngens), o - 1):
        alpha = [0] * ring.ngens
        for k in combo:
            alpha[k] += 1
        d = g.derivative(alpha)
        if d.order() == 1:
            linear = d.homogeneous_part(1)
            break
    if linear is None:
        raise DomainError("no derivative of order o−1 has order 1")
    candidates = sorted(linear.support(), reverse=True)
    for k in candidates:
        if _regular_in(g, k, o):
            change, framed = tschirnhaus(g, k, o)
            return HypersurfaceFrame(ring, ring.variables[k], a, o, shift.then(change), framed)
    k = candidates[0]
    for i in range(ring.ngens):
        if i == k:
            continue
        for t in REGULARIZING_SCALARS:
            images = list(ring.gens())
            images[i] = images[i] + t * images[k]
            lin = RingMorphism(ring, ring, tuple(images))
            h = lin(g)
            if _regular_in(h, k, o):
                change, framed = tschirnhaus(h, k, o)
                return HypersurfaceFrame(ring, ring.variables[k], a, o, shift.then(lin).then(change), framed)
    raise DomainError(f"could not make {f} regular of order {o} in a polynomial frame")


# ---------------------------------------------------------------------------
# coefficient ideals and exceptional factorization
# ---------------------------------------------------------------------------


def coefficient_weights(o: int) -> list[int]:
    return [math.factorial(o) // (o - i) for i in range(o)]


def coefficient_ideal(I: Union[Ideal, Polynomial], frame: HypersurfaceFrame) -> Ideal:
    """Σ_i (a_i)^(o!/(o−i)) over the x-expansions of the given generators.

    Computed from the generating set; for principal ideals this is the
    textbook coefficient ideal. The result does not involve the frame variable.
    """
    if isinstance(I, Polynomial):
        I = Ideal(I.ring, [I])
    o = frame.order
    if o < 1:
        raise DomainError("coefficient ideals need order at least 1")
    i = I.ring.index(frame.variable)
    levels: list[list[Polynomial]] = [[] for _ in range(o)]
    for g in I.generators:
        coeffs = g.coefficients_in(i)
        for k in range(min(o, len(coeffs))):
            if coeffs[k]:
                levels[k].append(coeffs[k])
    out = Ideal(I.ring)
    for k, w in enumerate(coefficient_weights(o)):
        if levels[k]:
            out = out + Ideal(I.ring, levels[k]) ** w
    return out


def factor_exceptional(J: Union[Ideal, Polynomial], exceptional) -> FactoredIdeal:
    """Split off the largest exceptional monomial dividing every generator."""
    if isinstance(J, Polynomial):
        J = Ideal(J.ring, [J])
    exc = ExceptionalRecord.of(exceptional)
    ring = J.ring
    powers = [0] * ring.ngens
    if J.generators:
        for name in exc.variables:
            i = ring.index(name)
            powers[i] = min(g.max_power_dividing(i) for g in J.generators)
    m = ring.monomial(powers)
    residual = Ideal(ring, [g.exact_div(m) for g in J.generators])
    return FactoredIdeal(ring, tuple(powers), residual)


# ---------------------------------------------------------------------------
# characteristic p: purely inseparable equations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InseparableShape:
    variable: int
    power: int
    tail: Polynomial


def _is_power_of(q: int, p: int) -> bool:
    while q > 1 and q % p == 0:
        q //= p
    return q == 1


def inseparable_shape(f: Polynomial) -> InseparableShape:
    """Write f = x^(p^e) + F with F free of x and of order at least p^e."""
    ring = f.ring
    p = ring.field.p
    if not p:
        raise DomainError("purely inseparable equations live in positive characteristic")
    for i in range(ring.ngens):
        with_x = {e: c for e, c in f.terms.items() if e[i]}
        if len(with_x) != 1:
            continue
        ((e, c),) = with_x.items()
        q = e[i]
        if c != 1 or sum(e) != q or q < p or not _is_power_of(q, p):
            continue
        tail = f - ring.monomial(e)
        if tail.order() >= q:
            return InseparableShape(i, q, tail)
    raise DomainError(f"{f} is not of the form x^(p^e) + F(y) with ord F ≥ p^e")


def clean(F: Polynomial, q: int) -> Polynomial:
    """Remove the q-th power part (q a power of p): terms with exponents in q·N^n."""
    if q < 2:
        return F
    return Polynomial(F.ring, {e: c for e, c in F.terms.items() if any(k % q for k in e)}, check=False)


def residual_order(f: Polynomial, exceptional=None, a: Sequence | None = None) -> int:
    """Order of the residual factor of the cleaned tail of x^(p^e) + F.

    F is cleaned of its p^e-th powers, the exceptional monomial is divided
    out and the order at the origin of what remains is returned.
    """
    ring = f.ring
    if a is not None:
        f = f.translate(a)
    shape = inseparable_shape(f)
    G = clean(shape.tail, shape.power)
    if not G:
        return 0
    fac = factor_exceptional(G, exceptional)
    (res,) = fac.residual.generators
    return int(res.order())


# ---------------------------------------------------------------------------
# commutation with blowup
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommutationReport:
    equal: bool
    left: Ideal
    right: Ideal

    def __bool__(self) -> bool:
        return self.equal


def commutation_check(I: Union[Ideal, Polynomial], frame: HypersurfaceFrame, chart: BlowupChart,
                      control: Optional[int] = None) -> CommutationReport:
    """Compare J(weak transform of I) with the controlled transform of J(I) at c = o!.

    Both coefficient ideals use the weights of the order o of the frame.
    """
    if isinstance(I, Polynomial):
        I = Ideal(I.ring, [I])
    if not chart.is_coordinate:
        raise DomainError("the commutation check needs a coordinate center")
    v = I.ring.index(frame.variable)
    if chart.chart_variable == v:
        raise DomainError("the chart of the frame variable does not meet the transformed hypersurface")
    if v not in chart.center_indices:
        raise DomainError("the center must lie inside the hypersurface")
    o = frame.order
    c = math.factorial(o) if control is None else control
    # the weights stay those of the order o before the blowup
    weak = weak_transform(I, chart).ideal
    left = coefficient_ideal(weak, HypersurfaceFrame.at_origin(chart.ring, frame.variable, o))
    J = coefficient_ideal(I, frame)
    right = controlled_transform(J, chart, c).ideal if not J.is_zero() else Ideal(chart.ring)
    return CommutationReport(left == right, left.canonical(), right.canonical())
