"""Blowups of affine space: Rees ideals, affine charts and their transitions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import DomainError
from .groebner import Ideal, eliminate
from .ring import Polynomial, Ring, RingMorphism


@dataclass(frozen=True)
class Center:
    """Center of a blowup: an ideal with an ordered list of nonzero generators."""

    ring: Ring
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        gens = tuple(self.ring(g) for g in self.generators)
        if not gens or any(not g for g in gens):
            raise DomainError("a center needs at least one nonzero generator")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, source: Union["Center", Ideal, Sequence]) -> "Center":
        if isinstance(source, Center):
            return source
        if isinstance(source, Ideal):
            return cls(source.ring, source.generators)
        source = list(source)
        if not source or not isinstance(source[0], Polynomial):
            raise DomainError("cannot infer the ring of the center")
        return cls(source[0].ring, tuple(source))

    @classmethod
    def coordinate(cls, ring: Ring, names: Sequence[str]) -> "Center":
        return cls(ring, tuple(ring.gen(v) for v in names))

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    def coordinate_indices(self) -> Optional[list[int]]:
        """Variable positions when every generator is a single variable."""
        out = []
        for g in self.generators:
            if not (g.is_monomial() and g.total_degree() == 1 and g.constant_coeff() == 0):
                return None
            (e,) = g.terms
            i = e.index(1)
            if i in out:
                return None
            out.append(i)
        return out

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class ReesPresentation:
    """Rees ideal in K[x, u1..uk]: the kernel of x ↦ x, u_j ↦ g_j·t."""

    ring: Ring
    ideal: Ideal
    u_names: tuple[str, ...]
    center: Center


@dataclass(frozen=True)
class BlowupChart:
    """One affine chart of a blowup.

    ``map`` sends the ambient variables to their expressions on the chart;
    ``exceptional`` is the local equation of the exceptional divisor and
    ``chart_ideal`` presents the chart ring (zero for coordinate centers).
    """

    name: str
    index: int
    center: Center
    map: RingMorphism
    exceptional: Polynomial
    chart_ideal: Ideal
    center_indices: Optional[tuple[int, ...]] = None
    translation: tuple = ()

    @property
    def source(self) -> Ring:
        return self.map.source

    @property
    def ring(self) -> Ring:
        return self.map.target

    @property
    def is_coordinate(self) -> bool:
        return self.center_indices is not None

    @property
    def chart_variable(self) -> int:
        """Index of the variable that is the exceptional equation (coordinate charts)."""
        if self.center_indices is None:
            raise DomainError("general charts have no chart variable")
        return self.center_indices[self.index]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "map": [str(g) for g in self.map.images],
            "exceptional": str(self.exceptional),
            "chart_ideal": [str(g) for g in self.chart_ideal.generators],
            "ring": list(self.ring.variables),
        }


def _u_names(ring: Ring, k: int) -> tuple[str, ...]:
    for stem in ("u", "U", "v", "w", "_u"):
        names = tuple(f"{stem}{i}" for i in range(1, k + 1))
        if not set(names) & set(ring.variables):
            return names
    raise DomainError("no free names for the Rees variables")


def rees_ideal(center: Union[Center, Ideal, Sequence]) -> ReesPresentation:
    """Eliminate t from (u_j − g_j·t); correct for any generating set of the center."""
    c = Center.of(center)
    ring = c.ring
    k = len(c.generators)
    us = _u_names(ring, k)
    (t,) = ring.extend(us).fresh_names("t", 1)
    big = ring.extend(us + (t,))
    lift = lambda g: g.change_ring(big)
    tt = big.gen(t)
    gens = [big.gen(u) - lift(g) * tt for u, g in zip(us, c.generators)]
    elim = eliminate(Ideal(big, gens), [t]).canonical()
    return ReesPresentation(elim.ring, elim, us, c)


def naive_rees_ideal(center: Union[Center, Ideal, Sequence]) -> ReesPresentation:
    """The ideal of the relations u_i·g_j − u_j·g_i only."""
    c = Center.of(center)
    us = _u_names(c.ring, len(c.generators))
    big = c.ring.extend(us)
    g = [x.change_ring(big) for x in c.generators]
    u = [big.gen(v) for v in us]
    rel = [u[i] * g[j] - u[j] * g[i] for i in range(len(g)) for j in range(i + 1, len(g))]
    return ReesPresentation(big, Ideal(big, rel), us, c)


def coordinate_charts(center: Union[Center, Ideal, Sequence]) -> list[BlowupChart]:
    """Charts for a center generated by variables: chart j sends x_i ↦ x_i·x_j for i in J∖{j}."""
    c = Center.of(center)
    idx = c.coordinate_indices()
    if idx is None:
        raise DomainError(f"center {c} is not generated by distinct variables")
    ring = c.ring
    gens = ring.gens()
    charts = []
    for pos, j in enumerate(idx):
        images = list(gens)
        for i in idx:
            if i != j:
                images[i] = gens[i] * gens[j]
        phi = RingMorphism(ring, ring, tuple(images))
        charts.append(
            BlowupChart(
                name=f"chart:{ring.variables[j]}",
                index=pos,
                center=c,
                map=phi,
                exceptional=gens[j],
                chart_ideal=Ideal(ring),
                center_indices=tuple(idx),
            )
        )
    return charts


def chart_by_name(charts: Sequence[BlowupChart], name: str) -> BlowupChart:
    key = name if name.startswith("chart:") else f"chart:{name}"
    for ch in charts:
        if ch.name == key:
            return ch
    raise DomainError(f"no chart named {name!r}; available: {', '.join(ch.name for ch in charts)}")


def general_charts(center: Union[Center, Ideal, Sequence]) -> list[BlowupChart]:
    """Chart j is K[x, u_i (i≠j)] modulo the Rees ideal at u_j = 1; h = g_j."""
    c = Center.of(center)
    rees = rees_ideal(c)
    ring = c.ring
    charts = []
    for j, uj in enumerate(rees.u_names):
        others = tuple(u for u in rees.u_names if u != uj)
        target = ring.extend(others)
        set_one = RingMorphism.from_mapping(rees.ring, target, {uj: target.one})
        chart_ideal = Ideal(target, [set_one(g) for g in rees.ideal.generators]).canonical()
        inclusion = RingMorphism(ring, target, tuple(target.gen(v) for v in ring.variables))
        charts.append(
            BlowupChart(
                name=f"chart:{uj}",
                index=j,
                center=c,
                map=inclusion,
                exceptional=inclusion(c.generators[j]),
                chart_ideal=chart_ideal,
            )
        )
    return charts


@dataclass(frozen=True)
class Transition:
    """Change of charts as a morphism into a ring with an adjoined inverse ``w``.

    Valid on the open set where ``inverted`` is nonzero; ``relation`` is
    w·inverted − 1.
    """

    morphism: RingMorphism
    inverse_name: str
    inverted: Polynomial
    relation: Polynomial

    def _format(self, g: Polynomial) -> str:
        ring = g.ring
        w = ring.index(self.inverse_name)
        if g.is_monomial():
            ((e, c),) = g.terms.items()
            k = e[w]
            if k and c == 1:
                rest = str(ring.monomial([0 if i == w else a for i, a in enumerate(e)]))
                den = str(self.inverted) if k == 1 else f"{self.inverted}^{k}"
                return f"{rest}/{den}"
        pattern = re.compile(rf"\b{re.escape(self.inverse_name)}\b")
        return pattern.sub(f"(1/{self.inverted})", str(g))

    def __str__(self) -> str:
        return "(" + ", ".join(self._format(g) for g in self.morphism.images) + ")"


def chart_transition(charts: Sequence[BlowupChart], i: int, j: int) -> Transition:
    """Coordinates of chart ``i`` expressed on chart ``j`` (coordinate centers only).

    X_i ↦ x_i·x_j, X_j ↦ 1/x_i, X_k ↦ x_k/x_i for the other center variables.
    """
    if i == j:
        raise DomainError("a transition needs two distinct charts")
    ci, cj = charts[i], charts[j]
    if not (ci.is_coordinate and cj.is_coordinate):
        raise DomainError("transitions are implemented for coordinate centers")
    vi, vj = ci.chart_variable, cj.chart_variable
    ring = cj.ring
    (w,) = ring.fresh_names("w", 1)
    target = ring.extend([w])
    g = target.gens()
    wp = target.gen(w)
    images = list(g[: ring.ngens])
    for k in ci.center_indices:
        if k == vi:
            images[k] = g[vi] * g[vj]
        elif k == vj:
            images[k] = wp
        else:
            images[k] = g[k] * wp
    phi = RingMorphism(ci.ring, target, tuple(images))
    return Transition(phi, w, g[vi], wp * g[vi] - 1)


def monomialize_at(chart: BlowupChart, point: Sequence) -> RingMorphism:
    """Chart map followed by the translation moving ``point`` (on E) to the origin.

    In the translated coordinates the chart map reads x_i ↦ (x_i + a_i)·x_j,
    i.e. the standard monomial chart after the linear change x_i ↦ x_i + a_i·x_j
    of the base.
    """
    return translated_chart(chart, point).map


def translated_chart(chart: BlowupChart, point: Sequence) -> BlowupChart:
    if not chart.is_coordinate:
        raise DomainError("monomialization needs a coordinate center")
    ring = chart.ring
    if len(point) != ring.ngens:
        raise DomainError("point has the wrong number of coordinates")
    a = tuple(ring.field(x) for x in point)
    if a[chart.chart_variable] != 0:
        raise DomainError(f"point {a} is not on the exceptional divisor {chart.exceptional} = 0")
    shift = RingMorphism(ring, ring, tuple(g + c for g, c in zip(ring.gens(), a)))
    composite = chart.map.then(shift)
    return BlowupChart(
        name=chart.name,
        index=chart.index,
        center=chart.center,
        map=composite,
        exceptional=shift(chart.exceptional),
        chart_ideal=chart.chart_ideal,
        center_indices=chart.center_indices,
        translation=a,
    )


def point_blowup_charts(ring: Ring, names: Optional[Sequence[str]] = None) -> list[BlowupChart]:
    """Charts of the blowup of the origin (or of the coordinate subspace ``names``)."""
    return coordinate_charts(Center.coordinate(ring, names or ring.variables))
