"""Total, strict, weak and controlled transforms of ideals under a blowup chart."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .blowup import BlowupChart
from .errors import DomainError
from .geometry import order_along_coordinates
from .groebner import Ideal, macaulay_basis, saturate
from .ring import Polynomial


@dataclass(frozen=True)
class TransformResult:
    """A transformed ideal; ``h_power`` is the exponent of h divided out (or the
    saturation exponent for strict transforms) and ``exceptional_order`` the
    order d of the ideal along the center when it was computed."""

    kind: str
    ideal: Ideal
    exceptional_order: Optional[Union[int, float]]
    h_power: int

    def __str__(self) -> str:
        return str(self.ideal)


def _as_ideal(I) -> Ideal:
    if isinstance(I, Polynomial):
        return Ideal(I.ring, [I])
    return I


def total_transform(I: Union[Ideal, Polynomial], chart: BlowupChart) -> Ideal:
    """Generated by the chart images of the generators (plus the chart relations)."""
    I = _as_ideal(I)
    if I.ring != chart.source:
        raise DomainError(f"ideal lives in {I.ring}, the chart starts from {chart.source}")
    gens = list(chart.chart_ideal.generators) + [chart.map(g) for g in I.generators]
    return Ideal(chart.ring, gens).canonical()


def strict_transform(I: Union[Ideal, Polynomial], chart: BlowupChart) -> TransformResult:
    """Saturation of the total transform by the exceptional equation."""
    I = _as_ideal(I)
    total = Ideal(chart.ring, list(chart.chart_ideal.generators) + [chart.map(g) for g in I.generators])
    sat, k = saturate(total, chart.exceptional)
    return TransformResult("strict", sat.canonical(), None, k)


def center_order(I: Union[Ideal, Polynomial], chart: BlowupChart) -> Union[int, float]:
    """Order d of I along the (coordinate) center of the chart."""
    I = _as_ideal(I)
    if not chart.is_coordinate:
        raise DomainError("weak and controlled transforms need a coordinate center")
    idx = chart.center_indices
    if I.is_zero():
        return math.inf
    return min(order_along_coordinates(g, idx) for g in I.generators)


def _divided(I: Ideal, chart: BlowupChart, c: int) -> Ideal:
    h = chart.exceptional
    hc = h**c
    return Ideal(chart.ring, [chart.map(g).exact_div(hc) for g in I.generators]).canonical()


def weak_transform(I: Union[Ideal, Polynomial], chart: BlowupChart, d: Optional[int] = None) -> TransformResult:
    """Total transform divided by h^d, d the order of I along the center."""
    I = _as_ideal(I)
    actual = center_order(I, chart)
    if d is not None and d != actual:
        raise DomainError(f"the order along the center is {actual}, not {d}")
    if actual == math.inf:
        return TransformResult("weak", Ideal(chart.ring), actual, 0)
    return TransformResult("weak", _divided(I, chart, int(actual)), actual, int(actual))


def controlled_transform(I: Union[Ideal, Polynomial], chart: BlowupChart, c: int) -> TransformResult:
    """Total transform divided by h^c; undefined when c exceeds the order along the center."""
    I = _as_ideal(I)
    if c < 0:
        raise DomainError("the control must be a natural number")
    d = center_order(I, chart)
    if c > d:
        raise DomainError(f"controlled transform undefined: control {c} exceeds the order {d} along the center")
    return TransformResult(f"controlled({c})", _divided(I, chart, c), d, c)


def strict_transform_via_macaulay(I: Union[Ideal, Polynomial], chart: BlowupChart) -> Ideal:
    """Generated by h^(-k)·g* for g in a Macaulay basis along the center, k maximal."""
    I = _as_ideal(I)
    if not chart.is_coordinate:
        raise DomainError("the Macaulay route needs a coordinate center")
    j = chart.chart_variable
    gens = []
    for g in macaulay_basis(I, chart.center_indices):
        img = chart.map(g)
        k = img.max_power_dividing(j)
        gens.append(img.exact_div(chart.ring.monomial([k if i == j else 0 for i in range(chart.ring.ngens)])))
    return Ideal(chart.ring, gens).canonical()


def transform(I, chart: BlowupChart, kind: str, control: Optional[int] = None):
    """Dispatch by name: total, strict, weak or controlled."""
    if kind == "total":
        return TransformResult("total", total_transform(I, chart), None, 0)
    if kind == "strict":
        return strict_transform(I, chart)
    if kind == "weak":
        return weak_transform(I, chart)
    if kind == "controlled":
        if control is None:
            raise DomainError("a controlled transform needs --control")
        return controlled_transform(I, chart, control)
    raise DomainError(f"unknown transform kind {kind!r}")
