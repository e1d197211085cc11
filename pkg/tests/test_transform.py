from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R2, R3, nonzero_polynomials
from singres.blowup import Center, chart_by_name, coordinate_charts, general_charts, point_blowup_charts
from singres.errors import DomainError
from singres.geometry import order_along_prime, order_at_point
from singres.groebner import Ideal
from singres.transform import (
    center_order,
    controlled_transform,
    strict_transform,
    strict_transform_via_macaulay,
    total_transform,
    transform,
    weak_transform,
)


def chart(ring, name, center=None):
    charts = point_blowup_charts(ring, center)
    return chart_by_name(charts, name)


def test_principal_example():
    f = Ideal(R2, [R2("x^2 + y^17")])
    assert str(total_transform(f, chart(R2, "x"))) == "(x^17*y^17 + x^2)"
    assert str(strict_transform(f, chart(R2, "x")).ideal) == "(x^15*y^17 + 1)"
    assert str(strict_transform(f, chart(R2, "y")).ideal) == "(x^2 + y^15)"
    assert weak_transform(f, chart(R2, "y")).ideal == strict_transform(f, chart(R2, "y")).ideal


def test_weak_versus_strict():
    I = Ideal(R2, [R2("x^2"), R2("y^3")])
    y = chart(R2, "y")
    assert weak_transform(I, y).ideal == Ideal(R2, [R2("x^2"), R2("y")])
    assert strict_transform(I, y).ideal.is_unit()
    assert strict_transform_via_macaulay(I, y).is_unit()
    with pytest.raises(DomainError):
        weak_transform(I, y, d=3)


def _generatorwise(I, ch):
    j = ch.chart_variable
    out = []
    for g in I.generators:
        img = ch.map(g)
        out.append(img.exact_div(ch.ring.gens()[j] ** img.max_power_dividing(j)))
    return Ideal(ch.ring, out)


def test_naive_strict_transforms_are_smaller():
    # dividing by the common exceptional power misses the strict transform
    I = Ideal(R2, [R2("x^2"), R2("y^3")])
    y = chart(R2, "y")
    W, S = weak_transform(I, y).ideal, strict_transform(I, y).ideal
    assert W <= S and not S <= W
    # dividing each generator separately misses it when they are no Macaulay basis
    J = Ideal(R3, [R3("x^2 - y^3"), R3("x*y - z^3")])
    for name, strict in (("x", False), ("y", True), ("z", True)):
        ch = chart(R3, name)
        N, S = _generatorwise(J, ch), strict_transform(J, ch).ideal
        assert N <= S
        assert (not S <= N) == strict


def test_controlled_transform():
    J = Ideal(R2, [R2("x^2*y^3")])
    assert str(controlled_transform(J, chart(R2, "x"), 1).ideal) == "(x^4*y^3)"
    assert str(controlled_transform(J, chart(R2, "y"), 1).ideal) == "(x^2*y^4)"
    assert controlled_transform(J, chart(R2, "x"), 0).ideal == total_transform(J, chart(R2, "x"))
    with pytest.raises(DomainError):
        controlled_transform(J, chart(R2, "x"), 6)


SPACE_CURVE_CHARTS = {
    "x": ["1 - x*y^3", "y - x*z^3", "z^3 - y^4"],
    "y": ["x^2 - y", "x - y*z^3", "x*z^3 - 1"],
    "z": ["x^2 - y^3*z", "x*y - z", "x - y^4"],
}


@pytest.mark.parametrize("name", ["x", "y", "z"])
def test_space_curve_charts(name):
    I = Ideal(R3, [R3("x^2 - y^3"), R3("x*y - z^3")])
    ch = chart(R3, name)
    expected = Ideal(R3, [R3(g) for g in SPACE_CURVE_CHARTS[name]])
    assert strict_transform(I, ch).ideal == expected
    assert strict_transform_via_macaulay(I, ch) == expected


def test_general_center_strict_transform():
    I = Ideal(R3, [R3("x^2 - y^2*z^2")])
    u1, u2 = general_charts(Center(R3, (R3("x"), R3("y*z"))))
    for ch in (u1, u2):
        S = strict_transform(I, ch).ideal
        assert total_transform(I, ch) <= S


def test_transform_dispatch():
    I = Ideal(R2, [R2("x^2")])
    assert transform(I, chart(R2, "y"), "total").ideal == Ideal(R2, [R2("x^2*y^2")])
    with pytest.raises(DomainError):
        transform(I, chart(R2, "y"), "controlled")
    with pytest.raises(DomainError):
        transform(I, chart(R2, "y"), "sideways")


@settings(max_examples=40)
@given(st.lists(nonzero_polynomials(R2, max_terms=3, max_deg=3), min_size=1, max_size=2), st.sampled_from("xy"))
def test_exceptional_order_equals_center_order(gens, name):
    I = Ideal(R2, gens)
    ch = chart(R2, name)
    d = center_order(I, ch)
    T = total_transform(I, ch)
    E = Ideal(R2, [ch.exceptional])
    assert order_along_prime(T, E).value >= d
    if all(g.order() == d for g in I.generators if g.order() == d) and d > 0:
        # the order along E is exactly d: the weak transform is not inside (h)
        assert not weak_transform(I, ch).ideal <= E or I.is_zero()


@settings(max_examples=40)
@given(nonzero_polynomials(R3, max_terms=4, max_deg=4), st.sampled_from("xyz"))
def test_order_bound_at_points_of_e(f, name):
    """The strict transform has order at most ord_0 f at points of E."""
    o = f.order()
    if o == 0:
        return
    ch = chart(R3, name)
    strict = strict_transform(Ideal(R3, [f]), ch).ideal
    j = ch.chart_variable
    for a in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (0, 2, 1)]:
        a = list(a)
        a[j] = 0
        assert order_at_point(strict, a).value <= o
