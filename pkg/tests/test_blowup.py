from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import R2, R3, nonzero_polynomials
from singres.blowup import (
    Center,
    chart_by_name,
    chart_transition,
    coordinate_charts,
    general_charts,
    monomialize_at,
    naive_rees_ideal,
    point_blowup_charts,
    rees_ideal,
    translated_chart,
)
from singres.errors import DomainError
from singres.groebner import Ideal
from singres.ring import Ring, RingMorphism


@pytest.mark.parametrize(
    "ring,center,expected",
    [
        (R2, ["x", "y"], "(x*u2 - y*u1)"),
        (R2, ["x", "y^2"], "(x*u2 - y^2*u1)"),
        (R3, ["x*y", "z"], "(x*y*u2 - z*u1)"),
        (R3, ["x", "y*z"], "(x*u2 - y*z*u1)"),
    ],
)
def test_rees_ideals(ring, center, expected):
    pres = rees_ideal(Center(ring, tuple(ring(g) for g in center)))
    assert str(pres.ideal) == expected
    assert pres.ideal == Ideal(pres.ring, [pres.ring(expected[1:-1])])


def test_rees_ideal_non_regular_sequence():
    c = Center(R2, (R2("x^2"), R2("x*y"), R2("y^3")))
    full, naive = rees_ideal(c), naive_rees_ideal(c)
    assert naive.ideal <= full.ideal
    witness = [g for g in full.ideal.generators if not naive.ideal.contains(g)]
    assert witness
    # x*u2 - y*u1 lies in the Rees ideal; the naive relations only give x times it
    g = full.ring("x*u2 - y*u1")
    assert full.ideal.contains(g) and not naive.ideal.contains(g)


def test_general_charts_of_x_yz():
    u1, u2 = general_charts(Center(R3, (R3("x"), R3("y*z"))))
    assert u1.chart_ideal == Ideal(u1.ring, [u1.ring("x*u2 - y*z")])
    assert u2.chart_ideal == Ideal(u2.ring, [u2.ring("x - y*z*u1")])


def test_coordinate_charts_and_names():
    charts = point_blowup_charts(R3)
    assert [c.name for c in charts] == ["chart:x", "chart:y", "chart:z"]
    y = chart_by_name(charts, "y")
    assert [str(g) for g in y.map.images] == ["x*y", "y", "y*z"]
    with pytest.raises(DomainError):
        chart_by_name(charts, "w")
    with pytest.raises(DomainError):
        coordinate_charts(Center(R2, (R2("x^2"), R2("y"))))


def test_transitions():
    charts = point_blowup_charts(R3, ["x", "y"])
    assert str(chart_transition(charts, 0, 1)) == "(x*y, 1/x, z)"
    assert str(chart_transition(charts, 1, 0)) == "(1/y, x*y, z)"
    full = point_blowup_charts(R3)
    assert str(chart_transition(full, 0, 1)) == "(x*y, 1/x, z/x)"


@given(nonzero_polynomials(R3, max_terms=3, max_deg=3), st.sampled_from([(0, 1), (1, 2), (0, 2), (2, 0)]))
def test_transition_is_compatible(f, pair):
    """Pulling back through chart i then the transition equals chart j, up to the relation."""
    i, j = pair
    charts = point_blowup_charts(R3)
    tr = chart_transition(charts, i, j)
    target = tr.morphism.target
    via_i = tr.morphism(charts[i].map(f))
    via_j = charts[j].map(f).change_ring(target)
    # on the open set w*x_i = 1 the two agree: the difference lies in (w*x_i - 1)
    assert Ideal(target, [tr.relation]).contains(via_i - via_j)


def test_monomialize_at():
    z = chart_by_name(point_blowup_charts(R3), "z")
    phi = monomialize_at(z, (0, 1, 0))
    assert str(phi) == "(x*z, y*z + z, z)"
    with pytest.raises(DomainError):
        translated_chart(z, (0, 0, 1))


def test_rees_name_clash():
    R = Ring(("u1", "u2"))
    pres = rees_ideal(Center(R, (R("u1"), R("u2"))))
    assert set(pres.u_names).isdisjoint(R.variables)
