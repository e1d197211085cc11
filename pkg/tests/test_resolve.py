from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R2, R3
from singres.blowup import Center, chart_by_name, coordinate_charts, point_blowup_charts
from singres.errors import DomainError, NonRationalPoint, PositiveDimensional
from singres.geometry import order_at_point
from singres.groebner import Ideal
from singres.resolve import (
    BlowupStep,
    blowup_sequence,
    equiconstant_locus,
    resolve_curve_embedded,
    resolve_hypersurface_char0,
    resolve_monomial,
    snc_check_plane,
)
from singres.ring import GF, Field, Ring, RingMorphism
from singres.transform import controlled_transform


# -- snc --------------------------------------------------------------------


def test_snc_examples():
    assert snc_check_plane([R2("x"), R2("y")], [(0, 0)])
    assert not snc_check_plane([R2("y^2 - x^3"), R2("x")], [(0, 0)])
    assert not snc_check_plane([R2("y - x^2"), R2("y")], [(0, 0)])
    assert not snc_check_plane([R2("x"), R2("y"), R2("x - y")], [(0, 0)])
    assert snc_check_plane([R2("y - x^2"), R2("y")], [(1, 1)])


# -- curve driver -----------------------------------------------------------


def _replay(trace):
    """Recompute every node equation from its parent through the recorded chart map."""
    for node in trace.nodes():
        for child in node.children:
            if not child.chart_map or node.status != "blown-up":
                continue
            ring = child.ring
            phi = RingMorphism(ring, ring, tuple(ring(g) for g in child.chart_map))
            chart_var = child.path[-1].split("@")[0].split(":")[1]
            total = phi(node.equation)
            o = int(node.equation.order())
            assert total.exact_div(ring.gen(chart_var) ** o) == child.equation


def test_cusp_resolution():
    tr = resolve_curve_embedded(R2("x^2 - y^3"))
    assert tr.status == "resolved"
    assert tr.info["smooth_after"] == 1
    assert tr.step_count == 3
    _replay(tr)
    # multiplicities of the exceptional curves at the last intersection point
    deepest = [n for n in tr.nodes() if len(n.path) == 3]
    mults = sorted(e.multiplicity for n in deepest for e in n.exceptional.entries)
    assert 6 in mults


def _hand_composed_cusp():
    """Three point blowups of x^2 - y^3 composed by hand from the chart formulas."""
    x, y = R2.gens()
    f = R2("x^2 - y^3")
    # blowup 1, y-chart: x -> x*y
    f1 = f.substitute({"x": x * y}).exact_div(y**2)
    assert f1 == R2("x^2 - y")
    # blowup 2, x-chart: y -> x*y; tangency with E1 = {y = 0} is separated
    f2 = f1.substitute({"y": x * y}).exact_div(x)
    assert f2 == R2("x - y")
    # blowup 3, x-chart: y -> x*y; the triple point of E1, E2 and f2 is removed
    f3 = f2.substitute({"y": x * y}).exact_div(x)
    return f3


def test_cusp_matches_hand_composition():
    f3 = _hand_composed_cusp()
    tr = resolve_curve_embedded(R2("x^2 - y^3"))
    leaf = next(n for n in tr.nodes() if n.name == "chart:y/chart:x/chart:x")
    assert leaf.equation == f3
    assert leaf.status == "good"


@pytest.mark.parametrize(
    "poly,steps",
    [("x", 0), ("x*y", 1), ("y^2 - x^2 - x^3", 1), ("x*y*(x + y)", 1), ("x^2 - y^5", 4)],
)
def test_curve_driver_step_counts(poly, steps):
    tr = resolve_curve_embedded(R2(poly))
    assert tr.status == "resolved" and tr.step_count == steps
    _replay(tr)


def test_curve_driver_leaves_are_snc():
    for poly in ["x^2 - y^3", "x^3 - y^5", "(x^2 - y^3)*(x - y)"]:
        tr = resolve_curve_embedded(R2(poly))
        for leaf in tr.root.leaves():
            comps = [leaf.equation] + [R2.gen(v) for v in leaf.exceptional.variables]
            assert snc_check_plane([c for c in comps if c.order() >= 1 or c == leaf.equation], [(0, 0)])


def test_curve_driver_away_from_origin():
    tr = resolve_curve_embedded(R2("(x - 1)^2 - y^3"))
    assert tr.root.status == "split" and tr.step_count == 3


def test_curve_driver_char_p():
    tr = resolve_curve_embedded(Ring(("x", "y"), GF(3))("x^2 - y^3"))
    assert tr.status == "resolved"


def test_step_limit():
    tr = resolve_curve_embedded(R2("x^2 - y^7"), max_steps=1)
    assert tr.status == "step-limit"


def test_curve_driver_preconditions():
    with pytest.raises(DomainError):
        resolve_curve_embedded(R3("x^2 - y^3"))
    with pytest.raises(DomainError):
        resolve_curve_embedded(R2("1"))


# -- hypersurface driver ----------------------------------------------------


def test_cone_resolved_in_one_blowup():
    tr = resolve_hypersurface_char0(R3("x^2 + y*z"))
    assert tr.status == "resolved" and tr.blowups == 1 and tr.step_count == 1
    for leaf in tr.root.leaves():
        assert all(order_at_point(leaf.equation, (0, 0, 0)).value <= 1 for _ in [0])


def test_embedded_hypersurface_matches_curve_driver():
    a = resolve_hypersurface_char0(R2("x^2 + y^3"), embedded=True)
    b = resolve_curve_embedded(R2("x^2 + y^3"))
    assert a.root.to_json() == b.root.to_json()


def test_smooth_hypersurface():
    tr = resolve_hypersurface_char0(R3("x + y^2 + z^3"))
    assert tr.step_count == 0 and tr.status == "resolved"


def test_hypersurface_preconditions():
    with pytest.raises(DomainError):
        resolve_hypersurface_char0(Ring(("x", "y"), GF(2))("x^2 + y^3"))
    with pytest.raises(DomainError):
        resolve_hypersurface_char0(R3("x^2 + y^3"), embedded=True)


def test_point_centers_only():
    # non-rational directions and curves of bad points are out of reach of point centers
    with pytest.raises(NonRationalPoint):
        resolve_hypersurface_char0(R3("x^2 + y^2*z + z^3"))
    with pytest.raises(PositiveDimensional):
        resolve_hypersurface_char0(R3("x^2 + y*z^2 + z^5"))


@pytest.mark.parametrize("poly", ["x^2 + y^3 + z^4", "x^2 + y^3 + z^5", "x^3 + y^4 + z^5", "x^2 + y^3"])
def test_hypersurface_monotone_invariant(poly):
    ring = R2 if poly.count("z") == 0 else R3
    tr = resolve_hypersurface_char0(ring(poly))
    assert tr.status == "resolved"
    for node in tr.nodes():
        for child in node.children:
            if child.invariant and node.invariant and child.invariant[0] == node.invariant[0]:
                assert child.invariant <= node.invariant
    for leaf in tr.root.leaves():
        assert leaf.equation.order() < tr.info["c_plus"]


# -- monomial stage ---------------------------------------------------------


def test_monomial_example():
    tr = resolve_monomial({"x": 2, "y": 3}, 1)
    assert tr.status == "resolved" and tr.step_count == 2
    first = {n.name: n.data for n in tr.root.children}
    assert first == {"chart:x": {"x": 4, "y": 3}, "chart:y": {"x": 2, "y": 4}}


def test_monomial_trivial_cases():
    assert resolve_monomial({"x": 5}, 2, exceptional=["x"]).step_count == 0
    assert resolve_monomial({"x": 0, "y": 0}, 1).step_count == 0
    assert resolve_monomial([3, 4, 0], 2, exceptional=["x1", "x2"]).step_count == 0
    with pytest.raises(DomainError):
        resolve_monomial({"x": 1}, 1, exceptional=["y"])


@pytest.mark.parametrize("a,b,c", [(2, 3, 1), (1, 1, 1), (3, 1, 2), (2, 2, 3), (4, 1, 1)])
def test_monomial_bookkeeping_matches_transforms(a, b, c):
    """Replay every chart with actual polynomials and controlled transforms."""
    tr = resolve_monomial({"x": a, "y": b}, c)

    def walk(node, poly):
        mono = R2.monomial([node.data["x"], node.data["y"]])
        assert poly == mono
        for child in node.children:
            name = child.path[-1].split(":")[1]
            center = node.notes[0].removeprefix("center: ").split(" = ")[:-1]
            ch = chart_by_name(coordinate_charts(Center.coordinate(R2, center)), name)
            walk(child, controlled_transform(Ideal(R2, [poly]), ch, c).ideal.generators[0].monic())

    walk(tr.root, R2.monomial([a, b]))


# -- equiconstant points ----------------------------------------------------


@pytest.mark.parametrize("p,expected", [(0, {}), (3, {}), (5, {}),
                                        (2, {"chart:x": [(0, 1, 0)], "chart:y": [(1, 0, 0)]})])
def test_equiconstant_points_per_characteristic(p, expected):
    R = Ring(("x", "y", "z"), Field(p))
    f = R("x^4 + y^4 + z^6")
    found = {}
    for ch in point_blowup_charts(R):
        _, pts = equiconstant_locus(f, ch, 4)
        if pts:
            found[ch.name] = [tuple(int(a) for a in q) for q in pts]
        strict = ch.map(f).exact_div(ch.exceptional**4)
        for q in pts:
            assert order_at_point(strict, q).value == 4
    assert found == expected


def test_equiconstant_after_order_drop():
    x_chart, y_chart = point_blowup_charts(R2)
    assert equiconstant_locus(R2("x^2 + y^17"), x_chart, 2)[1] == []
    assert equiconstant_locus(R2("x^2 + y^17"), y_chart, 2)[1] == [(0, 0)]
    assert equiconstant_locus(R2("x + y^2"), y_chart, 2)[1] == []


# -- scripted sequences -----------------------------------------------------


def test_kangaroo_sequence():
    F = Ring(("x", "y", "z"), GF(2))
    steps = [BlowupStep("y"), BlowupStep("y", ("x", "y")), BlowupStep("z"), BlowupStep("z", (), (0, 1, 0))]
    tr = blowup_sequence(F("x^2 + y^7 + y*z^4"), steps)
    chain = tr.nodes()
    assert [str(n.equation) for n in chain] == [
        "x^2 + y^7 + y*z^4",
        "x^2 + y^5 + y^3*z^4",
        "x^2 + y^3 + y*z^4",
        "x^2 + y^3*z + y*z^3",
        "x^2 + y^3*z^2 + y^2*z^2",
    ]
    assert [n.invariant[1] for n in chain] == [5, 2, 2, 2, 3]
    with pytest.raises(DomainError):
        blowup_sequence(F("x^2 + y^7"), [BlowupStep("w")])
