from __future__ import annotations

import itertools
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R2, R3, nonzero_polynomials, to_sympy
from singres.errors import DomainError, NonRationalPoint, PositiveDimensional
from singres.geometry import (
    hilbert_samuel_prefix,
    order_along_prime,
    order_at_least_ideal,
    order_at_point,
    rational_points,
    singular_locus,
    symbolic_power_membership,
    top_locus_ideal,
)
from singres.groebner import Ideal, radical_contains
from singres.ring import GF, Ring

P_CURVE = Ideal(R3, [R3("y^2 - x*z"), R3("y*z - x^3"), R3("z^2 - x^2*y")])
F_SYM = R3("x^5 + x*y^3 + z^3 - 3*x^2*y*z")


def _sympy_order(f, a):
    syms = sympy.symbols(f.ring.variables)
    expr = to_sympy(f).as_expr().subs({s: s + c for s, c in zip(syms, a)}, simultaneous=True)
    P = sympy.Poly(sympy.expand(expr), *syms)
    return min((sum(m) for m in P.monoms()), default=math.inf) if not P.is_zero else math.inf


@given(nonzero_polynomials(R2), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_order_at_point_oracle(f, a):
    assert order_at_point(f, a).value == _sympy_order(f, a)


def test_order_of_unit_and_zero():
    assert order_at_point(Ideal.unit(R2)).value == 0
    assert order_at_point(Ideal(R2)).value == math.inf


def test_symbolic_power_example():
    assert not (P_CURVE**2).contains(F_SYM)
    assert (P_CURVE**2).contains(R3("x") * F_SYM)
    m = symbolic_power_membership(F_SYM, P_CURVE, 2)
    assert m.member and (P_CURVE**2).contains(m.witness * F_SYM) and not P_CURVE.contains(m.witness)
    rep = order_along_prime(F_SYM, P_CURVE)
    assert rep.value == 2


def test_order_along_coordinate_prime():
    P = Ideal(R3, [R3("x"), R3("y")])
    assert order_along_prime(R3("x^2*z + y^3"), P).value == 2


# curve points (t^3, t^4, t^5) on V(P_CURVE)
CURVE_POINTS = [(t**3, t**4, t**5) for t in (0, 1, -1, 2)]
PRIME_FIXTURES = [
    (P_CURVE, CURVE_POINTS, [F_SYM, P_CURVE.generators[0] ** 2, R3("x") * P_CURVE.generators[1],
                             P_CURVE.generators[0] * P_CURVE.generators[2] + P_CURVE.generators[1] ** 3]),
    (Ideal(R3, [R3("x"), R3("y")]), [(0, 0, c) for c in (0, 1, -2)],
     [R3("x^2*z + y^3"), R3("x*y*z - y^4"), R3("x^3 + y^3*z^2")]),
    (Ideal(R3, [R3("x - y"), R3("z")]), [(c, c, 0) for c in (0, 1, 3)],
     [R3("(x - y)^2 + z^3"), R3("z*(x - y)*x"), R3("(x-y)^3 - z^3*y")]),
]


@pytest.mark.parametrize("case", range(len(PRIME_FIXTURES)))
def test_zariski_nagata_fixtures(case):
    P, points, polys = PRIME_FIXTURES[case]
    for f in polys:
        k = order_along_prime(f, P).value
        for a in points:
            assert all(g.evaluate(a) == 0 for g in P.generators)
            assert order_at_point(f, a).value >= k


def test_singular_locus_and_top_locus():
    S = singular_locus(Ideal(R3, [R3("x^2 - y^2*z")]))
    assert S <= Ideal(R3, [R3("x"), R3("y")])
    assert radical_contains(S, R3("x")) and radical_contains(S, R3("y"))
    assert top_locus_ideal(Ideal(R3, [R3("x^2 + y*z")])) == Ideal(R3, list(R3.gens()))
    with pytest.raises(DomainError):
        top_locus_ideal(Ideal(Ring(("x",), GF(2)), [Ring(("x",), GF(2))("x^2")]))


def test_order_at_least_ideal_char_p():
    F = Ring(("x", "y", "z"), GF(2))
    L = order_at_least_ideal(Ideal(F, [F("x^2 + y^7 + y*z^4")]), 2)
    # y^6 + 1 has roots in F4 that are not in F2
    with pytest.raises(NonRationalPoint):
        rational_points(L + Ideal(F, [F("z - 1")]))
    assert (0, 0, 0) in rational_points(L + Ideal(F, [F("z")]))


def test_hilbert_samuel():
    assert hilbert_samuel_prefix(Ideal(R2, [R2("x^2 - y^3")]), N=3) == [1, 2, 2, 2]
    assert hilbert_samuel_prefix(Ideal(R3, [R3("x - y^2")]), N=3) == [1, 2, 3, 4]


def test_rational_points():
    pts = rational_points(Ideal(R2, [R2("x^2 - 1"), R2("y - x")]))
    assert pts == [(-1, -1), (1, 1)]
    with pytest.raises(NonRationalPoint):
        rational_points(Ideal(R2, [R2("x^2 - 2"), R2("y")]))
    with pytest.raises(PositiveDimensional):
        rational_points(Ideal(R2, [R2("x")]))
    F = Ring(("x", "y"), GF(5))
    assert rational_points(Ideal(F, [F("x^2 - 4"), F("y")])) == [(2, 0), (3, 0)]


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3, unique=True))
def test_rational_points_recovers_point_sets(points):
    I = Ideal.unit(R2)
    for p in points:
        I = I * Ideal.maximal(R2, p)
    assert rational_points(I) == sorted(tuple(map(int, p)) for p in points)
