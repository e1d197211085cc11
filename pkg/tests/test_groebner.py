from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R2, R3, from_sympy, nonzero_polynomials, polynomials, to_sympy
from singres.errors import SaturationCapExceeded
from singres.groebner import (
    DEGLEX,
    DEGREVLEX,
    LEX,
    Ideal,
    colon,
    eliminate,
    intersect,
    is_macaulay_basis,
    krull_dimension,
    macaulay_basis,
    saturate,
)
from singres.ring import GF, Ring


def _sympy_reduced(I: Ideal, order: str):
    syms = sympy.symbols(I.ring.variables)
    kw = {"modulus": I.ring.field.p} if I.ring.field.p else {}
    G = sympy.groebner([to_sympy(g).as_expr() for g in I.generators], *syms, order=order, **kw)
    return sorted(str(from_sympy(g, I.ring).monic()) for g in G.exprs)


@pytest.mark.parametrize("order,name", [(LEX, "lex"), (DEGLEX, "grlex"), (DEGREVLEX, "grevlex")])
def test_reduced_basis_matches_sympy(order, name):
    I = Ideal(R3, [R3("y^2 - x*z"), R3("y*z - x^3"), R3("z^2 - x^2*y")])
    mine = sorted(str(g.monic()) for g in I.groebner(order).elements)
    assert mine == _sympy_reduced(I, name)


@settings(max_examples=40)
@given(st.lists(nonzero_polynomials(R3, max_terms=3, max_deg=2), min_size=1, max_size=3))
def test_random_bases_match_sympy(gens):
    I = Ideal(R3, gens)
    mine = sorted(str(g.monic()) for g in I.groebner(DEGREVLEX).elements)
    assert mine == _sympy_reduced(I, "grevlex")


@settings(max_examples=30)
@given(st.lists(nonzero_polynomials(Ring(("x", "y"), GF(3)), max_terms=3), min_size=1, max_size=3))
def test_random_bases_mod_p(gens):
    I = Ideal(gens[0].ring, gens)
    mine = sorted(str(g.monic()) for g in I.groebner(DEGREVLEX).elements)
    assert mine == _sympy_reduced(I, "grevlex")


@given(st.lists(nonzero_polynomials(R2, max_terms=3), min_size=1, max_size=3), polynomials(R2), polynomials(R2))
def test_membership_of_combinations(gens, a, b):
    I = Ideal(R2, gens)
    f = a * gens[0] + b * gens[-1]
    assert I.contains(f)
    assert I.groebner().normal_form(f) == R2(0)


def test_elimination():
    I = Ideal(R3, [R3("x - y^2"), R3("z - y^3")])
    E = eliminate(I, ["y"])
    assert E.ring.variables == ("x", "z")
    assert E == Ideal(E.ring, [E.ring("x^3 - z^2")])


def test_intersection_and_colon():
    I = Ideal(R2, [R2("x^2"), R2("x*y")])
    J = Ideal(R2, [R2("y")])
    assert intersect(I, J) == Ideal(R2, [R2("x*y")])
    assert colon(I, R2("x")) == Ideal(R2, [R2("x"), R2("y")])


@given(st.lists(nonzero_polynomials(R2, max_terms=2, max_deg=2), min_size=1, max_size=2),
       st.lists(nonzero_polynomials(R2, max_terms=2, max_deg=2), min_size=1, max_size=2))
def test_intersection_properties(a, b):
    I, J = Ideal(R2, a), Ideal(R2, b)
    K = intersect(I, J)
    assert K <= I and K <= J
    assert I * J <= K


def test_saturation_examples():
    sat, k = saturate(Ideal(R2, [R2("x^2*y^2"), R2("y^3")]), R2("y"))
    assert sat.is_unit() and k == 3
    sat, k = saturate(Ideal(R2, [R2("x^2 + x^17*y^17")]), R2("x"))
    assert sat == Ideal(R2, [R2("x^15*y^17 + 1")]) and k == 2


@settings(max_examples=30)
@given(nonzero_polynomials(R2, max_terms=3, max_deg=2), st.integers(0, 3))
def test_saturation_removes_powers(f, k):
    h = R2("x")
    sat, _ = saturate(Ideal(R2, [f * h**k]), h)
    base, _ = saturate(Ideal(R2, [f]), h)
    assert sat == base
    assert Ideal(R2, [f]) <= sat


def test_saturation_cap():
    with pytest.raises(SaturationCapExceeded):
        saturate(Ideal(R2, [R2("x^70*y")]), R2("x"), cap=64)


def test_krull_dimension():
    P = Ideal(R3, [R3("y^2 - x*z"), R3("y*z - x^3"), R3("z^2 - x^2*y")])
    assert krull_dimension(P) == 1
    assert krull_dimension(Ideal(R3, [R3("x")])) == 2
    assert krull_dimension(Ideal(R3, list(R3.gens()))) == 0


def test_macaulay_basis_example():
    I = Ideal(R3, [R3("x^2 - y^3"), R3("x*y - z^3")])
    B = macaulay_basis(I)
    assert Ideal(R3, B) == I
    assert any((g - R3("x*z^3 - y^4")).is_zero() or (g + R3("x*z^3 - y^4")).is_zero() for g in B)
    assert is_macaulay_basis(I, B)
    assert not is_macaulay_basis(I, I.generators)


def test_canonical_form_is_stable():
    I = Ideal(R2, [R2("x^2 - y"), R2("x*y")])
    J = Ideal(R2, [R2("x*y"), R2("x^2 - y"), R2("y^2")])
    assert str(I.canonical()) == str(J.canonical())
    assert str(Ideal.unit(R2).canonical()) == "(1)"
