from __future__ import annotations

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from singres.ring import GF, QQ, Polynomial, Ring

# derandomized so that repeated runs print identical results
settings.register_profile(
    "singres",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("singres")

R2 = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))


def to_sympy(f: Polynomial):
    syms = sympy.symbols(f.ring.variables)
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else sympy.Integer(c)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return sympy.Poly(expr, *syms, modulus=f.ring.field.p or None) if f.ring.field.p else sympy.Poly(expr, *syms)


def from_sympy(expr, ring: Ring) -> Polynomial:
    syms = sympy.symbols(ring.variables)
    P = sympy.Poly(expr, *syms)
    terms = {}
    for e, c in P.terms():
        c = sympy.Rational(c)
        terms[e] = ring.field(f"{c.p}/{c.q}")
    return Polynomial(ring, terms)


def polynomials(ring: Ring, max_terms: int = 4, max_deg: int = 3, coeff: int = 5):
    n = ring.ngens
    exps = st.tuples(*[st.integers(0, max_deg)] * n)
    coeffs = st.integers(-coeff, coeff)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def nonzero_polynomials(ring: Ring, **kw):
    return polynomials(ring, **kw).filter(bool)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
