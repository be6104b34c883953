import os
import sys
from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from liecommutant.poly import Poly
from liecommutant.scalar import Scalar

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SURDS = (sympy.Integer(1), sympy.sqrt(2), sympy.sqrt(3), sympy.sqrt(6))


def scalar_to_sympy(x: Scalar):
    return sum(sympy.Rational(f.numerator, f.denominator) * s for f, s in zip(x.components(), SURDS))


def poly_to_sympy(p: Poly, syms):
    expr = sympy.Integer(0)
    for m, c in p.items():
        term = scalar_to_sympy(c)
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def sympy_equal(a, b) -> bool:
    return sympy.simplify(sympy.expand(a - b)) == 0


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, fractions, fractions, fractions, fractions)
small_scalars = st.builds(
    Scalar, fractions, st.sampled_from([0, 1, Fraction(-1, 2)]), st.just(0), st.sampled_from([0, 2])
)


def polys(nvars: int, max_terms: int = 4, max_exp: int = 2, coeffs=None):
    coeffs = coeffs if coeffs is not None else st.integers(-5, 5).map(Scalar.coerce)
    mono = st.tuples(*[st.integers(0, max_exp)] * nvars)
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(lambda d: Poly(nvars, d))


def nonzero_polys(nvars: int, **kw):
    return polys(nvars, **kw).filter(lambda p: not p.is_zero())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
