import pytest
import sympy
from conftest import poly_to_sympy, polys, scalar_to_sympy, sympy_equal
from hypothesis import given, settings
from hypothesis import strategies as st

from liecommutant.lie import make_sl, make_su3_elliott
from liecommutant.poisson import bracket_by_derivatives, coadjoint_action, poisson_bracket
from liecommutant.poly import Poly
from liecommutant.scalar import Scalar

SU3 = make_su3_elliott()
SL3 = make_sl(3)


def sympy_bracket(spec, p, q):
    """Independent oracle: sum_ijk C_ij^k x_k dp/dx_i dq/dx_j in sympy."""
    xs = sympy.symbols(f"x0:{spec.dim}")
    sp, sq = poly_to_sympy(p, xs), poly_to_sympy(q, xs)
    out = 0
    for (i, j), row in spec.structure.items():
        lin = sum(scalar_to_sympy(c) * xs[k] for k, c in row.items())
        out += lin * sympy.diff(sp, xs[i]) * sympy.diff(sq, xs[j])
    return sympy.expand(out), xs


@pytest.mark.parametrize("spec", [SU3, SL3], ids=["su3", "sl3"])
@settings(max_examples=15)
@given(data=st.data())
def test_bracket_matches_sympy(spec, data):
    p = data.draw(polys(spec.dim, max_terms=3))
    q = data.draw(polys(spec.dim, max_terms=3))
    want, xs = sympy_bracket(spec, p, q)
    assert sympy_equal(poly_to_sympy(poisson_bracket(spec, p, q), xs), want)


@pytest.mark.parametrize("spec", [SU3, SL3], ids=["su3", "sl3"])
@given(data=st.data())
def test_two_routes_agree(spec, data):
    p = data.draw(polys(spec.dim))
    q = data.draw(polys(spec.dim))
    assert poisson_bracket(spec, p, q) == bracket_by_derivatives(spec, p, q)


def test_coordinates_reproduce_structure_constants():
    for spec in (SU3, SL3):
        x = spec.vars()
        for i in range(spec.dim):
            for j in range(spec.dim):
                want = Poly(spec.dim, {tuple(int(t == k) for t in range(spec.dim)): c
                                       for k, c in spec.bracket(i, j).items()})
                assert poisson_bracket(spec, x[i], x[j]) == want


@given(polys(SL3.dim))
def test_coadjoint_is_bracket_with_coordinate(p):
    for m in range(SL3.dim):
        assert coadjoint_action(SL3, m, p) == poisson_bracket(SL3, SL3.vars()[m], p)


def test_quadratic_casimir_of_sl2_is_central():
    sl2 = make_sl(2)
    h, e, f = sl2.vars()
    # with [h,e] = 2e, [h,f] = -2f, [e,f] = h the Casimir is h^2 + 4ef
    cas = h * h + (e * f).scale(Scalar(4))
    for x in sl2.vars():
        assert poisson_bracket(sl2, cas, x).is_zero()


def test_dimension_check():
    with pytest.raises(ValueError):
        poisson_bracket(SL3, Poly.var(3, 0), Poly.var(8, 0))
