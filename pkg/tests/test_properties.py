from conftest import nonzero_polys, polys, scalars
from hypothesis import given, settings
from hypothesis import strategies as st

from liecommutant.commutant import build_generating_set
from liecommutant.grading import grade, minkowski, predict_bracket_grading, predict_monomial_grading
from liecommutant.lie import make_sl, make_su3_elliott
from liecommutant.poisson import coadjoint_action, poisson_bracket
from liecommutant.roots import classify_bracket, enumerate_cartan_generators, sl_spec
from liecommutant.scalar import ONE, ZERO

SU3 = make_su3_elliott()
SL3 = make_sl(3)
SPECS = st.sampled_from([SU3, SL3])


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(SPECS, st.data())
def test_poisson_axioms(spec, data):
    p, q, r = (data.draw(polys(spec.dim, max_terms=3)) for _ in range(3))
    br = lambda a, b: poisson_bracket(spec, a, b)
    assert br(p, q) == -br(q, p)
    assert br(p, q * r) == br(p, q) * r + q * br(p, r)
    assert (br(p, br(q, r)) + br(q, br(r, p)) + br(r, br(p, q))).is_zero()


@given(SPECS, st.data())
def test_coadjoint_action_is_a_derivation_of_the_bracket(spec, data):
    p, q = (data.draw(polys(spec.dim, max_terms=3)) for _ in range(2))
    m = data.draw(st.integers(0, spec.dim - 1))
    ad = lambda f: coadjoint_action(spec, m, f)
    assert ad(poisson_bracket(spec, p, q)) == poisson_bracket(spec, ad(p), q) + poisson_bracket(spec, p, ad(q))


@given(SPECS, st.data())
def test_bracket_lowers_degree_by_one(spec, data):
    p = data.draw(nonzero_polys(spec.dim, max_terms=2))
    q = data.draw(nonzero_polys(spec.dim, max_terms=2))
    b = poisson_bracket(spec, p, q)
    if p.is_homogeneous() and q.is_homogeneous() and b:
        assert b.is_homogeneous() and b.degree() == p.degree() + q.degree() - 1


@given(SPECS, st.data())
def test_grade_of_product_is_within_minkowski_sum(spec, data):
    p = data.draw(nonzero_polys(spec.dim, max_terms=3))
    q = data.draw(nonzero_polys(spec.dim, max_terms=3))
    assert grade(spec, p * q) <= minkowski(grade(spec, p), grade(spec, q))


@given(SPECS, st.data())
def test_prediction_soundness_on_random_polynomials(spec, data):
    p = data.draw(nonzero_polys(spec.dim, max_terms=3))
    q = data.draw(nonzero_polys(spec.dim, max_terms=3))
    b = poisson_bracket(spec, p, q)
    mono = predict_monomial_grading(spec, p, q)
    assert mono <= predict_bracket_grading(spec, grade(spec, p), grade(spec, q))
    if b:
        assert grade(spec, b) <= mono


@settings(max_examples=40)
@given(st.integers(2, 4), st.data())
def test_cycle_expansions_match_engine(n, data):
    gens = enumerate_cartan_generators(n)
    p = data.draw(st.sampled_from(gens))
    q = data.draw(st.sampled_from(gens))
    assert classify_bracket(n, p, q).expansion.poly() == poisson_bracket(sl_spec(n), p.poly(), q.poly())


def test_generating_sets_are_deterministic():
    a = build_generating_set(SU3, "so3", 4)
    b = build_generating_set(SU3, "so3", 4)
    assert [(g.label, g.poly) for g in a] == [(g.label, g.poly) for g in b]
