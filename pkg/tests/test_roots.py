import itertools
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liecommutant.poisson import poisson_bracket
from liecommutant.roots import (
    CycleGenerator, Root, all_roots, canonical_cycle, cartan_generator_count, cartan_pair_bracket,
    check_root_i, check_root_ii, check_rootc, classify_bracket, connected, coroot, cycle_label,
    enumerate_cartan_generators, enumerate_cycles, inverse_cycle, parse_generator, root_expansion,
    sl_spec, split_into_cycles, structure_constant,
)
from liecommutant.scalar import Scalar


def test_root_arithmetic():
    a, b = Root(1, 2), Root(2, 3)
    assert a.plus(b) == Root(1, 3)
    assert b.plus(a) == Root(1, 3)
    assert connected(a, b)
    assert not connected(a, Root(3, 4))
    assert not connected(a, -a)
    assert -a == Root(2, 1) and a.positive and not (-a).positive
    with pytest.raises(ValueError):
        Root(2, 2)


def test_root_count():
    for n in range(1, 6):
        assert len(all_roots(n)) == n * (n + 1)


def count_cycles_formula(n):
    # r-cycles on n+1 points: C(n+1, r) (r-1)!
    return sum(comb(n + 1, r) * factorial(r - 1) for r in range(2, n + 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cycle_enumeration(n):
    cyc = enumerate_cycles(n)
    assert len(cyc) == count_cycles_formula(n) == len(set(cyc))
    assert cartan_generator_count(n) == n + len(cyc)
    assert len(enumerate_cartan_generators(n)) == cartan_generator_count(n)
    assert all(canonical_cycle(c) == c for c in cyc)


def test_generator_counts_small():
    assert [cartan_generator_count(n) for n in (1, 2, 3)] == [2, 7, 23]


def test_cycle_helpers():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
    assert inverse_cycle((1, 2, 3)) == (1, 3, 2)
    assert cycle_label((1, 2, 3)) == "p123"
    assert cycle_label((1, 10)) == "p1_10"
    assert parse_generator(3, "1,3,2").label == "p132"
    assert parse_generator(3, "p1_3_2").label == "p132"
    assert parse_generator(3, (2, 3)).label == "p23"
    assert parse_generator(3, "h2").label == "h2"
    for bad in ("p11", "p15", "h4", "zz"):
        with pytest.raises(ValueError):
            parse_generator(3, bad)


@pytest.mark.parametrize("n", [2, 3])
def test_structure_constants_match_builtin(n):
    spec = sl_spec(n)
    for a in all_roots(n):
        for b in all_roots(n):
            s = a.plus(b)
            if s is None:
                continue
            got = spec.bracket(spec.index(f"e{a.i}{a.j}"), spec.index(f"e{b.i}{b.j}"))
            assert got == {spec.index(f"e{s.i}{s.j}"): structure_constant(n, a, b)}


def test_coroots():
    assert coroot(3, Root(1, 3)) == {1: Scalar(1), 2: Scalar(1)}
    assert coroot(3, Root(3, 1)) == {1: Scalar(-1), 2: Scalar(-1)}
    spec = sl_spec(3)
    for a in all_roots(3):
        br = spec.bracket(spec.index(f"e{a.i}{a.j}"), spec.index(f"e{a.j}{a.i}"))
        assert br == {k - 1: c for k, c in coroot(3, a).items()}


@given(st.permutations(range(1, 6)), st.integers(2, 5))
def test_split_into_cycles_rebuilds_edges(perm, r):
    # two disjoint cycles glued into one multiset of edges
    c1 = perm[:r]
    edges = [Root(c1[i], c1[(i + 1) % r]) for i in range(r)]
    c2 = perm[r - 1:] if len(perm[r - 1:]) >= 2 else ()
    if len(c2) >= 2:
        edges += [Root(c2[i], c2[(i + 1) % len(c2)]) for i in range(len(c2))]
    parts = split_into_cycles(edges)
    rebuilt = sorted(e for c in parts for e in [Root(c[i], c[(i + 1) % len(c)]) for i in range(len(c))])
    assert rebuilt == sorted(edges)


CASES = [
    (3, "p12", "p234", "one connected root, Cartan-free: indecomposable terms", "-p1234 + p1342"),
    (3, "p12", "p123", "inverse root present: Cartan term (closed form with coroot)", "-h1*p123 + p12*p13 - p12*p23"),
    (3, "p234", "p1234", "(C) all three roots connected", None),
    (2, "p123", "p132", "(b) inverse cycle: every root inverted", None),
    (3, "p123", "p134", "(a) one inverse root: Cartan term", None),
    (3, "p123", "p1432", "(b) two inverse roots: Cartan term", None),
    (3, "p12", "p34", "no connected root: bracket vanishes", "0"),
    (3, "h1", "p123", "Cartan coordinate: bracket vanishes", "0"),
]


@pytest.mark.parametrize("n,p,q,label,expansion", CASES)
def test_classification_examples(n, p, q, label, expansion):
    c = classify_bracket(n, p, q)
    assert c.label == label
    if expansion is not None:
        assert c.expansion.format() == expansion
    spec = sl_spec(n)
    assert c.expansion.poly() == poisson_bracket(spec, parse_generator(n, p).poly(), parse_generator(n, q).poly())


def test_two_inverse_roots_with_indecomposable_partner():
    # p1432 is a 4-cycle generator, not a product, yet shares two inverse roots with p123
    c = classify_bracket(3, "p123", "p1432")
    assert c.inverse_pairs == 2
    assert parse_generator(3, "p1432").degree == 4


@pytest.mark.parametrize("n", [2, 3])
def test_closed_forms_exhaustive(n):
    spec = sl_spec(n)
    gens = [g for g in enumerate_cartan_generators(n) if g.cartan is None]
    for p, q in itertools.product(gens, repeat=2):
        if p.degree == 2 or q.cycle == inverse_cycle(p.cycle):
            assert cartan_pair_bracket(n, p, q) == poisson_bracket(spec, p.poly(), q.poly())
        else:
            with pytest.raises(ValueError):
                cartan_pair_bracket(n, p, q)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_root_facts(n):
    assert check_root_i(n) == []
    assert check_root_ii(n) == []
    assert check_rootc(n) == []


def test_literal_global_reading_of_second_root_fact_fails():
    # over the whole root system, -b is connected to many roots besides b
    a = Root(1, 2)
    assert any(connected(a, b) for b in all_roots(2) if b != -a)


def test_expansion_json_and_equality():
    ex = root_expansion(3, "p12", "p234")
    assert ex.to_json() == [{"coeff": "-1", "factors": ["p1234"]}, {"coeff": "1", "factors": ["p1342"]}]
    assert CycleGenerator(3, (1, 2)).poly() == parse_generator(3, "p21").poly()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_generator_count_closed_form(n):
    # sum over r of (n+1)!/((n+1-r)! r), minus one for the trace relation
    total = sum(factorial(n + 1) // (factorial(n + 1 - r) * r) for r in range(1, n + 2)) - 1
    assert cartan_generator_count(n) == total
