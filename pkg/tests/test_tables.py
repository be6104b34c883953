import itertools
import json

import pytest

from liecommutant.chains import CHAINS, get_chain
from liecommutant.grading import grade, predict_monomial_grading
from liecommutant.poly import Poly
from liecommutant.tables import count_table, format_table

# counts computed by this package, frozen after the brute-force checks below
FROZEN = {
    "elliott": {"unpruned": [2, 4, 4, 8, 10, 17, 18], "monomial": [0, 0, 0, 3, 1, 8, 9],
                "block": [0, 0, 0, 3, 1, 8, 9]},
    "o3sl3": {"unpruned": [3, 6, 9, 15], "monomial": [0, 0, 4, 6], "block": [0, 0, 4, 8]},
    "cartan-sl3": {"unpruned": [12, 24, 42], "monomial": [2, 8, 12], "block": [8, 8, 18]},
    "cartan-sl4": {"unpruned": [36, 102, 258, 632, 1440], "monomial": [8, 37, 123, 168, 496],
                   "block": [26, 38, 123, 184, 496]},
}

PRINTED = {
    "elliott": [(2, 0), (4, 1), (4, 2), (8, 7), (8, 1), (17, 9), (18, 9)],
    "o3sl3": [(3, 0), (6, 2), (9, 5), (13, 7)],
    "cartan-sl3": [(12, 2), (24, 6), (42, 12)],
    "cartan-sl4": [(31, 8), (102, 39), (261, 129), (478, 236), (990, 492)],
}


@pytest.fixture(scope="module", params=CHAINS)
def table(request):
    return request.param, count_table(request.param)


def test_printed_columns_carried(table):
    name, rows = table
    assert [(r.printed_unpruned, r.printed_pruned) for r in rows] == PRINTED[name]


def test_frozen_counts(table):
    name, rows = table
    assert [r.unpruned for r in rows] == FROZEN[name]["unpruned"]
    assert [r.pruned for r in rows] == FROZEN[name]["monomial"]
    assert [r.pruned_block for r in rows] == FROZEN[name]["block"]


def test_monomial_rule_never_exceeds_block_rule(table):
    _, rows = table
    assert all(r.pruned <= r.pruned_block <= r.unpruned for r in rows)


def brute_pruned(chain, k, l):
    """Largest admissible set over pairs, grading every product polynomial directly."""
    spec, gens = chain.spec, chain.gens
    d = k + l - 1
    prods = []
    for r in range(1, d + 1):
        for combo in itertools.combinations_with_replacement(list(gens), r):
            if sum(g.degree for g in combo) == d:
                p = Poly.constant(spec.dim, 1)
                for g in combo:
                    p = p * g.poly
                prods.append(grade(spec, p))
    best = 0
    for a, b in itertools.product(gens.of_degree(k), gens.of_degree(l)):
        if a.label == b.label:
            continue
        tgt = predict_monomial_grading(spec, a.poly, b.poly, chain.commuting)
        best = max(best, sum(1 for g in prods if g <= tgt))
    return best


@pytest.mark.parametrize("name", ["elliott", "o3sl3", "cartan-sl3"])
def test_pruned_counts_against_brute_force(name):
    chain = get_chain(name)
    for r in count_table(name):
        assert r.pruned == brute_pruned(chain, r.k, r.l)


def test_format_table():
    text = format_table("cartan-sl3")
    lines = text.splitlines()
    assert lines[0].startswith("# cartan-sl3")
    assert lines[3].split() == ["bracket", "printed", "computed", "forms", "printed'", "monomial", "block",
                                "forms'", "match"]
    assert lines[4].split()[:3] == ["{q2,q2}", "12", "12"]
    assert len(lines) == 7


def test_row_json():
    rows = count_table("cartan-sl3")
    d = rows[0].to_json()
    json.dumps(d)
    assert d["match"] is True and d["k"] == 2 and d["l"] == 2
    assert rows[1].to_json()["match"] is False
