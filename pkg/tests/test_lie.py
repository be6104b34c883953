import json
import time

import pytest

from liecommutant.lie import (
    BlockTable, SpecError, builtin, load_algebra, make_sl, make_su3_elliott, spec_from_json,
    validate, weight,
)
from liecommutant.scalar import ZERO, parse_scalar

# The su(3) commutator table cell by cell: row element bracketed with column
# element.  Coefficients use 4/r3 = 4/3*r3 and 1/r2 = 1/2*r2.
COLS = ["l0", "lp1", "lm1", "j0", "jp1", "jm1", "jp2", "jm2"]
TABLE = {
    "l0": ["0", "lp1", "-lm1", "0", "jp1", "-jm1", "2 jp2", "-2 jm2"],
    "lp1": ["-lp1", "0", "-l0", "-3/4*r3 jp1", "-2*r2 jp2", "-4/3*r3 j0", "0", "-1/2*r2 jm1"],
    "lm1": ["lm1", "l0", "0", "3/4*r3 jm1", "4/3*r3 j0", "2*r2 jm2", "1/2*r2 jp1", "0"],
    "j0": ["0", "3/4*r3 jp1", "-3/4*r3 jm1", "0", "3/2*r3 lp1", "-3/2*r3 lm1", "0", "0"],
    "jp1": ["-jp1", "2*r2 jp2", "-4/3*r3 j0", "-3/2*r3 lp1", "0", "-2 l0", "0", "r2 lm1"],
    "jm1": ["jm1", "4/3*r3 j0", "-2*r2 jm2", "3/2*r3 lm1", "2 l0", "0", "-r2 lp1", "0"],
    "jp2": ["-2 jp2", "0", "-1/2*r2 jp1", "0", "0", "r2 lp1", "0", "l0"],
    "jm2": ["2 jm2", "1/2*r2 jm1", "0", "0", "-r2 lm1", "0", "-l0", "0"],
}


def _cell(text):
    if text == "0":
        return {}
    coeff, _, name = text.rpartition(" ")
    if not coeff:
        coeff, name = ("-1", name[1:]) if name.startswith("-") else ("1", name)
    return {name: parse_scalar(coeff)}


def test_su3_matches_printed_table():
    spec = make_su3_elliott()
    assert list(spec.basis) == COLS
    for a, row in TABLE.items():
        for b, text in zip(COLS, row):
            got = {spec.basis[k]: c for k, c in spec.bracket(spec.index(a), spec.index(b)).items()}
            assert got == _cell(text), (a, b)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_sl_valid(k):
    spec = make_sl(k)
    assert spec.dim == k * k - 1
    assert validate(spec).ok


def test_sl_relations():
    # [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
    spec = make_sl(4)
    i = spec.index
    assert spec.bracket(i("e12"), i("e23")) == {i("e13"): parse_scalar("1")}
    assert spec.bracket(i("e23"), i("e12")) == {i("e13"): parse_scalar("-1")}
    assert spec.bracket(i("e13"), i("e34")) == {i("e14"): parse_scalar("1")}
    assert spec.bracket(i("e12"), i("e34")) == {}


def test_sl_weights():
    spec = make_sl(3)
    cartan = spec.subalgebra("cartan")
    assert weight(spec, cartan[0], spec.index("e12")) != ZERO
    assert all(weight(spec, h, spec.index(x)) == ZERO for h in cartan for x in ("h1", "h2"))


@pytest.mark.parametrize("name", ["su3-elliott", "sl3", "sl4"])
def test_every_sign_flip_is_caught(name):
    spec = builtin(name)
    for (i, j), row in spec.structure.items():
        for k, c in row.items():
            if i > j:
                continue
            # one-sided flip breaks antisymmetry
            rep = validate(spec.with_constant(i, j, k, -c))
            assert rep.antisymmetry and not rep.ok
            # flipping both sides keeps antisymmetry; Jacobi must catch it
            both = spec.with_constant(i, j, k, -c).with_constant(j, i, k, c)
            rep = validate(both)
            assert not rep.antisymmetry
            assert rep.jacobi, (name, spec.basis[i], spec.basis[j], spec.basis[k])


def test_validation_runtime():
    t0 = time.perf_counter()
    for spec in [make_su3_elliott()] + [make_sl(k) for k in range(2, 6)]:
        assert validate(spec).ok
    assert time.perf_counter() - t0 < 1.0


def test_block_table_su3():
    t = BlockTable.from_spec(make_su3_elliott())
    assert t(0, 0) == {0}
    assert t(0, 1) == {1}
    assert t(1, 1) == {0}


def test_block_table_sl3():
    t = BlockTable.from_spec(make_sl(3))
    assert t(0, 0) == frozenset()
    assert t(1, 1) == {1}
    assert t(1, 2) == {0, 1, 2}


def test_json_round_trip():
    spec = make_su3_elliott()
    again = spec_from_json(json.dumps(spec.to_json()))
    assert again.structure == spec.structure
    assert again.subalgebras == spec.subalgebras
    assert again.blocks == spec.blocks


def test_json_errors_carry_line_numbers():
    text = '{\n "name": "t",\n "basis": ["a", "b"],\n "structure": [\n  {"i": "a", "j": "b", "k": "a", "c": "1"},\n  {"i": "a", "j": "zz", "k": "a", "c": "1"}\n ]\n}\n'
    with pytest.raises(SpecError) as err:
        spec_from_json(text)
    assert err.value.line == 6
    with pytest.raises(SpecError) as err:
        spec_from_json('{\n "name": "t",\n "basis": [\n')
    assert err.value.line is not None


def test_load_algebra(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(make_sl(2).to_json()))
    assert load_algebra(str(path)).structure == make_sl(2).structure
    assert load_algebra("sl3").dim == 8
    with pytest.raises(SpecError):
        load_algebra(str(tmp_path / "missing.json"))
    with pytest.raises(KeyError):
        builtin("so5")
