from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from liecommutant.linalg import RowEchelon, nullspace, rank, rref, solve
from liecommutant.scalar import R2, Scalar

entries = st.integers(-3, 3)


def to_rows(mat):
    return [{j: Scalar(v) for j, v in enumerate(row) if v} for row in mat]


def to_sympy(rows, ncols):
    return sympy.Matrix([[sympy.Rational(r.get(j, Scalar(0)).a) for j in range(ncols)] for r in rows])


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=5))


@given(matrices)
def test_rank_matches_sympy(mat):
    assert rank(to_rows(mat)) == sympy.Matrix(mat).rank()


@given(matrices)
def test_rref_matches_sympy(mat):
    n = len(mat[0])
    ours = rref(to_rows(mat))
    theirs, _ = sympy.Matrix(mat).rref()
    nz = [list(theirs.row(i)) for i in range(theirs.rows) if any(theirs.row(i))]
    assert [[sympy.Rational(r.get(j, Scalar(0)).a) for j in range(n)] for r in ours] == nz


@given(matrices)
def test_nullspace_dimension_and_annihilation(mat):
    n = len(mat[0])
    rows = to_rows(mat)
    ker = nullspace(rows, n)
    assert len(ker) == n - sympy.Matrix(mat).rank()
    for v in ker:
        for r in rows:
            assert sum((r.get(j, Scalar(0)) * c for j, c in v.items()), Scalar(0)) == Scalar(0)


@given(matrices, st.lists(entries, min_size=5, max_size=5))
def test_solve_consistent_system(mat, xs):
    cols = [{i: Scalar(mat[i][j]) for i in range(len(mat)) if mat[i][j]} for j in range(len(mat[0]))]
    xs = xs[: len(cols)]
    target = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            target[i] = target.get(i, Scalar(0)) + v * xs[j]
    x, ker = solve(cols, target)
    assert x is not None
    back = {}
    for j, c in x.items():
        for i, v in cols[j].items():
            back[i] = back.get(i, Scalar(0)) + v * c
    assert {k: v for k, v in back.items() if v} == {k: v for k, v in target.items() if v}


def test_solve_inconsistent():
    x, ker = solve([{0: Scalar(1)}, {0: Scalar(2)}], {1: Scalar(1)})
    assert x is None
    assert len(ker) == 1


def test_basic_solution_prefers_early_columns():
    # columns 0 and 1 are equal: the basic solution uses column 0 only
    cols = [{"a": Scalar(1)}, {"a": Scalar(1)}, {"b": Scalar(1)}]
    x, ker = solve(cols, {"a": Scalar(3), "b": Scalar(1)})
    assert x == {0: Scalar(3), 2: Scalar(1)}
    assert ker == [{0: Scalar(1), 1: Scalar(-1)}]


def test_surd_entries():
    ech = RowEchelon()
    ech.add({0: R2, 1: Scalar(1)})
    ech.add({0: Scalar(2), 1: R2})  # r2 times the first row
    assert ech.rank == 1
    assert ech.contains({0: Scalar(Fraction(1, 2)) * R2 * R2, 1: R2 / 2})
