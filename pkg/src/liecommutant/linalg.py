"""Exact sparse row reduction over Q(sqrt2, sqrt3).

Rows are dicts ``{column: Scalar}``.  Columns are integers and smaller
integers are preferred as pivots, so callers map their largest monomial to
column 0 to get "first nonzero under graded-lex" pivoting.  Arithmetic is
exact field arithmetic on normalized scalars; no floating point anywhere.
"""

from __future__ import annotations

from typing import Iterable

from .scalar import ONE, Scalar


class RowEchelon:
    """Incrementally maintained reduced row echelon form.

    Every stored row has leading coefficient 1 at its pivot column and no
    entries in any other pivot column.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Scalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, row: dict) -> dict:
        """Remainder of ``row`` after elimination by the stored pivots."""
        row = {c: v for c, v in row.items() if v}
        hits = [c for c in row if c in self.rows]
        for c in hits:
            f = row.get(c)
            if not f:
                continue
            for k, v in self.rows[c].items():
                nv = row.get(k)
                nv = -f * v if nv is None else nv - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> int | None:
        """Insert a row; returns its new pivot column or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        piv = min(r)
        inv = r[piv].inverse()
        if inv != ONE:
            r = {k: v * inv for k, v in r.items()}
        for other in self.rows.values():
            f = other.get(piv)
            if f:
                for k, v in r.items():
                    nv = other.get(k)
                    nv = -f * v if nv is None else nv - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        self.rows[piv] = r
        return piv

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def sorted_rows(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def rref(rows: Iterable[dict]) -> list[dict]:
    ech = RowEchelon()
    for r in rows:
        ech.add(r)
    return ech.sorted_rows()


def rank(rows: Iterable[dict]) -> int:
    ech = RowEchelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of {v : A v = 0} for columns 0..ncols-1, one vector per free column.

    Returned vectors are themselves brought to reduced echelon form so the
    basis is canonical for the given column order.
    """
    ech = RowEchelon()
    for r in rows:
        ech.add(r)
        if ech.rank == ncols:
            return []
    free = [c for c in range(ncols) if c not in ech.rows]
    # column -> pivot rows containing it
    users: dict[int, list[int]] = {}
    for p, r in ech.rows.items():
        for c in r:
            if c != p:
                users.setdefault(c, []).append(p)
    kernel = []
    for f in free:
        v = {f: ONE}
        for p in users.get(f, ()):
            v[p] = -ech.rows[p][f]
        kernel.append(v)
    return rref(kernel)


def solve(columns: list[dict], target: dict) -> tuple[dict | None, list[dict]]:
    """Solve ``sum_j x_j * columns[j] = target``.

    Returns ``(x, kernel)`` where x is the basic solution (free variables set
    to zero) or None when the system is inconsistent, and kernel is a basis of
    the dependencies among the columns.  Vectors are dicts over row keys,
    which may be any hashable; they are numbered internally.
    """
    keys: dict = {}
    for col in columns:
        for k in col:
            keys.setdefault(k, len(keys))
    for k in target:
        keys.setdefault(k, len(keys))
    n = len(columns)
    # transpose into equations: one row per key, unknowns 0..n-1, rhs at column n
    eqs: dict[int, dict[int, Scalar]] = {}
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                eqs.setdefault(keys[k], {})[j] = v
    for k, v in target.items():
        if v:
            eqs.setdefault(keys[k], {})[n] = v
    ech = RowEchelon()
    for kk in sorted(eqs):
        ech.add(eqs[kk])
    if n in ech.rows:
        x = None
    else:
        x = {}
        for p, r in ech.rows.items():
            c = r.get(n)
            if c:
                x[p] = c
    hom = [{k: v for k, v in r.items() if k != n} for r in ech.rows.values()]
    kernel = nullspace(hom, n)
    return x, kernel
