"""Poisson-Lie bracket on the symmetric algebra S(g).

    {p, q} = sum_{i,j,k} C_ij^k x_k (dp/dx_i) (dq/dx_j)

The expansion runs over monomial pairs and coordinate pairs using the sparse
structure table directly, so no intermediate derivative polynomials are built.
"""

from __future__ import annotations

from .lie import LieAlgebraSpec
from .poly import Poly


def _check(spec: LieAlgebraSpec, *polys: Poly):
    for p in polys:
        if p.nvars != spec.dim:
            raise ValueError(
                f"dimension mismatch: polynomial in {p.nvars} variables, {spec.name} has {spec.dim}"
            )


def poisson_bracket(spec: LieAlgebraSpec, p: Poly, q: Poly) -> Poly:
    _check(spec, p, q)
    st = spec.structure
    acc: dict = {}
    qterms = [(b, cb, [j for j, e in enumerate(b) if e]) for b, cb in q._t.items()]
    for a, ca in p._t.items():
        sa = [i for i, e in enumerate(a) if e]
        for b, cb, sb in qterms:
            base = [x + y for x, y in zip(a, b)]
            cab = ca * cb
            for i in sa:
                ai = a[i]
                for j in sb:
                    row = st.get((i, j))
                    if not row:
                        continue
                    f = cab * (ai * b[j])
                    base[i] -= 1
                    base[j] -= 1
                    for k, c in row.items():
                        base[k] += 1
                        m = tuple(base)
                        base[k] -= 1
                        v = f * c
                        old = acc.get(m)
                        acc[m] = v if old is None else old + v
                    base[i] += 1
                    base[j] += 1
    return Poly._wrap(spec.dim, {m: c for m, c in acc.items() if c})


def coadjoint_action(spec: LieAlgebraSpec, m: int, p: Poly) -> Poly:
    """{x_m, p}: the vector field sum_j (sum_k C_mj^k x_k) d/dx_j applied to p."""
    _check(spec, p)
    acc: dict = {}
    rows = [(j, spec.structure.get((m, j))) for j in range(spec.dim)]
    rows = [(j, r) for j, r in rows if r]
    for a, ca in p._t.items():
        for j, row in rows:
            e = a[j]
            if not e:
                continue
            f = ca * e
            for k, c in row.items():
                mono = list(a)
                mono[j] -= 1
                mono[k] += 1
                mono = tuple(mono)
                v = f * c
                old = acc.get(mono)
                acc[mono] = v if old is None else old + v
    return Poly._wrap(spec.dim, {mm: c for mm, c in acc.items() if c})


def bracket_by_derivatives(spec: LieAlgebraSpec, p: Poly, q: Poly) -> Poly:
    """Same bracket, assembled from partial derivatives (an independent route)."""
    _check(spec, p, q)
    x = spec.vars()
    out = Poly.zero(spec.dim)
    dq = {j: q.partial(j) for j in range(spec.dim)}
    for i in range(spec.dim):
        dpi = p.partial(i)
        if not dpi:
            continue
        for j in range(spec.dim):
            row = spec.structure.get((i, j))
            if not row or not dq[j]:
                continue
            lin = Poly.zero(spec.dim)
            for k, c in row.items():
                lin = lin + x[k].scale(c)
            out = out + dpi * dq[j] * lin
    return out
