"""Closing the Poisson algebra generated by a commutant generating set.

For each generator pair the bracket is computed in base coordinates and
expanded on candidate products of generators of the right degree.  When the
candidates are linearly dependent the expansion is not unique; the solver then
returns a solution of minimal support and reports the dependencies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .commutant import Generator, GeneratorSet, product_multisets
from .grading import admissible_products, generator_grades, predict_bracket_grading
from .lie import BlockTable, LieAlgebraSpec
from .linalg import RowEchelon, solve
from .poisson import poisson_bracket
from .poly import Poly
from .scalar import ONE, ZERO, Scalar

Term = tuple  # (Scalar, tuple of labels)


@dataclass
class BracketRelation:
    lhs: tuple[str, str]
    terms: list = field(default_factory=list)
    residual: Poly | None = None
    syzygies: list = field(default_factory=list)
    candidates: int = 0

    @property
    def closed(self) -> bool:
        return self.residual is None or self.residual.is_zero()

    def format(self) -> str:
        u, v = self.lhs
        if not self.terms:
            rhs = "0"
        else:
            parts = []
            for c, labs in self.terms:
                mono = "*".join(_power_labels(labs))
                cs = str(c)
                if c == ONE:
                    body = mono
                elif c == -ONE:
                    body = "-" + mono
                elif len(cs.split()) == 1:
                    body = f"{cs}*{mono}"
                else:
                    body = f"({cs})*{mono}"
                if parts:
                    body = ("- " + body[1:]) if body.startswith("-") else ("+ " + body)
                parts.append(body)
            rhs = " ".join(parts)
        line = f"{{{u},{v}}} = {rhs}"
        if not self.closed:
            line += "  [residual_nonzero]"
        return line

    def to_json(self) -> dict:
        return {
            "lhs": list(self.lhs),
            "terms": [{"coeff": str(c), "factors": list(labs)} for c, labs in self.terms],
            "closed": self.closed,
            "residual": self.residual.to_json() if self.residual is not None else [],
            "syzygies": [[{"coeff": str(c), "factors": list(l)} for c, l in s] for s in self.syzygies],
            "candidates": self.candidates,
        }


def _power_labels(labs: Sequence[str]) -> list[str]:
    out = []
    for lab in dict.fromkeys(labs):
        k = list(labs).count(lab)
        out.append(lab if k == 1 else f"{lab}^{k}")
    return out


class _Products:
    def __init__(self, gens: GeneratorSet):
        self.gens = gens
        self.index = {g.label: i for i, g in enumerate(gens)}
        self.memo: dict = {}

    def poly(self, labs: Sequence[str]) -> Poly:
        key = tuple(sorted(labs, key=self.index.__getitem__))
        if key in self.memo:
            return self.memo[key]
        if len(key) == 1:
            p = self.gens[key[0]].poly
        else:
            p = self.poly(key[:-1]) * self.gens[key[-1]].poly
        self.memo[key] = p
        return p


def _candidate_rank(gens: GeneratorSet, labs: Sequence[str]):
    """Smaller is preferred: low-degree factors first, then label order."""
    idx = {g.label: i for i, g in enumerate(gens)}
    degs = sorted((gens[l].degree for l in labs), reverse=True)
    return (degs, [idx[l] for l in labs])


def reconstruct(gens: GeneratorSet, terms: Iterable[Term], nvars: int) -> Poly:
    prods = _Products(gens)
    out = Poly.zero(nvars)
    for c, labs in terms:
        out = out + prods.poly(labs).scale(c)
    return out


def _minimal_support(x: dict, kernel: list[dict], order: list, cap: int) -> dict:
    """Among x + span(kernel) pick a solution with fewest nonzeros.

    Every minimal-support solution zeroes r = dim(kernel) coordinates of the
    kernel support, so those choices are enumerated when there are at most
    ``cap`` of them.  Otherwise the basic solution is kept: its pivots are
    the earliest candidates in preference order, which is already minimal
    when candidates are distinct monomials (the Cartan chains).
    """
    r = len(kernel)
    if r == 0:
        return x
    universe = sorted({c for v in kernel for c in v}, key=order.__getitem__)
    if comb(len(universe), r) > cap:
        return x
    best = x
    best_key = (len(x), sorted(order[c] for c in x))
    for zeros in combinations(universe, r):
        # solve sum_a t_a kernel[a][z] = -x[z] for z in zeros
        cols = [{z: v.get(z, ZERO) for z in zeros} for v in kernel]
        rhs = {z: -x.get(z, ZERO) for z in zeros}
        t, ker = solve(cols, rhs)
        if t is None or ker:
            continue
        sol = dict(x)
        for a, ta in t.items():
            for c, v in kernel[a].items():
                nv = sol.get(c, ZERO) + ta * v
                if nv:
                    sol[c] = nv
                else:
                    sol.pop(c, None)
        key = (len(sol), sorted(order[c] for c in sol))
        if key < best_key:
            best, best_key = sol, key
    return best


def close_pair(spec: LieAlgebraSpec, gens: GeneratorSet, u: str, v: str, use_grading: bool = True,
               commuting: Iterable[int] = (), table: BlockTable | None = None,
               grades=None, cap: int = 20000) -> BracketRelation:
    p, q = gens[u], gens[v]
    br = poisson_bracket(spec, p.poly, q.poly)
    rel = BracketRelation((u, v))
    if br.is_zero():
        rel.residual = br
        return rel
    d = p.degree + q.degree - 1
    if use_grading and spec.blocks:
        grades = grades or generator_grades(spec, gens)
        tgt = predict_bracket_grading(table or BlockTable.from_spec(spec),
                                      grades[gens.labels().index(u)], grades[gens.labels().index(v)],
                                      commuting)
        cands = admissible_products(spec, gens, d, tgt, grades)
    else:
        degs = [g.degree for g in gens]
        cands = [tuple(gens[i].label for i in ix) for ix in product_multisets(degs, d)]
    cands.sort(key=lambda labs: _candidate_rank(gens, labs))
    rel.candidates = len(cands)
    prods = _Products(gens)
    columns = [dict(prods.poly(c)._t) for c in cands]
    # split the bracket into the part spanned by candidates and a residual
    monos: dict = {}
    for col in columns:
        for m in col:
            monos.setdefault(m, None)
    for m in br._t:
        monos.setdefault(m, None)
    order_m = sorted(monos, key=lambda m: (sum(m), m), reverse=True)
    mcol = {m: i for i, m in enumerate(order_m)}
    ech = RowEchelon()
    for col in columns:
        ech.add({mcol[m]: c for m, c in col.items()})
    rem = ech.reduce({mcol[m]: c for m, c in br._t.items()})
    residual = Poly._wrap(spec.dim, {order_m[c]: val for c, val in rem.items()})
    target = br - residual
    x, kernel = solve(columns, dict(target._t))
    if x is None:  # cannot happen: target lies in the span by construction
        raise RuntimeError("inconsistent projection onto candidate span")
    order = list(range(len(cands)))
    x = _minimal_support(x, kernel, order, cap)
    rel.terms = [(x[i], cands[i]) for i in sorted(x)]
    rel.residual = residual
    rel.syzygies = [[(c, cands[i]) for i, c in sorted(vec.items())] for vec in kernel]
    return rel


@dataclass
class ClosureResult:
    relations: list
    center: list
    degree: int

    @property
    def closed(self) -> bool:
        return all(r.closed for r in self.relations)

    def relation(self, u: str, v: str) -> BracketRelation:
        for r in self.relations:
            if r.lhs == (u, v):
                return r
            if r.lhs == (v, u):
                return BracketRelation((u, v), [(-c, l) for c, l in r.terms],
                                       r.residual if r.residual is None else -r.residual,
                                       r.syzygies, r.candidates)
        raise KeyError((u, v))


def _close_task(args):
    spec, gens, u, v, use_grading, commuting, table = args
    return close_pair(spec, gens, u, v, use_grading, commuting, table)


def close_all(spec: LieAlgebraSpec, gens: GeneratorSet, use_grading: bool = True,
              commuting: Iterable[int] = (), table: BlockTable | None = None,
              threads: int = 1) -> ClosureResult:
    labels = gens.labels()
    commuting = tuple(commuting)
    pairs = [(labels[a], labels[b]) for a in range(len(labels)) for b in range(a + 1, len(labels))]
    tasks = [(spec, gens, u, v, use_grading, commuting, table) for u, v in pairs]
    if threads > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            rels = list(pool.map(_close_task, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    else:
        rels = [_close_task(t) for t in tasks]
    nonzero: set = set()
    for r in rels:
        if r.terms or not r.closed:
            nonzero.update(r.lhs)
    center = [l for l in labels if l not in nonzero]
    deg = 0
    cset = set(center)
    for r in rels:
        for _, labs in r.terms:
            deg = max(deg, sum(1 for l in labs if l not in cset))
    return ClosureResult(rels, center, deg)


def algebra_degree_name(d: int) -> str:
    return {0: "abelian", 1: "linear", 2: "quadratic", 3: "cubic", 4: "quartic"}.get(d, f"degree-{d}")


# ---------------------------------------------------------------- basis changes


def rebase_generators(gens: GeneratorSet, transform: Mapping[str, Mapping[str, object]]) -> GeneratorSet:
    """New generators as linear combinations of old ones, degree by degree.

    ``transform`` maps each new label to {old label: coefficient}.  Every new
    generator must be homogeneous and the change must be invertible within
    each degree, so the new set spans exactly what the old one does.
    """
    new: list[Generator] = []
    by_degree: dict[int, list[str]] = {}
    nvars = gens[0].poly.nvars if len(gens) else 0
    for lab, combo in transform.items():
        degs = {gens[o].degree for o in combo}
        if len(degs) != 1:
            raise ValueError(f"{lab}: mixes generators of different degrees")
        poly = Poly.zero(nvars)
        for o, c in combo.items():
            poly = poly + gens[o].poly.scale(Scalar.coerce(c))
        d = degs.pop()
        new.append(Generator(d, poly, lab))
        by_degree.setdefault(d, []).append(lab)
    for d in sorted({g.degree for g in gens}):
        old = [g.label for g in gens if g.degree == d]
        newl = by_degree.get(d, [])
        rows = []
        for lab in newl:
            rows.append({old.index(o): Scalar.coerce(c) for o, c in transform[lab].items()
                         if Scalar.coerce(c)})
        ech = RowEchelon()
        for r in rows:
            ech.add(r)
        if len(newl) != len(old) or ech.rank != len(old):
            raise ValueError(f"singular transform in degree {d}")
    new.sort(key=lambda g: g.degree)
    return GeneratorSet(new, gens.max_degree)
