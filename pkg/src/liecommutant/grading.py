"""Block gradings of polynomials and grading-based pruning of bracket expansions.

A monomial's grade counts its factors per block of the decomposition
g = g_1 + ... + g_m.  A polynomial carries the set of its monomials' grades,
and products combine sets by Minkowski sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .commutant import GeneratorSet, product_multisets
from .lie import BlockTable, LieAlgebraSpec
from .poly import Poly

GradingSet = frozenset


def monomial_grade(block_of: Sequence[int], nblocks: int, mono) -> tuple[int, ...]:
    out = [0] * nblocks
    for i, e in enumerate(mono):
        if e:
            out[block_of[i]] += e
    return tuple(out)


def grade(spec: LieAlgebraSpec, p: Poly) -> GradingSet:
    if not spec.blocks:
        raise ValueError(f"{spec.name}: no block decomposition declared")
    if not p:
        raise ValueError("the zero polynomial has no grading")
    bo = spec.block_of()
    m = len(spec.blocks)
    return frozenset(monomial_grade(bo, m, mono) for mono in p._t)


def minkowski(a: Iterable[tuple], b: Iterable[tuple]) -> GradingSet:
    b = list(b)
    return frozenset(tuple(x + y for x, y in zip(u, v)) for u in a for v in b)


def _table(spec_or_table) -> BlockTable:
    if isinstance(spec_or_table, BlockTable):
        return spec_or_table
    return BlockTable.from_spec(spec_or_table)


def _predict_one_side(table: BlockTable, gp, gq, skip_left=(), skip_right=()) -> set:
    out = set()
    m = table.nblocks
    for u in gp:
        for v in gq:
            w = [x + y for x, y in zip(u, v)]
            for r in range(m):
                if not u[r] or r in skip_left:
                    continue
                for s in range(m):
                    if not v[s] or s in skip_right:
                        continue
                    for t in table(r, s):
                        cand = list(w)
                        cand[r] -= 1
                        cand[s] -= 1
                        cand[t] += 1
                        if min(cand) >= 0:
                            out.add(tuple(cand))
    return out


def predict_bracket_grading(spec_or_table, gp: Iterable[tuple], gq: Iterable[tuple],
                            commuting: Iterable[int] = ()) -> GradingSet:
    """Grades that can occur in {p, q} given grade sets of p and q.

    Every (r, s) block pair with a factor of p in g_r and of q in g_s
    contributes u + v - e_r - e_s + e_t for each target t of [g_r, g_s].
    ``commuting`` lists blocks lying inside the centralized subalgebra: when
    both p and q are invariants, a factor from such a block contributes
    nothing on either side, so the prediction is the intersection of the
    two one-sided exclusions.
    """
    table = _table(spec_or_table)
    gp, gq = list(gp), list(gq)
    commuting = set(commuting)
    if not commuting:
        return frozenset(_predict_one_side(table, gp, gq))
    left = _predict_one_side(table, gp, gq, skip_left=commuting)
    right = _predict_one_side(table, gp, gq, skip_right=commuting)
    return frozenset(left & right)


def predict_monomial_grading(spec: LieAlgebraSpec, p: Poly, q: Poly,
                             commuting: Iterable[int] = ()) -> GradingSet:
    """Finer prediction from the actual monomials of p and q.

    Collects the grade of every term x^(a+b-e_i-e_j+e_k) produced by the
    coordinate expansion before any cancellation.  Blocks in ``commuting``
    are skipped on either side, as in :func:`predict_bracket_grading`.
    """
    bo = spec.block_of()
    m = len(spec.blocks)
    commuting = set(commuting)

    def side(skip_left, skip_right):
        out = set()
        for a in p._t:
            ga = monomial_grade(bo, m, a)
            for b in q._t:
                gb = monomial_grade(bo, m, b)
                w = [x + y for x, y in zip(ga, gb)]
                for i, ei in enumerate(a):
                    if not ei or bo[i] in skip_left:
                        continue
                    for j, ej in enumerate(b):
                        if not ej or bo[j] in skip_right:
                            continue
                        for k in spec.bracket(i, j):
                            c = list(w)
                            c[bo[i]] -= 1
                            c[bo[j]] -= 1
                            c[bo[k]] += 1
                            out.add(tuple(c))
        return out

    if not commuting:
        return frozenset(side((), ()))
    return frozenset(side(commuting, ()) & side((), commuting))


# ---------------------------------------------------------------- candidates


def generator_grades(spec: LieAlgebraSpec, gens: GeneratorSet) -> list[GradingSet]:
    return [grade(spec, g.poly) for g in gens]


def product_grade(grades: Sequence[GradingSet], idx: Sequence[int]) -> GradingSet:
    m = len(next(iter(grades[idx[0]])))
    acc = frozenset({(0,) * m})
    for i in idx:
        acc = minkowski(acc, grades[i])
    return acc


def admissible_products(spec: LieAlgebraSpec, gens: GeneratorSet, target_degree: int,
                        target: Iterable[tuple], grades: Sequence[GradingSet] | None = None) -> list[tuple[str, ...]]:
    """Generator multisets of the given total degree whose grade set lies in target."""
    if target_degree < 1:
        return []
    target = frozenset(target)
    grades = grades or generator_grades(spec, gens)
    degs = [g.degree for g in gens]
    out = []
    for idx in product_multisets(degs, target_degree):
        if product_grade(grades, idx) <= target:
            out.append(tuple(gens[i].label for i in idx))
    return out


def multichoose(n: int, k: int) -> int:
    return comb(n + k - 1, k) if n > 0 else (1 if k == 0 else 0)


def count_pattern(per_degree: dict[int, int], pattern: Sequence[int]) -> int:
    """Number of generator multisets realising a degree pattern like (2, 2, 3)."""
    total = 1
    for d in set(pattern):
        total *= multichoose(per_degree.get(d, 0), list(pattern).count(d))
    return total


def count_unpruned(gens: GeneratorSet, k: int, l: int) -> int:
    """All generator multisets of total degree k + l - 1."""
    degs = [g.degree for g in gens]
    return len(product_multisets(degs, k + l - 1))


def unpruned_patterns(gens: GeneratorSet, k: int, l: int) -> list[tuple[int, ...]]:
    """Degree patterns (sorted) that occur among the unpruned multisets."""
    degs = [g.degree for g in gens]
    pats = {tuple(sorted((degs[i] for i in ix), reverse=True)) for ix in product_multisets(degs, k + l - 1)}
    return sorted(pats, key=lambda p: (len(p), [-x for x in p]))


@dataclass
class PrunedCount:
    count: int
    pair: tuple[str, str] | None
    per_pair: dict


def count_pruned(spec: LieAlgebraSpec, gens: GeneratorSet, k: int, l: int,
                 commuting: Iterable[int] = (), table: BlockTable | None = None,
                 mode: str = "block") -> PrunedCount:
    """Maximum over distinct pairs (p, q) in q_k x q_l of the admissible product count."""
    if mode not in ("block", "monomial"):
        raise ValueError(f"unknown prediction mode {mode!r}")
    commuting = tuple(commuting)
    grades = generator_grades(spec, gens)
    tab = table or BlockTable.from_spec(spec)
    gk = [i for i, g in enumerate(gens) if g.degree == k]
    gl = [i for i, g in enumerate(gens) if g.degree == l]
    best, arg = 0, None
    per: dict = {}
    for a in gk:
        for b in gl:
            if a == b or (k == l and b < a):
                continue
            if mode == "block":
                tgt = predict_bracket_grading(tab, grades[a], grades[b], commuting)
            else:
                tgt = predict_monomial_grading(spec, gens[a].poly, gens[b].poly, commuting)
            n = len(admissible_products(spec, gens, k + l - 1, tgt, grades))
            per[(gens[a].label, gens[b].label)] = n
            if arg is None or n > best:
                best, arg = n, (gens[a].label, gens[b].label)
    return PrunedCount(best, arg, per)
