"""Degree-by-degree generators of the commutant S(g)^a.

At degree k the ansatz is a generic combination of degree-k monomials; the
conditions {x_m, p} = 0 for each subalgebra coordinate x_m are linear in the
coefficients and their exact nullspace is the invariant space.  New
generators are whatever survives reduction modulo products of the lower
degree generators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .lie import LieAlgebraSpec, diagonal_elements
from .linalg import RowEchelon, nullspace, rank
from .poly import Poly, monomials_of_degree
from .scalar import ZERO, Scalar


@dataclass
class Generator:
    degree: int
    poly: Poly
    label: str


@dataclass
class GeneratorSet:
    generators: list[Generator] = field(default_factory=list)
    max_degree: int = 0
    #: True when degree max_degree + 1 was also scanned and gave nothing new
    saturated: bool | None = None

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, key):
        if isinstance(key, str):
            for g in self.generators:
                if g.label == key:
                    return g
            raise KeyError(key)
        return self.generators[key]

    def labels(self) -> list[str]:
        return [g.label for g in self.generators]

    def of_degree(self, k: int) -> list[Generator]:
        return [g for g in self.generators if g.degree == k]

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.of_degree(k)) for k in range(1, self.max_degree + 1))

    def to_json(self) -> list:
        return [{"degree": g.degree, "label": g.label, "poly": g.poly.to_json()} for g in self.generators]

    @classmethod
    def from_polys(cls, polys, labels=None) -> GeneratorSet:
        polys = list(polys)
        labels = labels or [f"g{i + 1}" for i in range(len(polys))]
        gens = []
        for p, lab in zip(polys, labels):
            if not p or not p.is_homogeneous():
                raise ValueError(f"generator {lab} must be a nonzero homogeneous polynomial")
            gens.append(Generator(p.degree(), p, lab))
        return cls(gens, max((g.degree for g in gens), default=0))


def _sub_indices(spec: LieAlgebraSpec, sub) -> tuple[int, ...]:
    return spec.subalgebra(sub)


def _zero_weight_filter(spec: LieAlgebraSpec, sub_idx):
    """Predicate on monomials: zero weight under every diagonal subalgebra element."""
    diag = diagonal_elements(spec, sub_idx)
    if not diag:
        return None
    weights = []
    for m in diag:
        w = []
        for j in range(spec.dim):
            row = spec.bracket(m, j)
            w.append(row.get(j, ZERO))
        weights.append(w)

    def ok(mono):
        for w in weights:
            tot = ZERO
            for e, x in zip(mono, w):
                if e and x:
                    tot = tot + x * e
            if tot:
                return False
        return True

    return ok


def ansatz_monomials(spec: LieAlgebraSpec, sub, k: int) -> list:
    sub_idx = _sub_indices(spec, sub)
    monos = monomials_of_degree(spec.dim, k)
    ok = _zero_weight_filter(spec, sub_idx)
    if ok is not None:
        monos = [m for m in monos if ok(m)]
    return monos


def invariant_space(spec: LieAlgebraSpec, sub, k: int) -> list[Poly]:
    """Basis of the degree-k invariants, in reduced echelon form (graded-lex)."""
    if k < 1:
        raise ValueError("degree must be at least 1")
    sub_idx = _sub_indices(spec, sub)
    monos = ansatz_monomials(spec, sub, k)
    if not monos:
        return []
    eqs: dict = {}
    for col, mono in enumerate(monos):
        for m in sub_idx:
            img = _act(spec, m, mono)
            for out, c in img.items():
                eqs.setdefault((m, out), {})[col] = c
    kern = nullspace((eqs[key] for key in sorted(eqs)), len(monos))
    return [Poly._wrap(spec.dim, {monos[c]: v for c, v in vec.items()}) for vec in kern]


def _act(spec: LieAlgebraSpec, m: int, mono) -> dict:
    out: dict = {}
    for j, e in enumerate(mono):
        if not e:
            continue
        row = spec.structure.get((m, j))
        if not row:
            continue
        for k, c in row.items():
            nm = list(mono)
            nm[j] -= 1
            nm[k] += 1
            nm = tuple(nm)
            v = c * e
            old = out.get(nm)
            out[nm] = v if old is None else old + v
    return {key: v for key, v in out.items() if v}


def product_multisets(degrees: list[int], target: int):
    """Index multisets (sorted tuples) whose degrees sum to target."""
    out = []

    def rec(start: int, left: int, cur: list[int]):
        if left == 0:
            if cur:
                out.append(tuple(cur))
            return
        for i in range(start, len(degrees)):
            d = degrees[i]
            if 0 < d <= left:
                cur.append(i)
                rec(i, left - d, cur)
                cur.pop()

    rec(0, target, [])
    return out


class _ProductCache:
    def __init__(self, polys: list[Poly]):
        self.polys = polys
        self.memo: dict = {(): None}

    def get(self, idx: tuple) -> Poly:
        if idx in self.memo and idx:
            return self.memo[idx]
        if len(idx) == 1:
            p = self.polys[idx[0]]
        else:
            p = self.get(idx[:-1]) * self.polys[idx[-1]]
        self.memo[idx] = p
        return p


def decomposables(lower: list[Poly], k: int) -> list[Poly]:
    degs = [p.degree() for p in lower]
    cache = _ProductCache(lower)
    return [cache.get(ix) for ix in product_multisets(degs, k) if len(ix) > 1]


def new_generators(spec: LieAlgebraSpec, sub, k: int, lower, invariants: list[Poly] | None = None) -> list[Poly]:
    """Invariants of degree k that are not spanned by products of ``lower``."""
    lower_polys = [g.poly if isinstance(g, Generator) else g for g in lower]
    lower_polys = [p for p in lower_polys if p.degree() < k]
    inv = invariant_space(spec, sub, k) if invariants is None else invariants
    if not inv:
        return []
    prods = decomposables(lower_polys, k)
    monos: dict = {}
    for p in inv + prods:
        for m in p._t:
            monos.setdefault(m, None)
    order = sorted(monos, key=lambda m: (sum(m), m), reverse=True)
    col = {m: i for i, m in enumerate(order)}
    span = RowEchelon()
    for p in prods:
        span.add({col[m]: c for m, c in p._t.items()})
    rest = RowEchelon()
    for p in inv:
        r = span.reduce({col[m]: c for m, c in p._t.items()})
        if r:
            rest.add(r)
    return [Poly._wrap(spec.dim, {order[c]: v for c, v in row.items()}) for row in rest.sorted_rows()]


def build_generating_set(spec: LieAlgebraSpec, sub, max_degree: int, check_next: bool = False,
                         label_prefix: str = "q") -> GeneratorSet:
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    gens: list[Generator] = []
    for k in range(1, max_degree + 1):
        new = new_generators(spec, sub, k, gens)
        for u, p in enumerate(new, 1):
            gens.append(Generator(k, p, f"{label_prefix}{k}_{u}"))
    saturated = None
    if check_next:
        saturated = not new_generators(spec, sub, max_degree + 1, gens)
    return GeneratorSet(gens, max_degree, saturated)


def in_span(polys: list[Poly], target: Poly) -> bool:
    """Exact membership test of target in span(polys)."""
    monos: dict = {}
    for p in polys + [target]:
        for m in p._t:
            monos.setdefault(m, len(monos))
    ech = RowEchelon()
    for p in polys:
        ech.add({monos[m]: c for m, c in p._t.items()})
    return ech.contains({monos[m]: c for m, c in target._t.items()})


def is_invariant(spec: LieAlgebraSpec, sub, p: Poly) -> bool:
    from .poisson import coadjoint_action

    return all(not coadjoint_action(spec, m, p) for m in _sub_indices(spec, sub))


def _random_rational(rng: random.Random) -> Fraction:
    num = rng.randint(-97, 97)
    den = rng.randint(1, 23)
    return Fraction(num, den)


def independent_solution_count(spec: LieAlgebraSpec, samples: int = 3, seed: int = 0) -> int:
    """dim g minus the generic rank of A_ij = sum_k C_ij^k x_k."""
    rng = random.Random(seed)
    best = 0
    for _ in range(max(3, samples)):
        pt = [Scalar.coerce(_random_rational(rng)) for _ in range(spec.dim)]
        rows = []
        for i in range(spec.dim):
            row = {}
            for j in range(spec.dim):
                v = ZERO
                for k, c in spec.bracket(i, j).items():
                    v = v + c * pt[k]
                if v:
                    row[j] = v
            rows.append(row)
        best = max(best, rank(rows))
    return spec.dim - best


def expected_label_count(spec: LieAlgebraSpec, sub, l0: int) -> int:
    return spec.dim - len(_sub_indices(spec, sub)) + l0
