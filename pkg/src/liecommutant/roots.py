"""Type A_n roots, Cartan-commutant cycle generators and their brackets.

The root e_i - e_j is identified with the coordinate e_ij of sl(n+1).  A
cycle (i1, ..., ir) stands for p = e_{i1 i2} e_{i2 i3} ... e_{ir i1}, a
weight-zero monomial and hence an invariant of the Cartan subalgebra.  The
bracket of two cycles is assembled root by root: each pair (a, b) of a root
of p and a root of q contributes [e_a, e_b] times the leftover factors, and
the leftover monomial is split back into cycles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Sequence, Union

from .lie import LieAlgebraSpec, make_sl, sl_root_pairs
from .poly import Poly
from .scalar import ZERO, Scalar


@dataclass(frozen=True, order=True)
class Root:
    """e_i - e_j with 1-based i != j."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("a root needs two distinct indices")

    def __neg__(self) -> Root:
        return Root(self.j, self.i)

    @property
    def length(self) -> int:
        return abs(self.i - self.j)

    @property
    def positive(self) -> bool:
        return self.i < self.j

    def plus(self, other: Root) -> Root | None:
        """The sum when it is again a root, else None."""
        if self.j == other.i and self.i != other.j:
            return Root(self.i, other.j)
        if self.i == other.j and self.j != other.i:
            return Root(other.i, self.j)
        return None

    def __str__(self):
        return f"e{self.i}-e{self.j}"


def connected(a: Root, b: Root) -> bool:
    return a.plus(b) is not None


def all_roots(n: int) -> list[Root]:
    N = n + 1
    return [Root(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i != j]


# ---------------------------------------------------------------- cycles


def canonical_cycle(indices: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(int(x) for x in indices)
    if len(idx) < 2 or len(set(idx)) != len(idx):
        raise ValueError(f"a cycle needs at least two distinct indices, got {idx}")
    if min(idx) < 1:
        raise ValueError(f"cycle indices are 1-based, got {idx}")
    k = idx.index(min(idx))
    return idx[k:] + idx[:k]


def cycle_roots(cycle: Sequence[int]) -> list[Root]:
    r = len(cycle)
    return [Root(cycle[a], cycle[(a + 1) % r]) for a in range(r)]


def inverse_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    return canonical_cycle(tuple(reversed(tuple(cycle))))


def cycle_label(cycle: Sequence[int]) -> str:
    sep = "_" if max(cycle) >= 10 else ""
    return "p" + sep.join(str(c) for c in cycle)


def enumerate_cycles(n: int) -> list[tuple[int, ...]]:
    """Canonical cycles of length 2..n+1 on {1..n+1}: by length, then lexicographic."""
    N = n + 1
    out = []
    for r in range(2, N + 1):
        for S in combinations(range(1, N + 1), r):
            out.extend((S[0],) + perm for perm in permutations(S[1:]))
    return out


def cartan_generator_count(n: int) -> int:
    """sum_{r=1}^{n+1} (n+1)! / ((n+1-r)! r) - 1."""
    N = n + 1
    return sum(factorial(N) // (factorial(N - r) * r) for r in range(1, N + 1)) - 1


@dataclass(frozen=True)
class CycleGenerator:
    """A generator of the Cartan commutant: h_a (``cartan`` set) or a cycle."""

    n: int
    cycle: tuple[int, ...] = ()
    cartan: int | None = None

    def __post_init__(self):
        if self.cartan is None:
            c = canonical_cycle(self.cycle)
            if max(c) > self.n + 1:
                raise ValueError(f"cycle {c} uses an index above {self.n + 1}")
            object.__setattr__(self, "cycle", c)
        elif not 1 <= self.cartan <= self.n:
            raise ValueError(f"h{self.cartan} is not a Cartan coordinate of A_{self.n}")

    @property
    def degree(self) -> int:
        return 1 if self.cartan is not None else len(self.cycle)

    @property
    def label(self) -> str:
        return f"h{self.cartan}" if self.cartan is not None else cycle_label(self.cycle)

    def roots(self) -> list[Root]:
        return [] if self.cartan is not None else cycle_roots(self.cycle)

    def poly(self) -> Poly:
        spec = sl_spec(self.n)
        if self.cartan is not None:
            return spec.vars()[self.cartan - 1]
        out = Poly.constant(spec.dim, 1)
        x = spec.vars()
        for r in self.roots():
            out = out * x[root_index(self.n, r)]
        return out

    def __str__(self):
        return self.label


GeneratorRef = Union[CycleGenerator, str, Sequence[int]]


def parse_generator(n: int, ref: GeneratorRef) -> CycleGenerator:
    """Accepts a CycleGenerator, ``h2``, ``p123``, ``p1_2_3``, ``1,2,3`` or a tuple."""
    if isinstance(ref, CycleGenerator):
        return ref
    if isinstance(ref, str):
        t = ref.strip()
        if t[:1] in "hH":
            return CycleGenerator(n, cartan=int(t[1:]))
        t = t.lstrip("pP")
        if any(ch in t for ch in ",_ "):
            parts = [x for x in t.replace("_", ",").replace(" ", ",").split(",") if x]
        else:
            parts = list(t)
        try:
            return CycleGenerator(n, tuple(int(x) for x in parts))
        except ValueError as exc:
            raise ValueError(f"cannot read generator {ref!r}: {exc}") from None
    return CycleGenerator(n, tuple(ref))


def enumerate_cartan_generators(n: int) -> list[CycleGenerator]:
    """h_1..h_n followed by every canonical cycle of length 2..n+1."""
    if n < 1:
        raise ValueError("rank must be at least 1")
    gens = [CycleGenerator(n, cartan=a) for a in range(1, n + 1)]
    gens += [CycleGenerator(n, c) for c in enumerate_cycles(n)]
    return gens


def cartan_generator_set(n: int):
    from .commutant import Generator, GeneratorSet

    gens = [Generator(g.degree, g.poly(), g.label) for g in enumerate_cartan_generators(n)]
    return GeneratorSet(gens, n + 1)


def grading_of_cycle(g: GeneratorRef, n: int | None = None) -> frozenset:
    """Singleton {(0, n_plus, n_minus)} for the (Cartan, positive, negative) blocks."""
    if not isinstance(g, CycleGenerator):
        cyc = canonical_cycle(g) if not isinstance(g, str) else None
        g = parse_generator(n if n is not None else max(cyc or (2,)), g)
    if g.cartan is not None:
        return frozenset({(1, 0, 0)})
    npos = sum(1 for r in g.roots() if r.positive)
    return frozenset({(0, npos, g.degree - npos)})


# ---------------------------------------------------------------- sl(n+1) data


@lru_cache(maxsize=None)
def sl_spec(n: int) -> LieAlgebraSpec:
    return make_sl(n + 1)


@lru_cache(maxsize=None)
def _root_index_table(n: int) -> dict:
    return {ij: n + pos for pos, ij in enumerate(sl_root_pairs(n + 1))}


def root_index(n: int, r: Root) -> int:
    return _root_index_table(n)[(r.i, r.j)]


def structure_constant(n: int, a: Root, b: Root) -> Scalar:
    """C_ab with [e_a, e_b] = C_ab e_(a+b), read off the sl(n+1) table."""
    s = a.plus(b)
    if s is None:
        return ZERO
    return sl_spec(n).bracket(root_index(n, a), root_index(n, b)).get(root_index(n, s), ZERO)


def coroot(n: int, a: Root) -> dict[int, Scalar]:
    """[e_a, e_-a] as {Cartan index (1-based): coefficient}."""
    row = sl_spec(n).bracket(root_index(n, a), root_index(n, -a))
    return {k + 1: c for k, c in row.items()}


# ---------------------------------------------------------------- expansions


def split_into_cycles(edges: Sequence[Root]) -> list[tuple[int, ...]]:
    """Split a weight-zero multiset of roots into canonical cycles.

    The walk always leaves from the smallest vertex along the smallest
    available edge and closes a cycle as soon as a vertex repeats, so the
    result is deterministic.  The split is not unique in general (p12 p23 p13
    and p123 p132 are the same monomial); this is only a labelling.
    """
    out: dict[int, list[int]] = {}
    for r in edges:
        out.setdefault(r.i, []).append(r.j)
    for v in out.values():
        v.sort(reverse=True)
    cycles = []
    while any(out.values()):
        path = [min(v for v, w in out.items() if w)]
        pos = {path[0]: 0}
        while len(path) > 1 or out[path[0]]:
            nxt = out[path[-1]].pop()
            if nxt in pos:
                k = pos[nxt]
                cycles.append(canonical_cycle(path[k:]))
                for v in path[k + 1:]:
                    del pos[v]
                del path[k + 1:]
            else:
                pos[nxt] = len(path)
                path.append(nxt)
    if any(len(c) < 2 for c in cycles):
        raise ValueError("monomial is not weight zero")
    return sorted(cycles, key=lambda c: (len(c), c))


@dataclass
class Expansion:
    """A bracket written as sum of coefficient * product of generator labels."""

    n: int
    terms: dict = field(default_factory=dict)  # tuple(labels) -> Scalar

    def add(self, coeff: Scalar, labels: Sequence[str]):
        key = tuple(sorted(labels, key=_label_key))
        v = self.terms.get(key, ZERO) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: [_label_key(l) for l in kv[0]])

    def poly(self) -> Poly:
        spec = sl_spec(self.n)
        out = Poly.zero(spec.dim)
        for labs, c in self.terms.items():
            term = Poly.constant(spec.dim, c)
            for lab in labs:
                term = term * parse_generator(self.n, lab).poly()
            out = out + term
        return out

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for labs, c in self.items():
            mono = "*".join(labs)
            cs = str(c)
            body = mono if cs == "1" else ("-" + mono if cs == "-1" else
                                            (f"{cs}*{mono}" if " " not in cs else f"({cs})*{mono}"))
            if parts:
                body = "- " + body[1:] if body.startswith("-") else "+ " + body
            parts.append(body)
        return " ".join(parts)

    def to_json(self) -> list:
        return [{"coeff": str(c), "factors": list(labs)} for labs, c in self.items()]


def _label_key(lab: str):
    if lab.startswith("h"):
        return (0, int(lab[1:]), ())
    g = parse_generator(99, lab)
    return (g.degree, 0, g.cycle)


def _drop(roots: Sequence[Root], k: int) -> list[Root]:
    return [r for t, r in enumerate(roots) if t != k]


def root_expansion(n: int, p: GeneratorRef, q: GeneratorRef) -> Expansion:
    """{p, q} from root-pair brackets, with every monomial split into cycles."""
    p, q = parse_generator(n, p), parse_generator(n, q)
    ex = Expansion(n)
    if p.cartan is not None or q.cartan is not None:
        return ex  # cycles have weight zero
    P, Q = p.roots(), q.roots()
    for a_idx, a in enumerate(P):
        for b_idx, b in enumerate(Q):
            rest = _drop(P, a_idx) + _drop(Q, b_idx)
            if a == -b:
                labs = [cycle_label(c) for c in split_into_cycles(rest)]
                for h, c in coroot(n, a).items():
                    ex.add(c, [f"h{h}"] + labs)
                continue
            s = a.plus(b)
            if s is None:
                continue
            labs = [cycle_label(c) for c in split_into_cycles(rest + [s])]
            ex.add(structure_constant(n, a, b), labs)
    return ex


def cartan_pair_bracket(n: int, p: GeneratorRef, q: GeneratorRef) -> Poly:
    """Closed forms for {p, q} when p has degree two or q is p's inverse cycle.

    Degree two, q holding -a for a root a of p:
        {e_a e_-a, q} = [e_a, e_-a] q + sum over the two neighbours b of -a in
        q of [e_-a, e_b] e_a (q with -a and b merged into -a + b).
    Degree two otherwise: only roots connected to +-a contribute, each giving
    [e_+-a, e_b] e_-+a (q with b replaced).
    Inverse cycles: {p, p^-1} = sum_l [e_b_l, e_-b_l] prod_{k != l} e_b_k e_-b_k.
    """
    p, q = parse_generator(n, p), parse_generator(n, q)
    spec = sl_spec(n)
    x = spec.vars()

    def e(r: Root) -> Poly:
        return x[root_index(n, r)]

    def h_poly(a: Root) -> Poly:
        out = Poly.zero(spec.dim)
        for k, c in coroot(n, a).items():
            out = out + x[k - 1].scale(c)
        return out

    def prod(rs) -> Poly:
        out = Poly.constant(spec.dim, 1)
        for r in rs:
            out = out * e(r)
        return out

    if p.cartan is not None or q.cartan is not None:
        raise ValueError("closed forms cover cycle generators only")
    B = q.roots()
    if p.degree == 2 and q.degree == 2 and p.cycle == q.cycle:
        return Poly.zero(spec.dim)
    if p.degree == 2:
        a = p.roots()[0]
        if -a not in B:
            a = -a
        if -a in B:
            ell = B.index(-a)
            r = len(B)
            out = h_poly(a) * q.poly()
            for nb in ((ell + 1) % r, (ell - 1) % r):
                merged = B[ell].plus(B[nb])
                rest = [B[k] for k in range(r) if k not in (ell, nb)] + [merged]
                out = out + (p.poly() * prod(rest)).scale(structure_constant(n, B[ell], B[nb]))
            return out
        out = Poly.zero(spec.dim)
        for sgn in (a, -a):
            for k, b in enumerate(B):
                s = sgn.plus(b)
                if s is not None:
                    rest = _drop(B, k) + [s, -sgn]
                    out = out + prod(rest).scale(structure_constant(n, sgn, b))
        return out
    if q.cycle == inverse_cycle(p.cycle):
        A = p.roots()
        out = Poly.zero(spec.dim)
        for l, b in enumerate(A):
            rest = [r for k, r in enumerate(A) if k != l]
            out = out + h_poly(b) * prod(rest + [-r for r in rest])
        return out
    raise ValueError(f"no closed form for {{{p.label},{q.label}}}: "
                     "needs a degree-2 first argument or mutually inverse cycles")


@dataclass
class Classification:
    label: str
    expansion: Expansion
    inverse_pairs: int
    connections: tuple  # distinct roots of q connected to each root of p

    def to_json(self) -> dict:
        return {"label": self.label, "inverse_pairs": self.inverse_pairs,
                "connections": list(self.connections), "expansion": self.expansion.to_json()}


def _connections(P: Sequence[Root], Q: Sequence[Root]) -> tuple[int, ...]:
    return tuple(sum(1 for b in set(Q) if connected(a, b)) for a in P)


def classify_bracket(n: int, p: GeneratorRef, q: GeneratorRef) -> Classification:
    """Connectivity case of {p, q} together with its expansion.

    Degree 2 and 3 first arguments get the fine case labels.  Higher-degree
    cycles and Cartan coordinates get a coarse label; the expansion is still
    exact.
    """
    p, q = parse_generator(n, p), parse_generator(n, q)
    ex = root_expansion(n, p, q)
    if p.cartan is not None or q.cartan is not None:
        return Classification("Cartan coordinate: bracket vanishes", ex, 0, ())
    P, Q = p.roots(), q.roots()
    inv = sum(1 for a in P if -a in Q)
    conn = _connections(P, Q)
    if p.cycle == q.cycle:
        label = "equal generators: bracket vanishes"
    elif p.degree == 2:
        if inv:
            label = "inverse root present: Cartan term (closed form with coroot)"
        else:
            k = max(conn)
            label = {0: "no connected root: bracket vanishes",
                     1: "one connected root, Cartan-free: indecomposable terms",
                     2: "two connected roots, Cartan-free: decomposable terms"}[k]
    elif p.degree == 3:
        if inv:
            if q.cycle == inverse_cycle(p.cycle):
                label = "(b) inverse cycle: every root inverted"
            elif inv == 1:
                label = "(a) one inverse root: Cartan term"
            else:
                label = "(b) two inverse roots: Cartan term"
        else:
            touched = [c for c in conn if c]
            if not touched:
                label = "no connected root: bracket vanishes"
            elif len(touched) == 1:
                label = "(a1) one root connected once" if touched[0] == 1 else "(a2) one root connected twice"
            elif len(touched) == 2:
                twos = touched.count(2)
                label = {0: "(b1) two roots, each connected once",
                         1: "(b2) two roots, one connected twice",
                         2: "(b3) two roots, both connected twice"}[twos]
            else:
                label = "(C) all three roots connected"
    else:
        if inv:
            label = ("inverse cycle: every root inverted" if q.cycle == inverse_cycle(p.cycle)
                     else f"degree {p.degree}: {inv} inverse root(s), Cartan term")
        elif max(conn) == 0:
            label = "no connected root: bracket vanishes"
        else:
            label = f"degree {p.degree}: Cartan-free, connections {conn}"
    return Classification(label, ex, inv, conn)


# ---------------------------------------------------------------- root facts


def check_root_i(n: int) -> list:
    """Violations of: a1 ~ a2, b ~ a1 and b ~ a2 imply a1 + a2 + b = 0."""
    bad = []
    R = all_roots(n)
    for a1 in R:
        for a2 in R:
            s = a1.plus(a2)
            if s is None:
                continue
            for b in R:
                if connected(a1, b) and connected(a2, b) and b != -s:
                    bad.append((a1, a2, b))
    return bad


def check_root_ii(n: int) -> list:
    """Violations of: if b is a cycle root, -b is connected to no root of that cycle."""
    bad = []
    for c in enumerate_cycles(n):
        J = cycle_roots(c)
        for b in J:
            for other in J:
                if connected(-b, other):
                    bad.append((c, b, other))
    return bad


def check_rootc(n: int) -> list:
    """Violations of: a root outside a cycle is connected to at most two cycle roots."""
    bad = []
    R = all_roots(n)
    for c in enumerate_cycles(n):
        J = cycle_roots(c)
        Js = set(J)
        for a in R:
            if a in Js:
                continue
            k = sum(1 for b in J if connected(a, b))
            if k > 2:
                bad.append((c, a, k))
    return bad
