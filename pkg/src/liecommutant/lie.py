"""Lie algebra specifications, structural validation and the built-in algebras."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .scalar import ONE, ZERO, Scalar, parse_scalar, sqrt_rational

Structure = dict  # (i, j) -> {k: Scalar}


class SpecError(ValueError):
    """Malformed algebra definition; ``line`` points into the source text when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class LieAlgebraSpec:
    name: str
    basis: tuple[str, ...]
    structure: Mapping[tuple[int, int], Mapping[int, Scalar]]
    subalgebras: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    blocks: tuple[tuple[int, ...], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name_or_index) -> int:
        if isinstance(name_or_index, int):
            if not 0 <= name_or_index < self.dim:
                raise IndexError(f"basis index {name_or_index} out of range")
            return name_or_index
        try:
            return self.basis.index(name_or_index)
        except ValueError:
            raise KeyError(f"{self.name}: unknown basis element {name_or_index!r}") from None

    def bracket(self, i: int, j: int) -> Mapping[int, Scalar]:
        """Structure constants of [x_i, x_j] as {k: C_ij^k}."""
        return self.structure.get((i, j), {})

    def subalgebra(self, sub) -> tuple[int, ...]:
        if isinstance(sub, str):
            if sub not in self.subalgebras:
                raise KeyError(f"{self.name}: unknown subalgebra {sub!r}")
            return self.subalgebras[sub]
        return tuple(self.index(s) for s in sub)

    def block_of(self) -> list[int]:
        out = [-1] * self.dim
        for b, idx in enumerate(self.blocks):
            for i in idx:
                out[i] = b
        return out

    def vars(self):
        """Coordinate polynomials x_0..x_{n-1}."""
        from .poly import Poly

        return [Poly.var(self.dim, i) for i in range(self.dim)]

    def with_constant(self, i: int, j: int, k: int, value) -> LieAlgebraSpec:
        """Copy with one entry C_ij^k overwritten; C_ji^k is left alone."""
        st = {key: dict(v) for key, v in self.structure.items()}
        row = st.setdefault((i, j), {})
        value = Scalar.coerce(value)
        if value:
            row[k] = value
        else:
            row.pop(k, None)
        return LieAlgebraSpec(self.name, self.basis, st, self.subalgebras, self.blocks)

    def to_json(self) -> dict:
        entries = []
        for (i, j) in sorted(self.structure):
            if i < j:
                for k, c in sorted(self.structure[(i, j)].items()):
                    entries.append(
                        {"i": self.basis[i], "j": self.basis[j], "k": self.basis[k], "c": str(c)}
                    )
        return {
            "name": self.name,
            "basis": list(self.basis),
            "structure": entries,
            "subalgebras": {n: [self.basis[i] for i in idx] for n, idx in self.subalgebras.items()},
            "blocks": [[self.basis[i] for i in b] for b in self.blocks],
        }


def build_spec(
    name: str,
    basis: Sequence[str],
    entries: Iterable[tuple[int, int, int, object]],
    subalgebras: Mapping[str, Sequence[int]] | None = None,
    blocks: Sequence[Sequence[int]] | None = None,
) -> LieAlgebraSpec:
    """Assemble a spec from explicit (i, j, k, c) entries.

    An entry for (i, j) with no explicit (j, i) counterpart is completed as
    C_ji^k = -C_ij^k.  When both orders are given they are stored verbatim so
    that :func:`validate` can report any disagreement.
    """
    explicit: dict = {}
    for i, j, k, c in entries:
        c = Scalar.coerce(c)
        row = explicit.setdefault((i, j), {})
        row[k] = row.get(k, ZERO) + c
    st: dict = {}
    for (i, j), row in explicit.items():
        st[(i, j)] = {k: v for k, v in row.items() if v}
        if (j, i) not in explicit and i != j:
            st[(j, i)] = {k: -v for k, v in row.items() if v}
    st = {key: row for key, row in st.items() if row}
    return LieAlgebraSpec(
        name,
        tuple(basis),
        st,
        {n: tuple(v) for n, v in (subalgebras or {}).items()},
        tuple(tuple(b) for b in (blocks or ())),
    )


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    antisymmetry: list = field(default_factory=list)
    jacobi: list = field(default_factory=list)
    closure: list = field(default_factory=list)
    blocks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.antisymmetry or self.jacobi or self.closure or self.blocks)

    def lines(self, spec: LieAlgebraSpec | None = None) -> list[str]:
        nm = (lambda i: spec.basis[i]) if spec else str
        out = []
        for i, j, k in self.antisymmetry:
            out.append(f"antisymmetry: C[{nm(i)},{nm(j)}]^{nm(k)} != -C[{nm(j)},{nm(i)}]^{nm(k)}")
        for i, j, k, l, v in self.jacobi:
            out.append(f"jacobi: ({nm(i)},{nm(j)},{nm(k)}) component {nm(l)} = {v}")
        for sub, i, j, k in self.closure:
            out.append(f"closure: subalgebra {sub}: [{nm(i)},{nm(j)}] has component {nm(k)}")
        out.extend(f"blocks: {msg}" for msg in self.blocks)
        return out


def validate(spec: LieAlgebraSpec) -> ValidationReport:
    rep = ValidationReport()
    n = spec.dim
    st = spec.structure
    for (i, j), row in st.items():
        if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in row):
            rep.blocks.append(f"structure entry ({i},{j}) out of range")
            return rep
    keys = sorted(set(st) | {(j, i) for (i, j) in st})
    for i, j in keys:
        if i > j:
            continue
        a, b = st.get((i, j), {}), st.get((j, i), {})
        for k in sorted(set(a) | set(b)):
            if a.get(k, ZERO) + b.get(k, ZERO):
                rep.antisymmetry.append((i, j, k))
    # Jacobi: [[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] = 0
    def br_vec(vec: Mapping[int, Scalar], k: int) -> dict:
        out: dict = {}
        for m, c in vec.items():
            for l, d in st.get((m, k), {}).items():
                out[l] = out.get(l, ZERO) + c * d
        return out

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                tot: dict = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for l, v in br_vec(st.get((a, b), {}), c).items():
                        tot[l] = tot.get(l, ZERO) + v
                for l in sorted(tot):
                    if tot[l]:
                        rep.jacobi.append((i, j, k, l, tot[l]))
    for sname, idx in spec.subalgebras.items():
        s = set(idx)
        if any(not 0 <= i < n for i in s):
            rep.blocks.append(f"subalgebra {sname} has out-of-range index")
            continue
        for i in sorted(s):
            for j in sorted(s):
                if i < j:
                    for k in sorted(st.get((i, j), {})):
                        if k not in s:
                            rep.closure.append((sname, i, j, k))
    if spec.blocks:
        seen = [x for b in spec.blocks for x in b]
        if sorted(seen) != list(range(n)):
            rep.blocks.append("blocks do not partition the basis")
    return rep


# ---------------------------------------------------------------- block table


@dataclass(frozen=True)
class BlockTable:
    nblocks: int
    targets: Mapping[tuple[int, int], frozenset]

    def __call__(self, r: int, s: int) -> frozenset:
        return self.targets.get((r, s), frozenset())

    @classmethod
    def from_spec(cls, spec: LieAlgebraSpec) -> BlockTable:
        if not spec.blocks:
            raise ValueError(f"{spec.name}: no block decomposition declared")
        bo = spec.block_of()
        t: dict = {}
        for (i, j), row in spec.structure.items():
            for k, c in row.items():
                if c:
                    t.setdefault((bo[i], bo[j]), set()).add(bo[k])
        return cls(len(spec.blocks), {key: frozenset(v) for key, v in t.items()})

    @classmethod
    def from_pattern(cls, nblocks: int, pattern: Mapping[tuple[int, int], Iterable[int]]) -> BlockTable:
        """Table from a declared pattern; (r, s) entries are mirrored to (s, r)."""
        t: dict = {}
        for (r, s), tgt in pattern.items():
            t.setdefault((r, s), set()).update(tgt)
            t.setdefault((s, r), set()).update(tgt)
        return cls(nblocks, {key: frozenset(v) for key, v in t.items() if v})


def weight(spec: LieAlgebraSpec, cartan, j) -> Scalar:
    """The scalar w with [x_cartan, x_j] = w x_j."""
    c, j = spec.index(cartan), spec.index(j)
    row = spec.bracket(c, j)
    if not row:
        return ZERO
    if set(row) != {j}:
        raise ValueError(f"{spec.basis[j]} is not an eigenvector of ad {spec.basis[c]}")
    return row[j]


def diagonal_elements(spec: LieAlgebraSpec, indices: Iterable[int]) -> list[int]:
    """Members of ``indices`` whose adjoint action is diagonal in the basis."""
    out = []
    for m in indices:
        if all(set(spec.bracket(m, j)) <= {j} for j in range(spec.dim)):
            out.append(m)
    return out


# ---------------------------------------------------------------- file format


def _item_lines(text: str, key: str) -> list[int]:
    """Line numbers of the elements of the top-level array stored under ``key``."""
    dec = json.JSONDecoder()
    pos = text.find(f'"{key}"')
    if pos < 0:
        return []
    pos = text.find("[", pos)
    if pos < 0:
        return []
    pos += 1
    lines = []
    n = len(text)
    while pos < n:
        while pos < n and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= n or text[pos] == "]":
            break
        lines.append(text.count("\n", 0, pos) + 1)
        try:
            _, pos = dec.raw_decode(text, pos)
        except json.JSONDecodeError:
            break
    return lines


def spec_from_json(text: str) -> LieAlgebraSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno) from None
    if not isinstance(data, dict):
        raise SpecError("top level must be an object", 1)
    for req in ("name", "basis", "structure"):
        if req not in data:
            raise SpecError(f"missing field {req!r}", 1)
    basis = data["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise SpecError("basis must be a list of names", _first_line(text, "basis"))
    if len(set(basis)) != len(basis):
        raise SpecError("duplicate basis names", _first_line(text, "basis"))
    where = {b: i for i, b in enumerate(basis)}
    lines = _item_lines(text, "structure")
    entries = []
    for pos, ent in enumerate(data["structure"]):
        line = lines[pos] if pos < len(lines) else None
        if not isinstance(ent, dict) or not {"i", "j", "k", "c"} <= set(ent):
            raise SpecError("structure entry needs keys i, j, k, c", line)
        try:
            i, j, k = (where[ent[key]] for key in ("i", "j", "k"))
        except KeyError as exc:
            raise SpecError(f"unknown basis name {exc.args[0]!r}", line) from None
        try:
            c = parse_scalar(str(ent["c"]))
        except ValueError as exc:
            raise SpecError(str(exc), line) from None
        entries.append((i, j, k, c))
    subs = {}
    for sname, members in (data.get("subalgebras") or {}).items():
        try:
            subs[sname] = tuple(where[m] for m in members)
        except KeyError as exc:
            raise SpecError(f"subalgebra {sname}: unknown name {exc.args[0]!r}",
                            _first_line(text, "subalgebras")) from None
    blocks = []
    for b in data.get("blocks") or []:
        try:
            blocks.append(tuple(where[m] for m in b))
        except KeyError as exc:
            raise SpecError(f"blocks: unknown name {exc.args[0]!r}", _first_line(text, "blocks")) from None
    return build_spec(data["name"], basis, entries, subs, blocks)


def _first_line(text: str, key: str) -> int | None:
    pos = text.find(f'"{key}"')
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


# ---------------------------------------------------------------- builtins


def sl_names(nplus1: int) -> list[str]:
    sep = "_" if nplus1 >= 10 else ""
    n = nplus1 - 1
    names = [f"h{a}" for a in range(1, n + 1)]
    pos = [(i, j) for i in range(1, nplus1 + 1) for j in range(i + 1, nplus1 + 1)]
    neg = [(j, i) for (i, j) in pos]
    names += [f"e{i}{sep}{j}" for i, j in pos] + [f"e{i}{sep}{j}" for i, j in neg]
    return names


def sl_root_pairs(nplus1: int) -> list[tuple[int, int]]:
    """(i, j) for each root coordinate, in basis order after the Cartan block."""
    pos = [(i, j) for i in range(1, nplus1 + 1) for j in range(i + 1, nplus1 + 1)]
    return pos + [(j, i) for (i, j) in pos]


def make_sl(nplus1: int) -> LieAlgebraSpec:
    """sl(n+1) in the basis h_1..h_n, e_ij (i<j), e_ij (i>j).

    [E_ij, E_kl] = d_jk E_il - d_il E_kj with E_ii - E_i+1,i+1 = h_i, and
    [h_a, E_kl] = (d_ak - d_al - d_a+1,k + d_a+1,l) E_kl.
    """
    if not isinstance(nplus1, int) or nplus1 < 2:
        raise ValueError("make_sl needs nplus1 >= 2")
    n = nplus1 - 1
    names = sl_names(nplus1)
    roots = sl_root_pairs(nplus1)
    ridx = {r: n + pos for pos, r in enumerate(roots)}

    def diag(i: int, j: int) -> dict:
        # E_ii - E_jj for i != j as a sum of h's
        s = ONE if i < j else -ONE
        lo, hi = min(i, j), max(i, j)
        return {a - 1: s for a in range(lo, hi)}

    entries = []
    for a in range(1, n + 1):
        for (k, l) in roots:
            w = (k == a) - (l == a) - (k == a + 1) + (l == a + 1)
            if w:
                entries.append((a - 1, ridx[(k, l)], ridx[(k, l)], w))
    for x, (i, j) in enumerate(roots):
        for y, (k, l) in enumerate(roots):
            if x >= y:
                continue
            ix, iy = ridx[(i, j)], ridx[(k, l)]
            out: dict = {}
            if j == k and i == l:
                for c, v in diag(i, j).items():
                    out[c] = out.get(c, 0) + v
            else:
                if j == k:
                    out[ridx[(i, l)]] = out.get(ridx[(i, l)], 0) + 1
                if i == l:
                    out[ridx[(k, j)]] = out.get(ridx[(k, j)], 0) - 1
            for c, v in out.items():
                if v:
                    entries.append((ix, iy, c, v))
    cartan = tuple(range(n))
    positive = tuple(range(n, n + len(roots) // 2))
    negative = tuple(range(n + len(roots) // 2, n + len(roots)))
    subs = {"cartan": cartan, "positive": positive}
    if nplus1 == 3:
        subs["o3"] = tuple(names.index(x) for x in ("e12", "e23", "e13"))
    return build_spec(f"sl{nplus1}", names, entries, subs, (cartan, positive, negative))


SU3_BASIS = ("l0", "lp1", "lm1", "j0", "jp1", "jm1", "jp2", "jm2")


def make_su3_elliott() -> LieAlgebraSpec:
    """su(3) in the so(3) tensor basis (L0, L+1, L-1, J0, J+1, J-1, J+2, J-2)."""
    r2 = sqrt_rational(2)
    r3 = sqrt_rational(3)
    a = r3 * Scalar("3/4")  # 3 sqrt3 / 4
    b = r3 * Scalar("3/2")  # 3 sqrt3 / 2
    f = r3 * Scalar("4/3")  # 4 / sqrt3
    L0, LP, LM, J0, JP1, JM1, JP2, JM2 = range(8)
    upper = {
        (L0, LP): {LP: 1},
        (L0, LM): {LM: -1},
        (L0, JP1): {JP1: 1},
        (L0, JM1): {JM1: -1},
        (L0, JP2): {JP2: 2},
        (L0, JM2): {JM2: -2},
        (LP, LM): {L0: -1},
        (LP, J0): {JP1: -a},
        (LP, JP1): {JP2: -2 * r2},
        (LP, JM1): {J0: -f},
        (LP, JM2): {JM1: -r2 / 2},
        (LM, J0): {JM1: a},
        (LM, JP1): {J0: f},
        (LM, JM1): {JM2: 2 * r2},
        (LM, JP2): {JP1: r2 / 2},
        (J0, JP1): {LP: b},
        (J0, JM1): {LM: -b},
        (JP1, JM1): {L0: -2},
        (JP1, JM2): {LM: r2},
        (JM1, JP2): {LP: -r2},
        (JP2, JM2): {L0: 1},
    }
    entries = [(i, j, k, c) for (i, j), row in upper.items() for k, c in row.items()]
    g1 = (L0, LP, LM)
    g2 = (J0, JP1, JM1, JP2, JM2)
    return build_spec("su3-elliott", SU3_BASIS, entries, {"so3": g1, "l0": (L0,)}, (g1, g2))


def builtin(name: str) -> LieAlgebraSpec:
    key = name.lower()
    if key in ("su3", "su3-elliott", "su3_elliott"):
        return make_su3_elliott()
    if key.startswith("sl"):
        try:
            k = int(key[2:])
        except ValueError:
            raise KeyError(f"unknown builtin algebra {name!r}") from None
        return make_sl(k)
    raise KeyError(f"unknown builtin algebra {name!r}")


def load_algebra(ref: str) -> LieAlgebraSpec:
    """A builtin name or a path to a JSON definition."""
    try:
        return builtin(ref)
    except KeyError:
        pass
    try:
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {ref!r}: {exc.strerror}") from None
    return spec_from_json(text)
