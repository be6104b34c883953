"""Sparse multivariate polynomials over :class:`Scalar`.

Monomials are exponent tuples aligned with a Lie algebra basis.  The term
order is graded lexicographic: higher total degree first, ties broken by
comparing exponent tuples left to right, so ``x1 > x2 > ... > xn``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .scalar import ONE, ZERO, Scalar, parse_scalar

Monomial = tuple


def monomial_key(m: Monomial):
    """Sort key; larger key means larger in graded-lex."""
    return (sum(m), m)


def monomials_of_degree(n: int, k: int) -> list[Monomial]:
    """All exponent tuples of length n and total degree k, largest first."""
    out: list[Monomial] = []

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            rec(prefix + [e], left - e, slots - 1)

    if n == 0:
        return [()] if k == 0 else []
    rec([], k, n)
    return out


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero scalars.  Build with the
    constructors below or by arithmetic on :meth:`var`.
    """

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        t = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has length {len(m)}, expected {nvars}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = Scalar.coerce(c)
                if c:
                    t[m] = t[m] + c if m in t else c
                    if not t[m]:
                        del t[m]
        self._t = t
        self._hash = None

    @classmethod
    def _wrap(cls, nvars: int, terms: dict) -> Poly:
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._t = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> Poly:
        c = Scalar.coerce(c)
        return cls._wrap(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        m = [0] * nvars
        m[i] = 1
        return cls._wrap(nvars, {tuple(m): ONE})

    @classmethod
    def monomial(cls, m: Monomial, c=ONE) -> Poly:
        return cls(len(m), {tuple(m): c})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self) -> Iterator[tuple[Monomial, Scalar]]:
        """Terms in descending graded-lex order."""
        for m in sorted(self._t, key=monomial_key, reverse=True):
            yield m, self._t[m]

    def monomials(self) -> list[Monomial]:
        return sorted(self._t, key=monomial_key, reverse=True)

    def coefficient(self, m: Monomial) -> Scalar:
        return self._t.get(tuple(m), ZERO)

    def __len__(self):
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._t), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._t}) <= 1

    def leading(self) -> tuple[Monomial, Scalar]:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._t, key=monomial_key)
        return m, self._t[m]

    def _check(self, other: Poly):
        if self.nvars != other.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        if len(other._t) > len(self._t):
            big, small = other._t, self._t
        else:
            big, small = self._t, other._t
        t = dict(big)
        for m, c in small.items():
            v = t.get(m)
            if v is None:
                t[m] = c
            else:
                v = v + c
                if v:
                    t[m] = v
                else:
                    del t[m]
        return Poly._wrap(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap(self.nvars, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Poly:
        c = Scalar.coerce(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._wrap(self.nvars, {m: v * c for m, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return _poly_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        c = Scalar.coerce(other)
        return self.scale(c.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer")
        out = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def partial(self, i: int) -> Poly:
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        t = {}
        for m, c in self._t.items():
            e = m[i]
            if e:
                nm = m[:i] + (e - 1,) + m[i + 1:]
                t[nm] = c * e
        return Poly._wrap(self.nvars, t)

    def homogeneous_component(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("degree must be nonnegative")
        return Poly._wrap(self.nvars, {m: c for m, c in self._t.items() if sum(m) == k})

    def homogeneous_components(self) -> dict[int, Poly]:
        out: dict[int, dict] = {}
        for m, c in self._t.items():
            out.setdefault(sum(m), {})[m] = c
        return {k: Poly._wrap(self.nvars, t) for k, t in sorted(out.items())}

    def substitute(self, point: Sequence) -> Scalar:
        """Evaluate at a point given as scalars."""
        pt = [Scalar.coerce(v) for v in point]
        total = ZERO
        for m, c in self._t.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = v * x ** e
            total = total + v
        return total

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._t == other._t
        if isinstance(other, (int, Scalar)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._t:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.items():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            cs = str(c)
            if not mono:
                body = cs
            elif c == ONE:
                body = mono
            elif c == -ONE:
                body = "-" + mono
            elif len(cs.split()) == 1:
                body = f"{cs}*{mono}"
            else:
                body = f"({cs})*{mono}"
            if parts and body.startswith("-"):
                parts.append("- " + body[1:])
            elif parts:
                parts.append("+ " + body)
            else:
                parts.append(body)
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.nvars}, {self.format()!r})"

    def to_json(self) -> list:
        return [[list(m), str(c)] for m, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable, nvars: int | None = None) -> Poly:
        data = list(data)
        if nvars is None:
            if not data:
                raise ValueError("cannot infer dimension of an empty polynomial")
            nvars = len(data[0][0])
        t = {}
        for pos, item in enumerate(data):
            if not (isinstance(item, (list, tuple)) and len(item) == 2):
                raise ValueError(f"term {pos}: expected [exponents, scalar]")
            exps, c = item
            if not all(isinstance(e, int) and e >= 0 for e in exps):
                raise ValueError(f"term {pos}: exponents must be nonnegative integers")
            if len(exps) != nvars:
                raise ValueError(f"term {pos}: expected {nvars} exponents, got {len(exps)}")
            c = parse_scalar(c) if isinstance(c, str) else Scalar.coerce(c)
            m = tuple(exps)
            t[m] = t[m] + c if m in t else c
        return cls(nvars, t)


def _poly_mul(p: Poly, q: Poly) -> Poly:
    if not p._t or not q._t:
        return Poly.zero(p.nvars)
    t: dict = {}
    qi = list(q._t.items())
    for m1, c1 in p._t.items():
        for m2, c2 in qi:
            m = tuple(a + b for a, b in zip(m1, m2))
            v = c1 * c2
            old = t.get(m)
            t[m] = v if old is None else old + v
    return Poly._wrap(p.nvars, {m: c for m, c in t.items() if c})


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def partial(p: Poly, i: int) -> Poly:
    return p.partial(i)


def homogeneous_component(p: Poly, k: int) -> Poly:
    return p.homogeneous_component(k)


def variables(nvars: int) -> list[Poly]:
    return [Poly.var(nvars, i) for i in range(nvars)]


def product(polys: Iterable[Poly], nvars: int) -> Poly:
    out = Poly.constant(nvars, 1)
    for p in polys:
        out = out * p
    return out
