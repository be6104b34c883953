"""Exact arithmetic in Q(sqrt2, sqrt3).

A value is ``a + b*r2 + c*r3 + d*r6`` with rational a, b, c, d.  Internally the
four numerators share one positive denominator, kept in lowest terms, which
keeps multiplication to integer products plus a single gcd.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

_SURDS = ("", "r2", "r3", "r6")


class Scalar:
    __slots__ = ("_n", "_d", "_h")

    def __init__(self, a=0, b=0, c=0, d=0):
        fa, fb, fc, fd = (Fraction(v) for v in (a, b, c, d))
        den = fa.denominator
        for f in (fb, fc, fd):
            den = den * f.denominator // gcd(den, f.denominator)
        nums = tuple(f.numerator * (den // f.denominator) for f in (fa, fb, fc, fd))
        self._n, self._d = _reduce(nums, den)
        self._h = None

    @classmethod
    def _raw(cls, nums, den):
        obj = object.__new__(cls)
        obj._n, obj._d = _reduce(nums, den)
        obj._h = None
        return obj

    @classmethod
    def coerce(cls, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return cls._raw((x, 0, 0, 0), 1)
        if isinstance(x, Fraction):
            return cls._raw((x.numerator, 0, 0, 0), x.denominator)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @property
    def a(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def c(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def d(self) -> Fraction:
        return Fraction(self._n[3], self._d)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_rational(self) -> bool:
        n = self._n
        return not (n[1] or n[2] or n[3])

    def __bool__(self):
        return any(self._n)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._h is None:
            if self.is_rational():
                self._h = hash(Fraction(self._n[0], self._d))
            else:
                self._h = hash((self._n, self._d))
        return self._h

    def __neg__(self):
        n = self._n
        return Scalar._raw((-n[0], -n[1], -n[2], -n[3]), self._d)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            n1, n2 = self._n, o._n
            return Scalar._raw(
                (n1[0] + n2[0], n1[1] + n2[1], n1[2] + n2[2], n1[3] + n2[3]), d1
            )
        g = gcd(d1, d2)
        f1, f2 = d2 // g, d1 // g
        n1, n2 = self._n, o._n
        return Scalar._raw(
            (
                n1[0] * f1 + n2[0] * f2,
                n1[1] * f1 + n2[1] * f2,
                n1[2] * f1 + n2[2] * f2,
                n1[3] * f1 + n2[3] * f2,
            ),
            d1 * f1,
        )

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._n
        e, f, g, h = o._n
        den = self._d * o._d
        if not (b or c or d):
            return Scalar._raw((a * e, a * f, a * g, a * h), den)
        if not (f or g or h):
            return Scalar._raw((a * e, b * e, c * e, d * e), den)
        # r2*r3 = r6, r2*r6 = 2 r3, r3*r6 = 3 r2, r6*r6 = 6
        return Scalar._raw(
            (
                a * e + 2 * b * f + 3 * c * g + 6 * d * h,
                a * f + b * e + 3 * (c * h + d * g),
                a * g + c * e + 2 * (b * h + d * f),
                a * h + d * e + b * g + c * f,
            ),
            den,
        )

    __rmul__ = __mul__

    def conjugate2(self) -> Scalar:
        """Image under r2 -> -r2."""
        a, b, c, d = self._n
        return Scalar._raw((a, -b, c, -d), self._d)

    def conjugate3(self) -> Scalar:
        """Image under r3 -> -r3."""
        a, b, c, d = self._n
        return Scalar._raw((a, b, -c, -d), self._d)

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        a, b, c, d = self._n
        if not (b or c or d):
            s = -1 if a < 0 else 1
            return Scalar._raw((s * self._d, 0, 0, 0), abs(a))
        # x * conj3(x) lies in Q(r2); times its r2-conjugate it is rational
        y = self * self.conjugate3()
        z = y * y.conjugate2()
        num = self.conjugate3() * y.conjugate2()
        r = z._n[0]
        s = -1 if r < 0 else 1
        inv_z = Scalar._raw((s * z._d, 0, 0, 0), abs(r))
        return num * inv_z

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_float(self) -> float:
        a, b, c, d = self._n
        return (a + b * 2 ** 0.5 + c * 3 ** 0.5 + d * 6 ** 0.5) / self._d

    def __float__(self):
        return self.to_float()

    def __repr__(self):
        return f"Scalar('{self}')"

    def __str__(self):
        return format_scalar(self)


def _reduce(nums, den):
    if den < 0:
        nums = tuple(-x for x in nums)
        den = -den
    if not any(nums):
        return (0, 0, 0, 0), 1
    g = den
    for x in nums:
        if x:
            g = gcd(g, x)
            if g == 1:
                return tuple(nums), den
    if g > 1:
        return tuple(x // g for x in nums), den // g
    return tuple(nums), den


ZERO = Scalar._raw((0, 0, 0, 0), 1)
ONE = Scalar._raw((1, 0, 0, 0), 1)
R2 = Scalar._raw((0, 1, 0, 0), 1)
R3 = Scalar._raw((0, 0, 1, 0), 1)
R6 = Scalar._raw((0, 0, 0, 1), 1)


def _fmt_rat(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_scalar(x: Scalar) -> str:
    """Canonical text: ``p/q + p/q*r2 + p/q*r3 + p/q*r6``, zero terms dropped, unit surds bare."""
    parts = []
    for f, surd in zip(x.components(), _SURDS):
        if not f:
            continue
        if surd:
            body = surd if abs(f) == 1 else f"{_fmt_rat(abs(f))}*{surd}"
        else:
            body = _fmt_rat(abs(f))
        if not parts:
            parts.append(("-" if f < 0 else "") + body)
        else:
            parts.append(("- " if f < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)(?:\s*/\s*(\d+))?(?:\s*\*\s*(r2|r3|r6))?|(r2|r3|r6))\s*")


def parse_scalar(text: str) -> Scalar:
    """Parse ``term (('+'|'-') term)*`` with term = ``rat ['*' surd]`` or a bare surd."""
    if not isinstance(text, str):
        raise TypeError("scalar text must be a string")
    pos = 0
    comps = [Fraction(0)] * 4
    first = True
    src = text.strip()
    if not src:
        raise ValueError("empty scalar")
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar {text!r} near column {pos + 1}")
        sign, num, den, surd, bare = m.groups()
        if bare:
            num, surd = "1", bare
        if sign is None and not first:
            raise ValueError(f"bad scalar {text!r}: missing operator near column {pos + 1}")
        if den is not None and int(den) == 0:
            raise ValueError(f"bad scalar {text!r}: zero denominator")
        val = Fraction(int(num), int(den) if den else 1)
        if sign == "-":
            val = -val
        comps[_SURDS.index(surd or "")] += val
        pos = m.end()
        first = False
    return Scalar(*comps)


def sqrt_rational(q) -> Scalar:
    """sqrt of a positive rational that lands in the field, e.g. 3/2 -> r6/2."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    for surd, k in ((ONE, 1), (R2, 2), (R3, 3), (R6, 6)):
        t = q / k
        n, d = t.numerator, t.denominator
        rn, rd = _isqrt_exact(n), _isqrt_exact(d)
        if rn is not None and rd is not None:
            return surd * Scalar(Fraction(rn, rd))
    raise ValueError(f"sqrt({q}) is not in Q(r2, r3)")


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None
