"""Built-in reduction chains: the printed generators, their block layouts and
the reference comparison tables they are checked against."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .closure import rebase_generators
from .commutant import GeneratorSet
from .lie import LieAlgebraSpec, make_sl, make_su3_elliott
from .poly import Poly
from .roots import cartan_generator_set
from .scalar import R2, R3, R6, Scalar


def _q(text: str) -> Scalar:
    return Scalar.coerce(text)


def elliott_generators() -> dict[str, Poly]:
    """M1..M6 of the so(3) < su(3) chain, with exact surd coefficients."""
    spec = make_su3_elliott()
    l0, lp1, lm1, j0, jp1, jm1, jp2, jm2 = spec.vars()
    h = _q("1/2")
    s32 = R6 * h  # sqrt(3/2)
    i3 = R3 / 3  # 1/sqrt3
    s23 = R6 / 3  # sqrt(2/3)
    i42 = R2 / 8  # 1/(4 sqrt2)

    M1 = l0**2 - 2 * lm1 * lp1
    M2 = j0**2 - _q("9/8") * jm1 * jp1 + _q("9/2") * jm2 * jp2
    M3 = (
        l0**2 * j0
        + lm1 * lp1 * j0
        - _q("3/4") * R3 * l0 * lp1 * jm1
        + _q("3/2") * s32 * lp1**2 * jm2
        - _q("3/4") * R3 * l0 * lm1 * jp1
        + _q("3/2") * s32 * lm1**2 * jp2
    )
    M4 = (
        _q("-16/27") * j0**3
        + j0 * jm1 * jp1
        - _q("3/2") * s32 * jm2 * jp1**2
        - _q("3/2") * s32 * jm1**2 * jp2
        + 8 * j0 * jm2 * jp2
    )
    M5 = (
        _q("16/3") * lm1 * lp1 * j0**2
        - 4 * i3 * l0 * lp1 * j0 * jm1
        + _q("3/2") * lp1**2 * jm1**2
        - 8 * s23 * lp1**2 * j0 * jm2
        - 4 * i3 * l0 * lm1 * j0 * jp1
        + l0**2 * jm1 * jp1
        - 5 * lm1 * lp1 * jm1 * jp1
        + 6 * R2 * l0 * lp1 * jm2 * jp1
        + _q("3/2") * lm1**2 * jp1**2
        - 8 * s23 * lm1**2 * j0 * jp2
        + 6 * R2 * l0 * lm1 * jm1 * jp2
        - 16 * l0**2 * jm2 * jp2
        + 8 * lm1 * lp1 * jm2 * jp2
    )
    s = _q("1/16") * s32
    e = _q("1/8") * s32
    t = _q("1/8") * R3
    M6 = (
        i42 * l0 * lp1**2 * j0 * jm1**2
        - s * lp1**3 * jm1**3
        - 2 * i3 * l0 * lp1**2 * j0**2 * jm2
        + h * lp1**3 * j0 * jm1 * jm2
        - e * l0**2 * lp1 * jm1**2 * jp1
        - s * lm1 * lp1**2 * jm1**2 * jp1
        + l0**2 * lp1 * j0 * jm2 * jp1
        + h * lm1 * lp1**2 * j0 * jm2 * jp1
        + t * l0 * lp1**2 * jm1 * jm2 * jp1
        - h * s32 * lp1**3 * jm2**2 * jp1
        - i42 * l0 * lm1**2 * j0 * jp1**2
        + e * l0**2 * lm1 * jm1 * jp1**2
        + s * lm1**2 * lp1 * jm1 * jp1**2
        - t * l0**3 * jm2 * jp1**2
        - 3 * t * l0 * lm1 * lp1 * jm2 * jp1**2
        + s * lm1**3 * jp1**3
        + 2 * i3 * l0 * lm1**2 * j0**2 * jp2
        - l0**2 * lm1 * j0 * jm1 * jp2
        - h * lm1**2 * lp1 * j0 * jm1 * jp2
        + t * l0**3 * jm1**2 * jp2
        + 3 * t * l0 * lm1 * lp1 * jm1**2 * jp2
        - s32 * l0**2 * lp1 * jm1 * jm2 * jp2
        - h * s32 * lm1 * lp1**2 * jm1 * jm2 * jp2
        + R3 * l0 * lp1**2 * jm2**2 * jp2
        - h * lm1**3 * j0 * jp1 * jp2
        - t * l0 * lm1**2 * jm1 * jp1 * jp2
        + s32 * l0**2 * lm1 * jm2 * jp1 * jp2
        + h * s32 * lm1**2 * lp1 * jm2 * jp1 * jp2
        + h * s32 * lm1**3 * jm1 * jp2**2
        - R3 * l0 * lm1**2 * jm2 * jp2**2
    )
    return {"M1": M1, "M2": M2, "M3": M3, "M4": M4, "M5": M5, "M6": M6}


def o3_generators() -> dict[str, Poly]:
    """A1..A6 of the o(3) < sl(3) chain (o(3) spanned by e12, e23, e13)."""
    spec = make_sl(3)
    h1, h2, e12, e13, e23, e21, e31, e32 = spec.vars()
    A1 = e13
    A2 = 3 * e12 * e23 + (h1 - h2) * e13
    A3 = h1**2 + h2**2 + h1 * h2 + 3 * (e12 * e21 + e23 * e32 + e13 * e31)
    A4 = e12 * e23**2 + e13 * (h1 * e23 - e13 * e21)
    A5 = e13 * (e13 * e32 + h2 * e12) - e12**2 * e23
    A6 = _q("1/2") * (
        2 * h1**3
        + 3 * h2 * h1**2
        - 3 * (h2**2 - 3 * e12 * e21 + 6 * e23 * e32 - 3 * e13 * e31) * h1
        - 2 * h2**3
        + 27 * (e13 * e21 * e32 + e12 * e23 * e31)
        + 9 * h2 * (2 * e12 * e21 - e23 * e32 - e13 * e31)
    )
    return {"A1": A1, "A2": A2, "A3": A3, "A4": A4, "A5": A5, "A6": A6}


@dataclass(frozen=True)
class CountRow:
    """One printed comparison row: bracket {q_k, q_l} and its two counts."""

    k: int
    l: int
    unpruned: int
    pruned: int


@dataclass
class Chain:
    name: str
    description: str
    spec: LieAlgebraSpec
    sub: str
    gens: GeneratorSet
    #: blocks lying inside the centralized subalgebra
    commuting: tuple = ()
    rows: list = field(default_factory=list)
    #: printed compact forms as degree patterns, before and after grading
    unpruned_forms: dict = field(default_factory=dict)
    pruned_forms: dict = field(default_factory=dict)
    center: tuple = ()
    degree: int | None = None


def _forms(text: str) -> dict:
    """Parse ``22:3 | 23:22,4`` into {(2,2): [(3,)], (2,3): [(2,2),(4,)]}."""
    out = {}
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, body = chunk.partition(":")
        kl = (int(key[0]), int(key[1]))
        pats = []
        for term in body.split(","):
            term = term.strip()
            if term and term != "0":
                pats.append(tuple(sorted((int(ch) for ch in term), reverse=True)))
        out[kl] = pats
    return out


def _rows(text: str) -> list[CountRow]:
    rows = []
    for chunk in text.split():
        kl, _, vals = chunk.partition("=")
        u, pr = vals.split("/")
        rows.append(CountRow(int(kl[0]), int(kl[1]), int(u), int(pr)))
    return rows


def _elliott() -> Chain:
    spec = make_su3_elliott()
    M = elliott_generators()
    gens = GeneratorSet.from_polys(list(M.values()), list(M))
    return Chain(
        "elliott", "so(3) < su(3)", spec, "so3", gens, (0,),
        _rows("22=2/0 23=4/1 24=4/2 26=8/7 34=8/1 36=17/9 46=18/9"),
        _forms("22:3 | 23:22,4 | 24:23 | 26:34,223 | 34:222,33,6 | 36:2222,44,26,233,224 | 46:333,2223,234,36"),
        _forms("22:0 | 23:22 | 24:23 | 26:34,223 | 34:6 | 36:2222,26,233,224 | 46:333,234,36"),
        ("M1", "M2"), 3,
    )


def _o3() -> Chain:
    spec = make_sl(3)
    A = o3_generators()
    gens = GeneratorSet.from_polys(list(A.values()), list(A))
    return Chain(
        "o3sl3", "o(3) < sl(3)", spec, "o3", gens, (1,),
        _rows("12=3/0 22=6/2 23=9/5 33=13/7"),
        _forms("12:2,11 | 22:3,12,111 | 23:22,112,13,1111 | 33:122,113,23,11111"),
        _forms("12:0 | 22:12 | 23:112,22,13 | 33:1112,122,23"),
        ("A1", "A3", "A6"), 2,
    )


def _cartan(n: int) -> Chain:
    spec = make_sl(n + 1)
    gens = cartan_generator_set(n)
    if n == 2:
        return Chain(
            "cartan-sl3", "Cartan < sl(3)", spec, "cartan", gens, (0,),
            _rows("22=12/2 23=24/6 33=42/12"),
            _forms("22:3,12,111 | 23:22,13,112,1111 | 33:23,122,113,1112,11111"),
            _forms("22:3 | 23:22,13 | 33:23,122"),
            ("h1", "h2"), 2,
        )
    return Chain(
        "cartan-sl4", "Cartan < sl(4)", spec, "cartan", gens, (0,),
        _rows("22=31/8 23=102/39 24=261/129 34=478/236 44=990/492"),
        {},
        _forms("22:3 | 23:22,13 | 24:122,14,23 | 34:24,123,222 | 44:124,133,223,34"),
        ("h1", "h2", "h3"), 3,
    )


@lru_cache(maxsize=None)
def get_chain(name: str) -> Chain:
    builders = {"elliott": _elliott, "o3sl3": _o3,
                "cartan-sl3": lambda: _cartan(2), "cartan-sl4": lambda: _cartan(3)}
    if name not in builders:
        raise KeyError(f"unknown chain {name!r}; choose from {', '.join(CHAINS)}")
    return builders[name]()


CHAINS = ("elliott", "o3sl3", "cartan-sl3", "cartan-sl4")


# ---------------------------------------------------------------- basis changes

_THIRD = Fraction(1, 3)
_HALF = Fraction(1, 2)

TRANSFORMS = {
    # Elliott generators in the B_{i1 i2} notation: i1, i2 count factors from
    # the so(3) block and the complement.  The scaling is the identity.
    "elliott-B": ("elliott", {
        "B20": {"M1": 1}, "B02": {"M2": 1}, "B21": {"M3": 1},
        "B03": {"M4": 1}, "B22": {"M5": 1}, "B33": {"M6": 1},
    }),
    "racah-cfg": ("cartan-sl3", {
        "c1": {"h1": 2 * _THIRD, "h2": _THIRD},
        "c2": {"h1": -_THIRD, "h2": _THIRD},
        "c12": {"p12": 1}, "c13": {"p13": 1}, "c23": {"p23": 1},
        "f123": {"p132": _HALF, "p123": -_HALF},
        "g123": {"p132": _HALF, "p123": _HALF},
    }),
}


def transformed(name: str) -> tuple[Chain, GeneratorSet]:
    chain_name, transform = TRANSFORMS[name]
    chain = get_chain(chain_name)
    return chain, rebase_generators(chain.gens, transform)


# ---------------------------------------------------------------- printed relations

def _s(*parts) -> Scalar:
    """Fraction times an optional surd: _s(-16, 27, R2)."""
    out = Scalar.coerce(Fraction(parts[0], parts[1]))
    for p in parts[2:]:
        out = out * p
    return out


#: Relations as printed, keyed by (chain or transform, u, v).  Factors are the
#: printed labels with multiplicity.
PRINTED = {
    ("o3sl3", "A2", "A4"): [(_s(-3, 1), ("A1", "A4"))],
    ("o3sl3", "A2", "A5"): [(_s(3, 1), ("A1", "A5"))],
    ("o3sl3", "A4", "A5"): [(_s(-1, 3), ("A1", "A1", "A1", "A3")), (_s(1, 3), ("A1", "A2", "A2"))],
    ("o3sl3", "A2", "A6"): [],
    ("o3sl3", "A3", "A4"): [],
    ("o3sl3", "A3", "A5"): [],
    ("o3sl3", "A3", "A6"): [],
    ("elliott-B", "B21", "B22"): [(_s(-36, 1, R2), ("B33",))],
    ("elliott-B", "B03", "B22"): [(_s(72, 1, R2), ("B33",))],
    ("elliott-B", "B21", "B33"): [
        (_s(-16, 27, R2), ("B02", "B02", "B02", "B02")),
        (_s(8, 27, R2), ("B02", "B21", "B21")),
        (_s(-1, 2, R2), ("B20", "B21", "B03")),
        (_s(-1, 2, R2), ("B20", "B02", "B22")),
        (_s(-3, 32, R2), ("B22", "B22")),
    ],
    ("elliott-B", "B03", "B33"): [
        (_s(32, 27, R2), ("B20", "B20", "B02", "B02")),
        (_s(-16, 27, R2), ("B02", "B21", "B21")),
        (_s(1, 1, R2), ("B20", "B21", "B03")),
        (_s(1, 1, R2), ("B20", "B02", "B22")),
        (_s(3, 16, R2), ("B22", "B22")),
    ],
    ("elliott-B", "B22", "B33"): [
        (_s(-16, 9, R2), ("B20", "B20", "B02", "B21")),
        (_s(-128, 243), ("B20", "B02", "B02", "B21")),
        (_s(32, 27, R2), ("B21", "B21", "B21")),
        (_s(-1, 1, R2), ("B20", "B20", "B20", "B03")),
        (_s(8, 9, R2), ("B20", "B20", "B02", "B03")),
        (_s(-16, 9, R2), ("B21", "B21", "B03")),
        (_s(-1, 1, R2), ("B20", "B21", "B22")),
        (_s(-16, 27, R2), ("B02", "B21", "B22")),
        (_s(1, 2, R2), ("B20", "B03", "B22")),
    ],
}

#: Readings of suspected misprints: the same relation with the typo repaired.
CORRECTED = {
    # doubled B02^2 B02^2 read as B20^2 B02^2 (degree and grading both fit)
    ("elliott-B", "B21", "B33"): {("B02", "B02", "B02", "B02"): ("B20", "B20", "B02", "B02")},
}
CORRECTED_COEFFS = {
    # surd factor missing from the B20 B02^2 B21 coefficient
    ("elliott-B", "B22", "B33"): {("B20", "B02", "B02", "B21"): _s(-128, 243, R2)},
}


def printed_relation(key: tuple, corrected: bool = False) -> list:
    terms = list(PRINTED[key])
    if corrected:
        fac = CORRECTED.get(key, {})
        co = CORRECTED_COEFFS.get(key, {})
        terms = [(co.get(f, c), fac.get(f, f)) for c, f in terms]
    return terms
