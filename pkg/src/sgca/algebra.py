"""Generators, elements and the graded bracket of the l-super Galilean conformal algebra.

Basis: L_m, G_m (m integer), P_r, H_r (r in Z + l) and the central elements
C1, C2. L, P, C1, C2 are even; G, H are odd. Brackets of two odd generators are
anticommutators. In symbolic mode the central charges are carried as the
coefficients of C1 and C2, so ``[L_2, L_-2] = 4 L_0 + 6 C1`` is read as
``4 L_0 + 6 c1``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from sgca import _parallel
from sgca.errors import GradingError, IndexParityError, ParseError
from sgca.halfint import HalfInt, half_range

KINDS = ("L", "P", "G", "H", "C1", "C2")
_KIND_ORDER = {k: i for i, k in enumerate(KINDS)}
ODD_KINDS = frozenset({"G", "H"})
CENTRAL_KINDS = frozenset({"C1", "C2"})

MUTATIONS = ("lp-sign",)


@dataclass(frozen=True)
class BasisGen:
    kind: str
    twice: int | None = None

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if (self.kind in CENTRAL_KINDS) != (self.twice is None):
            raise ValueError(f"{self.kind} index mismatch")

    @classmethod
    def make(cls, kind: str, index=None) -> BasisGen:
        if kind in CENTRAL_KINDS:
            return cls(kind)
        return cls(kind, HalfInt.of(index).twice_value)

    @property
    def index(self) -> Fraction | None:
        return None if self.twice is None else Fraction(self.twice, 2)

    @property
    def parity(self) -> int:
        return 1 if self.kind in ODD_KINDS else 0

    @property
    def is_central(self) -> bool:
        return self.kind in CENTRAL_KINDS

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.twice if self.twice is not None else 0)

    def __lt__(self, other: BasisGen) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.is_central:
            return self.kind.lower()
        return f"{self.kind}({HalfInt(self.twice)})"


def L(m) -> BasisGen:
    return BasisGen.make("L", m)


def P(r) -> BasisGen:
    return BasisGen.make("P", r)


def G(m) -> BasisGen:
    return BasisGen.make("G", m)


def H(r) -> BasisGen:
    return BasisGen.make("H", r)


C1 = BasisGen("C1")
C2 = BasisGen("C2")


class Element:
    """Finite linear combination of basis generators with rational coefficients.

    Stored canonically (sorted, no zero coefficients), so ``==`` is structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: dict[BasisGen, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for g, c in items:
                c = Fraction(c)
                if c:
                    acc[g] = acc.get(g, 0) + c
        self._terms = tuple(sorted(((g, c) for g, c in acc.items() if c), key=lambda gc: gc[0].sort_key()))

    @classmethod
    def gen(cls, g: BasisGen, coeff=1) -> Element:
        return cls({g: coeff})

    @property
    def terms(self) -> dict[BasisGen, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def coeff(self, g: BasisGen) -> Fraction:
        for h, c in self._terms:
            if h == g:
                return c
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __add__(self, other: Element) -> Element:
        return Element(list(self._terms) + list(other._terms))

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __neg__(self) -> Element:
        return Element([(g, -c) for g, c in self._terms])

    def __mul__(self, scalar) -> Element:
        s = Fraction(scalar)
        return Element([(g, s * c) for g, c in self._terms])

    __rmul__ = __mul__

    @property
    def parities(self) -> set[int]:
        return {g.parity for g, _ in self._terms if not g.is_central} or {0}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.parities) == 1

    @property
    def parity(self) -> int:
        ps = self.parities
        if len(ps) != 1:
            raise GradingError(f"{self} is not homogeneous")
        return ps.pop()

    def without_center(self) -> Element:
        return Element([(g, c) for g, c in self._terms if not g.is_central])

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({format_element(self)!r})"

    def to_json(self) -> list[dict]:
        out = []
        for g, c in self._terms:
            out.append(
                {
                    "kind": g.kind,
                    "index_times_two": g.twice,
                    "coeff_num": c.numerator,
                    "coeff_den": c.denominator,
                    "coeff_c1": 1 if g.kind == "C1" else 0,
                    "coeff_c2": 1 if g.kind == "C2" else 0,
                }
            )
        return out

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> Element:
        terms = []
        for t in data:
            g = BasisGen(t["kind"], t.get("index_times_two"))
            terms.append((g, Fraction(t["coeff_num"], t.get("coeff_den", 1))))
        return cls(terms)


ZERO = Element()


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(x: Element) -> str:
    if not x:
        return "0"
    parts = []
    for i, (g, c) in enumerate(x.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = str(g) if mag == 1 else f"{_fmt_coeff(mag)}*{g}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TOKEN = re.compile(
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<gen>[LPGH])\s*\(\s*(?P<idx>[+-]?\s*\d+(?:/\d+)?)\s*\)"
    r"|(?P<cen>[cC][12])"
    r"|(?P<op>[-+*])"
)


_GEN_PREFIXES = (
    (re.compile(r"[LPGH]\s*"), "expected '(' after the generator name"),
    (re.compile(r"[LPGH]\s*\(\s*"), "expected an index"),
    (re.compile(r"[LPGH]\s*\(\s*[+-]?\s*\d+(?:/\d+)?\s*"), "expected ')'"),
)


def _token_error(text: str, pos: int) -> ParseError:
    """Point at the first character a generator literal cannot continue with."""
    best = None
    for pat, msg in _GEN_PREFIXES:
        m = pat.match(text, pos)
        if m:
            best = (m.end(), msg)
    if best is None:
        return ParseError(f"unexpected character {text[pos]!r}", text, pos)
    return ParseError(best[1], text, best[0])


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise _token_error(text, pos)
        yield m.lastgroup if m.lastgroup != "idx" else "gen", m, pos
        pos = m.end()
    yield "end", None, len(text)


def parse_element(text: str) -> Element:
    """Read ``3/2*L(2) + c1*C1 - H(-1/2)``.

    ``c1`` and ``C1`` both denote the first central element, and a product of
    a charge with its own central generator (``c1*C1``) is that same element.
    """
    toks = list(_tokens(text))
    i = 0
    terms = []

    def peek():
        return toks[i]

    sign = 1
    kind, m, pos = peek()
    if kind == "op" and m.group() in "+-":
        sign = -1 if m.group() == "-" else 1
        i += 1
    while True:
        coeff = Fraction(sign)
        gen: BasisGen | None = None
        while True:
            kind, m, pos = peek()
            if kind == "num":
                coeff *= Fraction(m.group("num"))
            elif kind == "gen":
                if gen is not None:
                    raise ParseError("product of two generators", text, pos)
                gen = BasisGen.make(m.group("gen"), Fraction(m.group("idx").replace(" ", "")))
            elif kind == "cen":
                c = BasisGen(m.group("cen").upper())
                if gen is not None and gen != c:
                    raise ParseError("incompatible central factor", text, pos)
                gen = c
            else:
                raise ParseError("expected a number, generator or central charge", text, pos)
            i += 1
            kind, m, pos = peek()
            if kind == "op" and m.group() == "*":
                i += 1
                continue
            break
        if gen is None:
            raise ParseError("a bare number is not an element", text, pos)
        terms.append((gen, coeff))
        kind, m, pos = peek()
        if kind == "end":
            break
        if kind == "op" and m.group() in "+-":
            sign = -1 if m.group() == "-" else 1
            i += 1
            continue
        raise ParseError("expected '+' or '-'", text, pos)
    return Element(terms)


@dataclass(frozen=True)
class AlgebraParams:
    """Parameter l plus central-charge handling.

    ``central=None`` keeps the charges symbolic. A pair ``(c1, c2)`` multiplies
    the coefficients of C1 and C2 by those values; ``(0, 0)`` drops the centre.
    ``mutation`` deliberately perturbs a structure constant (for testing that
    the Jacobi sweep has teeth).
    """

    ell: HalfInt
    central: tuple[Fraction, Fraction] | None = None
    strict: bool = False
    mutation: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "ell", HalfInt.of(self.ell))
        if self.ell.twice_value < 0:
            raise ValueError("ell must be non-negative")
        if self.central is not None:
            c1, c2 = self.central
            object.__setattr__(self, "central", (Fraction(c1), Fraction(c2)))
        if self.mutation is not None and self.mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation {self.mutation!r}")

    @property
    def ell_is_one(self) -> bool:
        return self.ell.twice_value == 2

    def check_gen(self, g: BasisGen) -> None:
        if g.is_central:
            return
        if g.kind in ("L", "G"):
            if g.twice % 2:
                raise IndexParityError(f"{g}: index must be an integer")
        elif (g.twice - self.ell.twice_value) % 2:
            raise IndexParityError(f"{g}: index must lie in Z + {self.ell}")

    def generators(self, window, kinds=("L", "P", "G", "H")) -> list[BasisGen]:
        """All non-central generators with |index| <= window, canonically ordered."""
        w = HalfInt.of(window).twice_value
        out = []
        for k in kinds:
            parity = 0 if k in ("L", "G") else self.ell.twice_value % 2
            out.extend(BasisGen(k, t) for t in half_range(-w, w, parity))
        return out


def _central_scale(params: AlgebraParams, kind: str, value: Fraction) -> tuple[BasisGen, Fraction]:
    g = C1 if kind == "C1" else C2
    if params.central is None:
        return g, value
    return g, value * (params.central[0] if kind == "C1" else params.central[1])


def bracket_gens(params: AlgebraParams, x: BasisGen, y: BasisGen) -> list[tuple[BasisGen, Fraction]]:
    """Graded bracket of two basis generators as a short list of terms.

    Every bracket produces at most one non-central generator plus at most one
    central term.
    """
    if x.is_central or y.is_central:
        return []
    a, b = x.kind, y.kind
    if (a, b) in _TABLE:
        return _TABLE[(a, b)](params, x.index, y.index)
    if (b, a) in _TABLE:
        out = _TABLE[(b, a)](params, y.index, x.index)
        if x.parity and y.parity:
            return out
        return [(g, -c) for g, c in out]
    return []


def _ell(p: AlgebraParams) -> Fraction:
    return p.ell.value


def _gen(kind: str, idx: Fraction) -> BasisGen:
    return BasisGen(kind, int(2 * idx))


def _bLL(p, m, n):
    out = [(_gen("L", m + n), m - n)]
    if m + n == 0 and m * (m * m - 1):
        out.append(_central_scale(p, "C1", m * (m * m - 1)))
    return out


def _bLP(p, m, r):
    c = _ell(p) * m - r
    if p.mutation == "lp-sign":
        c = _ell(p) * m + r
    out = [(_gen("P", m + r), c)]
    if p.ell_is_one and m + r == 0 and m * (m * m - 1):
        out.append(_central_scale(p, "C2", m * (m * m - 1)))
    return out


def _bGG(p, m, n):
    out = [(_gen("L", m + n), Fraction(2))]
    if m + n == 0:
        out.append(_central_scale(p, "C1", 4 * m * m - 1))
    return out


def _bGH(p, m, r):
    out = [(_gen("P", m + r), Fraction(2))]
    if p.ell_is_one and m + r == 0:
        out.append(_central_scale(p, "C2", 4 * m * m - 1))
    return out


def _bLG(p, m, n):
    return [(_gen("G", m + n), m / 2 - n)]


def _bLH(p, m, r):
    return [(_gen("H", m + r), (2 * _ell(p) - 1) / 2 * m - r)]


def _bPG(p, r, m):
    return [(_gen("H", r + m), r / 2 - _ell(p) * m)]


def _zero(p, a, b):
    return []


_TABLE = {
    ("L", "L"): _bLL,
    ("L", "P"): _bLP,
    ("P", "P"): _zero,
    ("G", "G"): _bGG,
    ("G", "H"): _bGH,
    ("H", "H"): _zero,
    ("L", "G"): _bLG,
    ("L", "H"): _bLH,
    ("P", "G"): _bPG,
    ("P", "H"): _zero,
}


def bracket(params: AlgebraParams, x: Element, y: Element) -> Element:
    """Graded bracket, extended bilinearly."""
    if params.strict and not (x.is_homogeneous and y.is_homogeneous):
        raise GradingError("bracket of non-homogeneous elements in strict mode")
    terms: list[tuple[BasisGen, Fraction]] = []
    for g, a in x.items():
        params.check_gen(g)
        for h, b in y.items():
            params.check_gen(h)
            for k, c in bracket_gens(params, g, h):
                if c:
                    terms.append((k, a * b * c))
    return Element(terms)


def _as_element(x) -> Element:
    return x if isinstance(x, Element) else Element.gen(x)


def super_jacobiator(params: AlgebraParams, x, y, z) -> Element:
    """(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]."""
    x, y, z = _as_element(x), _as_element(y), _as_element(z)
    px, py, pz = x.parity, y.parity, z.parity
    out = Element()
    for sign, a, b, c in (
        ((-1) ** (px * pz), x, y, z),
        ((-1) ** (py * px), y, z, x),
        ((-1) ** (pz * py), z, x, y),
    ):
        out = out + bracket(params, a, bracket(params, b, c)) * sign
    return out


@dataclass
class JacobiReport:
    ell: HalfInt
    window: HalfInt
    checked: int = 0
    failures: list[tuple[tuple[BasisGen, BasisGen, BasisGen], Element]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "window": str(self.window),
            "checked": self.checked,
            "failures": [
                {"triple": [str(g) for g in t], "jacobiator": str(e)} for t, e in self.failures
            ],
            "ok": self.ok,
        }


def _jacobiator_gens(params: AlgebraParams, x: BasisGen, y: BasisGen, z: BasisGen) -> dict:
    """Generator-level jacobiator; same value as super_jacobiator on single generators."""
    acc: dict[BasisGen, Fraction] = {}
    px, py, pz = x.parity, y.parity, z.parity
    for sign, a, b, c in ((px * pz, x, y, z), (py * px, y, z, x), (pz * py, z, x, y)):
        for inner, ci in bracket_gens(params, b, c):
            for outer, co in bracket_gens(params, a, inner):
                v = ci * co
                acc[outer] = acc.get(outer, 0) + (-v if sign else v)
    return {g: v for g, v in acc.items() if v}


def _jacobi_chunk(args):
    params, triples = args
    bad = []
    for t in triples:
        j = _jacobiator_gens(params, *t)
        if j:
            bad.append((t, Element(j)))
    return len(triples), bad


def verify_jacobi_window(params: AlgebraParams, window) -> JacobiReport:
    """Check the super-Jacobi identity on every generator triple with |index| <= window."""
    w = HalfInt.of(window)
    if w.twice_value < 2:
        raise ValueError("window must be >= 1")
    gens = params.generators(w) + [C1, C2]
    triples = list(itertools.combinations_with_replacement(gens, 3))
    report = JacobiReport(params.ell, w)
    for n, bad in _parallel.map_chunks(_jacobi_chunk, params, triples):
        report.checked += n
        report.failures.extend(bad)
    report.failures.sort(key=lambda tb: tuple(g.sort_key() for g in tb[0]))
    return report
