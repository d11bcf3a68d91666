"""Singular operator products fitted from mode brackets.

A field A of weight h_A has modes A(z) = sum_m A_m z^(-m-h_A). An OPE

    A(z) B(w) ~ sum_j C_j(w) / (z-w)^(j+1)

is equivalent to the mode identity

    [A_m, B_n] = sum_j binom(m + h_A - 1, j) * (modes of C_j),

where a field F of weight h_F placed at pole j+1 contributes its mode F_s with
s = m + n + h_A + h_B - 1 - j - h_F (the derivative dF has modes
-(s + h_F) F_s, and a central constant only has the mode s = 0). The fit
solves this linear system exactly over a window of (m, n).
"""
from __future__ import annotations

import json
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from sgca.algebra import AlgebraParams, BasisGen, Element, bracket
from sgca.errors import AnsatzInsufficient, FitInconsistent, WindowTooSmall
from sgca.halfint import HalfInt
from sgca.linalg import solve

FIELD_KINDS = ("L", "P", "G", "H")
MAX_POLE = 4


def _ell(ell) -> Fraction:
    return HalfInt.of(ell).value


@dataclass(frozen=True)
class FieldLabel:
    kind: str
    ell: Fraction

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"unknown field {self.kind!r}; expected one of L, P, G, H")
        object.__setattr__(self, "ell", _ell(self.ell))

    @property
    def weight(self) -> Fraction:
        return field_weight(self.kind, self.ell)

    def modes(self, window) -> list[Fraction]:
        return [g.index for g in AlgebraParams(self.ell).generators(window, kinds=(self.kind,))]

    def gen(self, index) -> BasisGen:
        return BasisGen.make(self.kind, index)

    def z_exponent(self, index) -> Fraction:
        return -Fraction(index) - self.weight


@lru_cache(maxsize=None)
def field_weight(kind: str, ell) -> Fraction:
    l = _ell(ell)
    return {"L": Fraction(2), "P": l + 1, "G": Fraction(3, 2), "H": l + Fraction(1, 2)}[kind]


def _in_lattice(kind: str, ell: Fraction, s: Fraction) -> bool:
    if s.denominator not in (1, 2):
        return False
    shifted = s - ell if kind in ("P", "H") else s
    return shifted.denominator == 1


@lru_cache(maxsize=None)
def gen_binom(x: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out = out * (x - i) / (i + 1)
    return out


@dataclass(frozen=True)
class ModeBracket:
    value: Element
    z_exponent: Fraction
    w_exponent: Fraction


def mode_bracket_series(A: FieldLabel, B: FieldLabel, ell, window) -> dict[tuple[Fraction, Fraction], ModeBracket]:
    """All [A_m, B_n] with |m|, |n| <= window, symbolic c1 and c2."""
    if HalfInt.of(window) < HalfInt.of(MAX_POLE):
        raise WindowTooSmall(f"mode window {window} is smaller than {MAX_POLE}")
    params = AlgebraParams(_ell(ell))
    out = {}
    for m in A.modes(window):
        for n in B.modes(window):
            val = bracket(params, Element.gen(A.gen(m)), Element.gen(B.gen(n)))
            out[(m, n)] = ModeBracket(val, A.z_exponent(m), B.z_exponent(n))
    return out


# a term of an OPE coefficient: (symbol, derivative order); symbol is a field kind or "c1"/"c2"
Term = tuple[str, int]


def term_weight(term: Term, ell) -> Fraction:
    sym, d = term
    if sym in ("c1", "c2"):
        return Fraction(0)
    return field_weight(sym, ell) + d


def default_candidates(ell) -> list[Term]:
    out: list[Term] = [("c1", 0)]
    if _ell(ell) == 1:
        out.append(("c2", 0))
    for k in FIELD_KINDS:
        out += [(k, 0), (k, 1)]
    return out


_TERM_ORDER = {t: i for i, t in enumerate([("c1", 0), ("c2", 0)] + [(k, d) for k in FIELD_KINDS for d in (0, 1)])}


@dataclass
class OPETable:
    A: str
    B: str
    ell: Fraction
    poles: dict[int, dict[Term, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        self.ell = _ell(self.ell)
        self.poles = {
            p: dict(sorted(((t, c) for t, c in terms.items() if c), key=lambda tc: _TERM_ORDER[tc[0]]))
            for p, terms in sorted(self.poles.items(), reverse=True)
        }
        self.poles = {p: t for p, t in self.poles.items() if t}

    @property
    def max_pole(self) -> int:
        return max(self.poles, default=0)

    def simple(self) -> dict[int, dict[str, Fraction]]:
        """Poles as {order: {"L": 2, "dL": 1, "c1": 6}} for easy comparison."""
        return {p: {("d" if d else "") + s: c for (s, d), c in terms.items()} for p, terms in self.poles.items()}

    def weight_violations(self) -> list[tuple[int, Term]]:
        hA, hB = field_weight(self.A, self.ell), field_weight(self.B, self.ell)
        return [
            (p, t)
            for p, terms in self.poles.items()
            for t in terms
            if term_weight(t, self.ell) != hA + hB - p
        ]

    def mode_value(self, m: Fraction, n: Fraction) -> Element:
        """[A_m, B_n] as predicted by the table."""
        hA, hB = field_weight(self.A, self.ell), field_weight(self.B, self.ell)
        out = Element()
        for pole, terms in self.poles.items():
            j = pole - 1
            b = gen_binom(m + hA - 1, j)
            for term, c in terms.items():
                contrib = _contribution(term, self.ell, m + n + hA + hB - 1 - j)
                if contrib:
                    out = out + contrib * (b * c)
        return out


@lru_cache(maxsize=None)
def _contribution(term: Term, ell: Fraction, shifted: Fraction) -> Element | None:
    """Mode of ``term`` at index shifted - weight(term), or None if it does not exist."""
    sym, d = term
    if sym in ("c1", "c2"):
        if d or shifted != 0:
            return None
        return Element.gen(BasisGen.make(sym.upper()))
    h = field_weight(sym, ell)
    s = shifted - h - d
    if not _in_lattice(sym, ell, s):
        return None
    coeff = Fraction(1)
    for k in range(d):
        # d/dw of sum F_s w^(-s-h-k) brings down -(s+h+k)
        coeff *= -(s + h + k)
    if not coeff:
        return None
    return Element.gen(BasisGen.make(sym, s), coeff)


@dataclass
class FitResult:
    table: OPETable
    rows: int
    unknowns: int
    free: int
    residual: int


def fit_ope(A, B, ell, window=8, candidates: Iterable[Term] | None = None) -> OPETable:
    """Exact fit of the singular OPE; raises FitInconsistent or AnsatzInsufficient."""
    return fit_ope_detailed(A, B, ell, window, candidates).table


def fit_ope_detailed(A, B, ell, window=8, candidates: Iterable[Term] | None = None) -> FitResult:
    l = _ell(ell)
    A = A if isinstance(A, FieldLabel) else FieldLabel(A, l)
    B = B if isinstance(B, FieldLabel) else FieldLabel(B, l)
    if HalfInt.of(window) < HalfInt.of(MAX_POLE + 3):
        raise WindowTooSmall(f"fit window {window} cannot overdetermine poles up to {MAX_POLE}")
    cands = list(default_candidates(l) if candidates is None else candidates)
    columns = [(pole, t) for pole in range(MAX_POLE, 0, -1) for t in cands]
    series = mode_bracket_series(A, B, l, window)

    produced_kinds = {g.kind for mb in series.values() for g, _ in mb.value.items()}
    available = {t[0].upper() if t[0] in ("c1", "c2") else t[0] for t in cands}
    missing = sorted(produced_kinds - available)
    if missing:
        raise AnsatzInsufficient(f"no candidate field can produce {', '.join(missing)} in {A.kind}{B.kind}")

    hA, hB = A.weight, B.weight
    row_map: dict[tuple, dict[int, Fraction]] = {}
    rhs: dict[tuple, Fraction] = {}
    for (m, n), mb in series.items():
        base = m + n + hA + hB - 1
        for col, (pole, term) in enumerate(columns):
            j = pole - 1
            b = gen_binom(m + hA - 1, j)
            if not b:
                continue
            contrib = _contribution(term, l, base - j)
            if contrib is None:
                continue
            for g, c in contrib.items():
                row = row_map.setdefault((m, n, g), {})
                row[col] = row.get(col, 0) + b * c
        for g, c in mb.value.items():
            rhs[(m, n, g)] = c
            row_map.setdefault((m, n, g), {})
    keys = sorted(row_map, key=lambda k: (k[0], k[1], k[2].sort_key()))
    rows = [({c: v for c, v in row_map[k].items() if v}, rhs.get(k, Fraction(0))) for k in keys]
    for (row, b), k in zip(rows, keys):
        if not row and b:
            raise AnsatzInsufficient(f"no candidate contributes to {k[2]} in [{A.kind}_{k[0]}, {B.kind}_{k[1]}]")
    sol = solve(rows, len(columns))
    if sol is None:
        raise FitInconsistent(f"mode brackets of {A.kind} and {B.kind} admit no OPE in the candidate span")
    particular, null = sol
    poles: dict[int, dict[Term, Fraction]] = {}
    for col, v in particular.items():
        pole, term = columns[col]
        poles.setdefault(pole, {})[term] = v
    table = OPETable(A.kind, B.kind, l, poles)
    residual = sum(1 for (m, n), mb in series.items() if table.mode_value(m, n) != mb.value)
    if residual:
        raise FitInconsistent(f"fitted table misses {residual} mode brackets")
    return FitResult(table, len(rows), len(columns), len(null), residual)


def round_trip_residual(table: OPETable, window=6) -> int:
    """Number of mode brackets on the window that the table fails to reproduce."""
    A, B = FieldLabel(table.A, table.ell), FieldLabel(table.B, table.ell)
    series = mode_bracket_series(A, B, table.ell, window)
    return sum(1 for (m, n), mb in series.items() if table.mode_value(m, n) != mb.value)


def _q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _text_term(term: Term) -> str:
    sym, d = term
    if sym in ("c1", "c2"):
        return f"c_{sym[1]}"
    return f"∂_w {sym}(w)" if d else f"{sym}(w)"


def _latex_term(term: Term) -> str:
    sym, d = term
    if sym in ("c1", "c2"):
        return f"c_{sym[1]}"
    return f"\\partial_w {sym}(w)" if d else f"{sym}(w)"


def _join(pieces: list[tuple[Fraction, str]], coeff_fmt) -> str:
    out = []
    for i, (c, body) in enumerate(pieces):
        mag = abs(c)
        s = body if mag == 1 else f"{coeff_fmt(mag)} {body}"
        if i == 0:
            out.append(s if c > 0 else f"-{s}")
        else:
            out.append(("+ " if c > 0 else "- ") + s)
    return " ".join(out)


def _latex_q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def render_ope(table: OPETable, format: str = "text") -> str:
    head = f"{table.A}(z){table.B}(w)"
    if format == "json":
        return json.dumps(ope_to_json(table), sort_keys=True)
    if format == "text":
        if not table.poles:
            return f"{head} ~ 0"
        parts = []
        for pole, terms in table.poles.items():
            num = _join([(c, _text_term(t)) for t, c in terms.items()], _q)
            if len(terms) > 1:
                num = f"({num})"
            den = "(z-w)" if pole == 1 else f"(z-w)^{pole}"
            parts.append(f"{num}/{den}")
        return f"{head} ~ " + " + ".join(parts)
    if format == "latex":
        if not table.poles:
            return f"{head} \\sim 0"
        parts = []
        for pole, terms in table.poles.items():
            num = _join([(c, _latex_term(t)) for t, c in terms.items()], _latex_q)
            den = "z-w" if pole == 1 else f"(z-w)^{{{pole}}}"
            parts.append(f"\\frac{{{num}}}{{{den}}}")
        return f"{head} \\sim " + " + ".join(parts)
    raise ValueError(f"unknown format {format!r}")


def ope_to_json(table: OPETable) -> dict:
    return {
        "schema": 1,
        "A": table.A,
        "B": table.B,
        "ell": _q(table.ell),
        "poles": {
            str(p): [{"field": s, "derivative": d, "coeff": _q(c)} for (s, d), c in terms.items()]
            for p, terms in table.poles.items()
        },
    }
