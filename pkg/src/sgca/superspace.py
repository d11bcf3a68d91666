"""Graded differential operators on superspace and the vector-field realizations.

An operator is a finite sum of normal-ordered words

    coeff * t^a x^b th_{i1}...th_{ik} * d_t^p d_x^q d_{th_j1}...d_{th_jl}

with multipliers on the left and derivatives on the right. Exponents of t
live in (1/2)Z and are treated formally. Grassmann variables are numbered;
``names`` only matters for printing (``xi`` in the one-variable realization,
``alpha``/``beta`` in the two-variable one).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from sgca.algebra import AlgebraParams, BasisGen, Element, bracket_gens
from sgca.halfint import HalfInt
from sgca.laurent import Laurent

# key: (t_exp, x_pow, grassmann tuple, d_t order, d_x order, grassmann-derivative tuple)
Key = tuple[Fraction, int, tuple[int, ...], int, int, tuple[int, ...]]


def _sort_grassmann(seq: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted tuple for a product of anticommuting symbols; sign 0 if one repeats."""
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    if len(set(items)) != len(items):
        return 0, ()
    return sign, tuple(items)


def _falling(p, k: int):
    out = 1
    for i in range(k):
        out *= p - i
    return out


class SuperDiffOp:
    __slots__ = ("terms", "names")

    def __init__(self, terms: dict | None = None, names: tuple[str, ...] = ("xi",)):
        self.terms: dict[Key, Fraction] = {k: Fraction(v) for k, v in (terms or {}).items() if v}
        self.names = names

    # construction helpers
    @classmethod
    def monomial(cls, coeff=1, t=0, x=0, grass=(), dt=0, dx=0, dgrass=(), names=("xi",)) -> SuperDiffOp:
        s1, g = _sort_grassmann(grass)
        s2, dg = _sort_grassmann(dgrass)
        c = Fraction(coeff) * s1 * s2
        return cls({(Fraction(t), x, g, dt, dx, dg): c}, names)

    @classmethod
    def zero(cls, names=("xi",)) -> SuperDiffOp:
        return cls({}, names)

    def _new(self, terms) -> SuperDiffOp:
        return SuperDiffOp(terms, self.names)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SuperDiffOp):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: SuperDiffOp) -> SuperDiffOp:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    def __neg__(self) -> SuperDiffOp:
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: SuperDiffOp) -> SuperDiffOp:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SuperDiffOp):
            return compose(self, other)
        s = Fraction(other)
        return self._new({k: s * v for k, v in self.terms.items()})

    def __rmul__(self, scalar):
        s = Fraction(scalar)
        return self._new({k: s * v for k, v in self.terms.items()})

    @property
    def parities(self) -> set[int]:
        return {(len(k[2]) + len(k[5])) % 2 for k in self.terms} or {0}

    @property
    def parity(self) -> int:
        ps = self.parities
        if len(ps) != 1:
            raise ValueError("operator is not homogeneous")
        return ps.pop()

    def __str__(self) -> str:
        return format_op(self)

    __repr__ = __str__


def _push(word_rev: list[tuple[str, int]], t, x, grass):
    """Move derivatives (applied right to left) past one multiplier monomial.

    Yields (coeff, t, x, grass, passed derivatives in left-to-right order).
    """
    states = [(Fraction(1), Fraction(t), x, tuple(grass), ())]
    for kind, var in word_rev:
        nxt = []
        for c, tt, xx, gg, passed in states:
            if kind == "t":
                if tt:
                    nxt.append((c * tt, tt - 1, xx, gg, passed))
                nxt.append((c, tt, xx, gg, (("t", 0),) + passed))
            elif kind == "x":
                if xx:
                    nxt.append((c * xx, tt, xx - 1, gg, passed))
                nxt.append((c, tt, xx, gg, (("x", 0),) + passed))
            else:
                if var in gg:
                    pos = gg.index(var)
                    sgn = -1 if pos % 2 else 1
                    nxt.append((c * sgn, tt, xx, gg[:pos] + gg[pos + 1 :], passed))
                sgn = -1 if len(gg) % 2 else 1
                nxt.append((c * sgn, tt, xx, gg, (("g", var),) + passed))
        states = nxt
    return states


def compose(a: SuperDiffOp, b: SuperDiffOp) -> SuperDiffOp:
    """Operator product a*b, normal ordered."""
    out: dict[Key, Fraction] = {}
    names = a.names if len(a.names) >= len(b.names) else b.names
    for (ta, xa, ga, pa, qa, dga), ca in a.terms.items():
        word = [("t", 0)] * pa + [("x", 0)] * qa + [("g", v) for v in dga]
        for (tb, xb, gb, pb, qb, dgb), cb in b.terms.items():
            for c, tt, xx, gg, passed in _push(list(reversed(word)), tb, xb, gb):
                s1, gtot = _sort_grassmann(ga + gg)
                if not s1:
                    continue
                dt = pb + sum(1 for k, _ in passed if k == "t")
                dx = qb + sum(1 for k, _ in passed if k == "x")
                s2, dgtot = _sort_grassmann([v for k, v in passed if k == "g"] + list(dgb))
                if not s2:
                    continue
                key = (ta + tt, xa + xx, gtot, dt, dx, dgtot)
                out[key] = out.get(key, 0) + ca * cb * c * s1 * s2
    return SuperDiffOp(out, names)


def graded_commutator(a: SuperDiffOp, b: SuperDiffOp) -> SuperDiffOp:
    """[a, b] = ab - (-1)^{|a||b|} ba for homogeneous operators."""
    if not a or not b:
        return SuperDiffOp.zero(a.names)
    sign = -1 if (a.parity and b.parity) else 1
    return compose(a, b) - compose(b, a) * sign


def apply(op: SuperDiffOp, f: SuperDiffOp) -> SuperDiffOp:
    """Action on a superfunction, given as a derivative-free operator."""
    prod = compose(op, f)
    return SuperDiffOp({k: v for k, v in prod.terms.items() if not (k[3] or k[4] or k[5])}, prod.names)


def function(coeff=1, t=0, x=0, grass=(), names=("xi",)) -> SuperDiffOp:
    return SuperDiffOp.monomial(coeff, t=t, x=x, grass=grass, names=names)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_op(op: SuperDiffOp) -> str:
    if not op.terms:
        return "0"
    parts = []
    for i, key in enumerate(sorted(op.terms)):
        t, x, g, dt, dx, dg = key
        c = op.terms[key]
        factors = []
        if t:
            factors.append("t" if t == 1 else f"t^{_fmt_q(t)}" if t.denominator == 1 and t > 0 else f"t^({_fmt_q(t)})")
        if x:
            factors.append("x" if x == 1 else f"x^{x}")
        factors += [op.names[v] for v in g]
        if dt:
            factors.append("d_t" if dt == 1 else f"d_t^{dt}")
        if dx:
            factors.append("d_x" if dx == 1 else f"d_x^{dx}")
        factors += [f"d_{op.names[v]}" for v in dg]
        mag = abs(c)
        body = "*".join(factors)
        if not body:
            body = _fmt_q(mag)
        elif mag != 1:
            body = f"{_fmt_q(mag)}*{body}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# one Grassmann variable: xi = 0
XI = 0
_ONE = ("xi",)


def realize(ell, g: BasisGen) -> SuperDiffOp:
    """Vector-field realization with one Grassmann variable (central generators map to 0)."""
    params = AlgebraParams(HalfInt.of(ell))
    params.check_gen(g)
    if g.is_central:
        return SuperDiffOp.zero()
    lv = params.ell.value
    i = g.index
    m = SuperDiffOp.monomial
    if g.kind == "L":
        return (
            m(-1, t=i + 1, dt=1)
            + m(-(i + 1) * lv, t=i, x=1, dx=1)
            + m(-(i + 1) / 2, t=i, grass=(XI,), dgrass=(XI,))
        )
    if g.kind == "P":
        return m(Fraction(-1, 2), t=i + lv, dx=1)
    if g.kind == "G":
        h = Fraction(1, 2)
        return (
            m(-1, t=i + h, grass=(XI,), dt=1)
            + m(1, t=i + h, dgrass=(XI,))
            + m(-(2 * i + 1) * lv, t=i - h, x=1, grass=(XI,), dx=1)
        )
    return m(-1, t=i + lv - Fraction(1, 2), grass=(XI,), dx=1)


ALPHA, BETA = 0, 1
_TWO = ("alpha", "beta")


def realize_l1_two_grassmann(g: BasisGen) -> SuperDiffOp:
    """Realization of the l = 1 algebra on (t, x, alpha, beta)."""
    params = AlgebraParams(1)
    params.check_gen(g)
    if g.is_central:
        return SuperDiffOp.zero(_TWO)
    n = g.index
    h = Fraction(1, 2)

    def m(c, **kw):
        return SuperDiffOp.monomial(c, names=_TWO, **kw)

    if g.kind == "L":
        return (
            m(-1, t=n + 1, dt=1)
            + m(-(n + 1), t=n, x=1, dx=1)
            + m(-(n + 1) * h, t=n, grass=(ALPHA,), dgrass=(ALPHA,))
            + m(-(n + 1) * h, t=n, grass=(BETA,), dgrass=(BETA,))
            + m(-(n + 1) * h * n, t=n - 1, x=1, grass=(ALPHA,), dgrass=(BETA,))
        )
    if g.kind == "P":
        return m(-1, t=n + 1, dx=1) + m(-(n + 1) * h, t=n, grass=(ALPHA,), dgrass=(BETA,))
    if g.kind == "G":
        # overall sign chosen so that [P, G] and {G, H} close with the H below
        return (
            m(1, t=n + h, grass=(ALPHA,), dt=1)
            + m(1, t=n + h, grass=(BETA,), dx=1)
            + m(-1, t=n + h, dgrass=(ALPHA,))
            + m(n + h, t=n - h, x=1, grass=(ALPHA,), dx=1)
            + m(-(n + h), t=n - h, x=1, dgrass=(BETA,))
        )
    return m(-1, t=n + h, dgrass=(BETA,)) + m(1, t=n + h, grass=(ALPHA,), dx=1)


def realize_element(ell, x: Element, two_grassmann: bool = False) -> SuperDiffOp:
    names = _TWO if two_grassmann else _ONE
    out = SuperDiffOp.zero(names)
    for g, c in x.items():
        op = realize_l1_two_grassmann(g) if two_grassmann else realize(ell, g)
        out = out + op * c
    return out


@dataclass
class RepReport:
    ell: HalfInt
    window: HalfInt
    two_grassmann: bool
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "window": str(self.window),
            "two_grassmann": self.two_grassmann,
            "checked": self.checked,
            "mismatches": [
                {"pair": [str(a), str(b)], "commutator": str(lhs), "realized_bracket": str(rhs)}
                for (a, b), lhs, rhs in self.mismatches
            ],
            "ok": self.ok,
        }


def check_representation(ell, window, two_grassmann: bool = False) -> RepReport:
    """Compare graded commutators of realized generators with realized brackets (no centre)."""
    ell, window = HalfInt.of(ell), HalfInt.of(window)
    if two_grassmann and ell.twice_value != 2:
        raise ValueError("the two-Grassmann realization exists for l = 1 only")
    params = AlgebraParams(ell, central=(0, 0))
    gens = params.generators(window)
    real = realize_l1_two_grassmann if two_grassmann else (lambda g: realize(ell, g))
    ops = {g: real(g) for g in gens}
    report = RepReport(ell, window, two_grassmann)
    for a, b in itertools.product(gens, gens):
        lhs = graded_commutator(ops[a], ops[b])
        rhs = SuperDiffOp.zero(ops[a].names)
        for w, c in bracket_gens(params, a, b):
            if not w.is_central:
                rhs = rhs + real(w) * c
        report.checked += 1
        if lhs != rhs:
            report.mismatches.append(((a, b), lhs, rhs))
    return report


# current algebra: generators labelled by Laurent coefficients

def _coeffs(f: Laurent) -> dict[Fraction, Fraction]:
    return f.rational_terms()


def current_generator(ell, kind: str, f: Laurent) -> SuperDiffOp:
    """L_f, P_g, G_gamma or H_chi as a differential operator.

    Expanding f = -sum c_n t^{n+1} (and likewise for the other families) gives
    L_f = sum c_n L_n with the realization above.
    """
    lv = HalfInt.of(ell).value
    m = SuperDiffOp.monomial
    out = SuperDiffOp.zero()
    df = f.derivative()
    if kind == "L":
        for e, c in _coeffs(f).items():
            out = out + m(c, t=e, dt=1)
        for e, c in _coeffs(df).items():
            out = out + m(lv * c, t=e, x=1, dx=1) + m(c / 2, t=e, grass=(XI,), dgrass=(XI,))
    elif kind == "P":
        for e, c in _coeffs(f).items():
            out = out + m(c / 2, t=e, dx=1)
    elif kind == "G":
        for e, c in _coeffs(f).items():
            out = out + m(c, t=e, grass=(XI,), dt=1) + m(-c, t=e, dgrass=(XI,))
        for e, c in _coeffs(df).items():
            out = out + m(2 * lv * c, t=e, x=1, grass=(XI,), dx=1)
    elif kind == "H":
        for e, c in _coeffs(f).items():
            out = out + m(c, t=e, grass=(XI,), dx=1)
    else:
        raise ValueError(f"unknown current kind {kind!r}")
    return out


def current_bracket_families(ell):
    """The seven non-vanishing current-algebra brackets as (kind_a, kind_b, result_kind, coefficient rule)."""
    lv = HalfInt.of(ell).value
    h = Fraction(1, 2)
    return [
        ("L", "L", "L", lambda f, g: f * g.derivative() - f.derivative() * g),
        ("L", "P", "P", lambda f, g: f * g.derivative() - f.derivative() * g * lv),
        ("L", "G", "G", lambda f, g: f * g.derivative() - f.derivative() * g * h),
        ("L", "H", "H", lambda f, g: f * g.derivative() - f.derivative() * g * (lv - h)),
        ("P", "G", "H", lambda f, g: f * g.derivative() * lv - f.derivative() * g * h),
        ("G", "H", "P", lambda f, g: f * g * -2),
        ("G", "G", "L", lambda f, g: f * g * -2),
    ]


def current_exponent_coset(ell, kind: str) -> Fraction:
    """Offset of the t-exponents carried by each current family (0 or 1/2)."""
    return Fraction(0) if kind in ("L", "P") else Fraction(1, 2)


def random_laurent(rng: random.Random, offset: Fraction, max_degree: int, max_terms: int = 3) -> Laurent:
    exps = [Fraction(k) + offset for k in range(-max_degree, max_degree + 1)]
    exps = [e for e in exps if abs(e) <= max_degree]
    chosen = rng.sample(exps, k=rng.randint(1, min(max_terms, len(exps))))
    return Laurent({e: Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 3)) for e in chosen})


@dataclass
class CurrentReport:
    ell: HalfInt
    trials: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_current_algebra(ell, trials: int = 100, max_degree: int = 4, seed: int = 0) -> CurrentReport:
    """Each bracket family holds as an operator identity on random Laurent coefficients."""
    rng = random.Random(seed)
    report = CurrentReport(HalfInt.of(ell), trials)
    fams = current_bracket_families(ell)
    for _ in range(trials):
        for ka, kb, kr, rule in fams:
            f = random_laurent(rng, current_exponent_coset(ell, ka), max_degree)
            g = random_laurent(rng, current_exponent_coset(ell, kb), max_degree)
            lhs = graded_commutator(current_generator(ell, ka, f), current_generator(ell, kb, g))
            rhs = current_generator(ell, kr, rule(f, g))
            report.checked += 1
            if lhs != rhs:
                report.failures.append((ka, kb, str(f), str(g)))
    return report
