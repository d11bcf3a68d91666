"""Tensor-density model of the superalgebra, its central cocycles and the coadjoint action.

An element is a quadruple of Laurent coefficients (f, g, gamma, chi) of
density degrees (1, l, 1/2, l - 1/2) plus two central components. Its regular
dual is (alpha, beta, a, b) of degrees (-2, -l-1, -3/2, -l-1/2) plus
(kappa1, kappa2), paired by the circle integral of alpha f + beta g + a gamma +
b chi plus kappa1 c1 + kappa2 c2. Integrals are tau times the residue, see
:mod:`sgca.laurent`.

Conventions that had to be pinned down by the defining relations (the G-G and
G-H cocycle normalization, the central terms of the coadjoint action) are
recorded in docs/CONVENTIONS.md.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from sgca.algebra import AlgebraParams, BasisGen, Element, bracket_gens
from sgca.errors import DomainError, FractionalExponentError
from sgca.halfint import HalfInt
from sgca.laurent import ExtScalar, Laurent

HALF = Fraction(1, 2)


def contour_integral(p: Laurent) -> ExtScalar:
    """Integral over the circle: tau times the coefficient of 1/t."""
    for k in p.twice_exponents():
        if k % 2:
            raise FractionalExponentError(f"integrand has a t^{Fraction(k, 2)} term; no single-valued integral")
    return p.residue() * ExtScalar.tau()


@dataclass(frozen=True)
class LaurentDensity:
    """phi(t) (dt)^(-degree)."""

    degree: Fraction
    coeff: Laurent

    def lie_derivative(self, f: Laurent) -> LaurentDensity:
        """Action of the vector field f d/dt: f phi' - degree f' phi."""
        return LaurentDensity(self.degree, f * self.coeff.derivative() - f.derivative() * self.coeff * self.degree)


def _ell(ell) -> Fraction:
    return HalfInt.of(ell).value


def _delta(ell) -> int:
    return 1 if _ell(ell) == 1 else 0


def _check_coset(name: str, p: Laurent, half: bool) -> None:
    for k in p.twice_exponents():
        if (k % 2 == 1) != half:
            want = "half-integer" if half else "integer"
            raise DomainError(f"component {name} needs {want} exponents, got t^{Fraction(k, 2)}")


def _laurent(v) -> Laurent:
    if v is None:
        return Laurent()
    if isinstance(v, Laurent):
        return v
    return Laurent({0: v})


@dataclass(frozen=True)
class SuperCurrentElement:
    """(f, g, gamma, chi; c1, c2) for a fixed l.

    f, g carry integer exponents and gamma, chi half-integer ones, which is
    what the mode dictionary produces for every l.
    """

    ell: Fraction
    f: Laurent = field(default_factory=Laurent)
    g: Laurent = field(default_factory=Laurent)
    gamma: Laurent = field(default_factory=Laurent)
    chi: Laurent = field(default_factory=Laurent)
    c1: ExtScalar = field(default_factory=ExtScalar)
    c2: ExtScalar = field(default_factory=ExtScalar)

    def __post_init__(self):
        object.__setattr__(self, "ell", _ell(self.ell))
        for name in ("f", "g", "gamma", "chi"):
            object.__setattr__(self, name, _laurent(getattr(self, name)))
        for name in ("c1", "c2"):
            object.__setattr__(self, name, ExtScalar.coerce(getattr(self, name)))
        _check_coset("f", self.f, False)
        _check_coset("g", self.g, False)
        _check_coset("gamma", self.gamma, True)
        _check_coset("chi", self.chi, True)
        if self.c2 and self.ell != 1:
            raise DomainError("the c2 component exists only for l = 1")

    def densities(self) -> tuple[LaurentDensity, ...]:
        l = self.ell
        return (
            LaurentDensity(Fraction(1), self.f),
            LaurentDensity(l, self.g),
            LaurentDensity(HALF, self.gamma),
            LaurentDensity(l - HALF, self.chi),
        )

    @property
    def parities(self) -> set[int]:
        out = set()
        if self.f or self.g or self.c1 or self.c2:
            out.add(0)
        if self.gamma or self.chi:
            out.add(1)
        return out or {0}

    def even_part(self) -> SuperCurrentElement:
        return SuperCurrentElement(self.ell, self.f, self.g, c1=self.c1, c2=self.c2)

    def odd_part(self) -> SuperCurrentElement:
        return SuperCurrentElement(self.ell, gamma=self.gamma, chi=self.chi)

    def __add__(self, o: SuperCurrentElement) -> SuperCurrentElement:
        return SuperCurrentElement(
            self.ell, self.f + o.f, self.g + o.g, self.gamma + o.gamma, self.chi + o.chi, self.c1 + o.c1, self.c2 + o.c2
        )

    def __neg__(self) -> SuperCurrentElement:
        return SuperCurrentElement(self.ell, -self.f, -self.g, -self.gamma, -self.chi, -self.c1, -self.c2)

    def __sub__(self, o: SuperCurrentElement) -> SuperCurrentElement:
        return self + (-o)

    def scale(self, s) -> SuperCurrentElement:
        return SuperCurrentElement(
            self.ell, self.f * s, self.g * s, self.gamma * s, self.chi * s, self.c1 * s, self.c2 * s
        )

    def __str__(self) -> str:
        return (
            f"(f={self.f}, g={self.g}, gamma={self.gamma}, chi={self.chi}; c1={self.c1}, c2={self.c2})"
        )


@dataclass(frozen=True)
class DualVector:
    ell: Fraction
    alpha: Laurent = field(default_factory=Laurent)
    beta: Laurent = field(default_factory=Laurent)
    a: Laurent = field(default_factory=Laurent)
    b: Laurent = field(default_factory=Laurent)
    kappa1: ExtScalar = field(default_factory=ExtScalar)
    kappa2: ExtScalar = field(default_factory=ExtScalar)

    def __post_init__(self):
        object.__setattr__(self, "ell", _ell(self.ell))
        for name in ("alpha", "beta", "a", "b"):
            object.__setattr__(self, name, _laurent(getattr(self, name)))
        for name in ("kappa1", "kappa2"):
            object.__setattr__(self, name, ExtScalar.coerce(getattr(self, name)))
        _check_coset("alpha", self.alpha, False)
        _check_coset("beta", self.beta, False)
        _check_coset("a", self.a, True)
        _check_coset("b", self.b, True)

    def densities(self) -> tuple[LaurentDensity, ...]:
        l = self.ell
        return (
            LaurentDensity(Fraction(-2), self.alpha),
            LaurentDensity(-l - 1, self.beta),
            LaurentDensity(Fraction(-3, 2), self.a),
            LaurentDensity(-l - HALF, self.b),
        )

    def __add__(self, o: DualVector) -> DualVector:
        return DualVector(
            self.ell, self.alpha + o.alpha, self.beta + o.beta, self.a + o.a, self.b + o.b,
            self.kappa1 + o.kappa1, self.kappa2 + o.kappa2,
        )

    def __str__(self) -> str:
        return (
            f"(alpha={self.alpha}, beta={self.beta}, a={self.a}, b={self.b}; "
            f"kappa1={self.kappa1}, kappa2={self.kappa2})"
        )


def _bracket_even_even(x, y):
    l = x.ell
    return SuperCurrentElement(
        l,
        f=x.f * y.f.derivative() - x.f.derivative() * y.f,
        g=x.f * y.g.derivative() - x.f.derivative() * y.g * l - (y.f * x.g.derivative() - y.f.derivative() * x.g * l),
        c1=contour_integral(x.f.derivative() * y.f.derivative(2)),
        c2=(contour_integral(x.f.derivative() * y.g.derivative(2)) - contour_integral(y.f.derivative() * x.g.derivative(2)))
        if l == 1 else ExtScalar(),
    )


def _bracket_even_odd(x, y):
    l = x.ell
    return SuperCurrentElement(
        l,
        gamma=x.f * y.gamma.derivative() - x.f.derivative() * y.gamma * HALF,
        chi=x.f * y.chi.derivative() - x.f.derivative() * y.chi * (l - HALF)
        + x.g * y.gamma.derivative() * l - x.g.derivative() * y.gamma * HALF,
    )


def _bracket_odd_odd(x, y):
    l = x.ell
    return SuperCurrentElement(
        l,
        f=x.gamma * y.gamma * -2,
        g=(x.gamma * y.chi + y.gamma * x.chi) * -2,
        c1=contour_integral(x.gamma.derivative() * y.gamma.derivative()) * -4,
        c2=(contour_integral(x.gamma.derivative() * y.chi.derivative()) + contour_integral(y.gamma.derivative() * x.chi.derivative())) * -4
        if l == 1 else ExtScalar(),
    )


def current_bracket(x: SuperCurrentElement, y: SuperCurrentElement, ell=None) -> SuperCurrentElement:
    """Graded bracket, extended bilinearly over the even and odd parts.

    Central components of the inputs are ignored (they are central).
    """
    l = x.ell if ell is None else _ell(ell)
    if x.ell != l or y.ell != l:
        raise DomainError("elements built for different l")
    xe, xo, ye, yo = x.even_part(), x.odd_part(), y.even_part(), y.odd_part()
    out = _bracket_even_even(xe, ye)
    out = out + _bracket_even_odd(xe, yo)
    out = out - _bracket_even_odd(ye, xo)
    out = out + _bracket_odd_odd(xo, yo)
    return out


COCYCLE_SLOTS = {
    "LL": ("f", "f", "c1"),
    "LP": ("f", "g", "c2"),
    "GG": ("gamma", "gamma", "c1"),
    "GH": ("gamma", "chi", "c2"),
}


def cocycle(ell, slot: str, u: Laurent, v: Laurent) -> ExtScalar:
    """Central part of the bracket of u and v placed in the components named by ``slot``."""
    if slot not in COCYCLE_SLOTS:
        raise ValueError(f"unknown cocycle slot {slot!r}; expected one of {', '.join(COCYCLE_SLOTS)}")
    cu, cv, out = COCYCLE_SLOTS[slot]
    l = _ell(ell)
    x = SuperCurrentElement(l, **{cu: u})
    y = SuperCurrentElement(l, **{cv: v})
    return getattr(current_bracket(x, y), out)


# mode dictionary: L_n <-> f = -t^{n+1}, P_r <-> g = -t^{r+l}, G_n <-> gamma = -t^{n+1/2},
# H_r <-> chi = -t^{r+l-1/2}, C_i <-> c_i = 1

def from_generator(ell, g: BasisGen) -> SuperCurrentElement:
    l = _ell(ell)
    AlgebraParams(l).check_gen(g)
    if g.kind == "C1":
        return SuperCurrentElement(l, c1=1)
    if g.kind == "C2":
        return SuperCurrentElement(l, c2=1)
    i = g.index
    if g.kind == "L":
        return SuperCurrentElement(l, f=Laurent.monomial(i + 1, -1))
    if g.kind == "P":
        return SuperCurrentElement(l, g=Laurent.monomial(i + l, -1))
    if g.kind == "G":
        return SuperCurrentElement(l, gamma=Laurent.monomial(i + HALF, -1))
    return SuperCurrentElement(l, chi=Laurent.monomial(i + l - HALF, -1))


def from_element(ell, x: Element, central_unit: ExtScalar | None = None) -> SuperCurrentElement:
    """Image of an algebra element; central generators are scaled by ``central_unit``."""
    unit = ExtScalar(1) if central_unit is None else central_unit
    out = SuperCurrentElement(_ell(ell))
    for g, c in x.items():
        img = from_generator(ell, g)
        if g.is_central:
            img = img.scale(unit)
        out = out + img.scale(c)
    return out


@dataclass
class ModeReport:
    ell: HalfInt
    window: HalfInt
    checked: int = 0
    normalizations: set = field(default_factory=set)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.normalizations <= {str(ExtScalar.tau())}

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "window": str(self.window),
            "checked": self.checked,
            "central_normalizations": sorted(self.normalizations),
            "mismatches": [[str(a), str(b)] for a, b in self.mismatches],
            "ok": self.ok,
        }


def mode_correspondence_check(ell, window) -> ModeReport:
    """Current brackets of dictionary images against the abstract brackets.

    Every central coefficient produced by the integrals is divided by the
    abstract one; the distinct ratios are reported (one value, tau, means a
    single global normalization).
    """
    l, window = HalfInt.of(ell), HalfInt.of(window)
    params = AlgebraParams(l)
    gens = params.generators(window)
    report = ModeReport(l, window)
    tau = ExtScalar.tau()
    for a in gens:
        for b in gens:
            got = current_bracket(from_generator(l, a), from_generator(l, b))
            expected = Element()
            for gen, c in bracket_gens(params, a, b):
                expected = expected + Element.gen(gen, c)
            want = from_element(l, expected, tau)
            report.checked += 1
            for name, ours in (("c1", got.c1), ("c2", got.c2)):
                ref = expected.coeff(BasisGen.make(name.upper()))
                if ref and ours:
                    report.normalizations.add(str(ours * Fraction(1, ref)))
            if got != want:
                report.mismatches.append((a, b))
    return report


def pair(x: DualVector, X: SuperCurrentElement) -> ExtScalar:
    integrand = x.alpha * X.f + x.beta * X.g + x.a * X.gamma + x.b * X.chi
    return contour_integral(integrand) + x.kappa1 * X.c1 + x.kappa2 * X.c2


def coadjoint(X: SuperCurrentElement, x: DualVector, ell=None) -> DualVector:
    """ad*_X applied to x, defined by <ad*_X x, Z> = <x, [Z, X]>.

    The bosonic part acts on each dual density by the Lie derivative of its
    degree; the central components of the output are zero.
    """
    l = X.ell if ell is None else _ell(ell)
    d = _delta(l)
    k1, k2 = x.kappa1, x.kappa2
    f, g, gm, ch = X.f, X.g, X.gamma, X.chi
    al, be, a, b = x.alpha, x.beta, x.a, x.b
    dal, dbe, da, db = x.densities()

    # L_f: Lie derivative on every dual density, plus the Gelfand-Fuchs term
    out_al = dal.lie_derivative(f).coeff - f.derivative(3) * k1
    out_be = dbe.lie_derivative(f).coeff - f.derivative(3) * (k2 * d)
    out_a = da.lie_derivative(f).coeff
    out_b = db.lie_derivative(f).coeff
    # P_g
    out_al += g * be.derivative() * l + g.derivative() * be * (l + 1) - g.derivative(3) * (k2 * d)
    out_a += g * b.derivative() * l + g.derivative() * b * (l + HALF)
    # G_gamma
    out_al += gm * a.derivative() * HALF + gm.derivative() * a * Fraction(3, 2)
    out_be += gm * b.derivative() * HALF + gm.derivative() * b * (l + HALF)
    out_a += gm * al * -2 + gm.derivative(2) * (k1 * 4)
    out_b += gm * be * -2 + gm.derivative(2) * (k2 * (4 * d))
    # H_chi
    out_al += ch * b.derivative() * (l - HALF) + ch.derivative() * b * (l + HALF)
    out_a += ch * be * -2 + ch.derivative(2) * (k2 * (4 * d))
    return DualVector(l, out_al, out_be, out_a, out_b)


def _random_laurent(rng: random.Random, half: bool, max_degree: int, terms: int = 2) -> Laurent:
    off = HALF if half else Fraction(0)
    exps = [Fraction(k) + off for k in range(-max_degree - 1, max_degree + 1)]
    exps = [e for e in exps if abs(e) <= max_degree]
    out = Laurent()
    for e in rng.sample(exps, k=min(terms, len(exps))):
        out = out + Laurent.monomial(e, Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)))
    return out


def _dual_laurent(rng, half: bool, max_degree: int) -> Laurent:
    # dual densities pair with degree <= max_degree coefficients, so shift the range down
    off = HALF if half else Fraction(0)
    exps = [Fraction(k) + off for k in range(-2 * max_degree - 4, 2 * max_degree + 2)]
    out = Laurent()
    for e in rng.sample(exps, k=4):
        out = out + Laurent.monomial(e, Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)))
    return out


FAMILIES = ("L", "P", "G", "H", "C")


def random_family_element(rng: random.Random, ell, kind: str, max_degree: int) -> SuperCurrentElement:
    l = _ell(ell)
    if kind == "L":
        return SuperCurrentElement(l, f=_random_laurent(rng, False, max_degree))
    if kind == "P":
        return SuperCurrentElement(l, g=_random_laurent(rng, False, max_degree))
    if kind == "G":
        return SuperCurrentElement(l, gamma=_random_laurent(rng, True, max_degree))
    if kind == "H":
        return SuperCurrentElement(l, chi=_random_laurent(rng, True, max_degree))
    return SuperCurrentElement(l, c1=rng.randint(-3, 3), c2=rng.randint(-3, 3) if l == 1 else 0)


def random_general_element(rng: random.Random, ell, max_degree: int) -> SuperCurrentElement:
    out = SuperCurrentElement(_ell(ell))
    for kind in FAMILIES:
        out = out + random_family_element(rng, ell, kind, max_degree)
    return out


def random_dual(rng: random.Random, ell, max_degree: int) -> DualVector:
    l = _ell(ell)
    return DualVector(
        l,
        _dual_laurent(rng, False, max_degree),
        _dual_laurent(rng, False, max_degree),
        _dual_laurent(rng, True, max_degree),
        _dual_laurent(rng, True, max_degree),
        kappa1=Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
        kappa2=Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if l == 1 else 0,
    )


@dataclass
class CoadjointReport:
    ell: HalfInt
    trials: int
    max_degree: int
    seed: int
    checked: int = 0
    by_family: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "trials": self.trials,
            "max_degree": self.max_degree,
            "seed": self.seed,
            "checked": self.checked,
            "by_family": dict(sorted(self.by_family.items())),
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def verify_coadjoint(ell, trials: int = 200, max_degree: int = 4, seed: int = 0) -> CoadjointReport:
    """<ad*_X x, Z> = <x, [Z, X]> for random X of each family, general Z and x.

    Each trial draws one X per family (L, P, G, H and central), so the odd
    branches of the bracket are exercised every time.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    l = _ell(ell)
    rng = random.Random(seed)
    report = CoadjointReport(HalfInt.of(l), trials, max_degree, seed)
    for trial in range(trials):
        Z = random_general_element(rng, l, max_degree)
        x = random_dual(rng, l, max_degree)
        for kind in FAMILIES:
            X = random_family_element(rng, l, kind, max_degree)
            lhs = pair(coadjoint(X, x, l), Z)
            rhs = pair(x, current_bracket(Z, X, l))
            report.checked += 1
            report.by_family[kind] = report.by_family.get(kind, 0) + 1
            if lhs != rhs:
                report.mismatches.append({"trial": trial, "family": kind, "lhs": str(lhs), "rhs": str(rhs)})
    return report
