"""Laurent polynomials in t with half-integer exponents and tau-extended coefficients.

``tau`` is a formal invertible unit standing for 2*pi*i, so a contour
integral over the circle is tau times the residue and every factor i/(2*pi)
is -1/tau. Coefficients are :class:`ExtScalar`, finite Laurent sums in tau
over the rationals.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from sgca.errors import ParseError

Number = Union[int, Fraction]


def _q(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


class ExtScalar:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Number] | Number | None = None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        self.terms: dict[int, Fraction] = {
            int(k): v if type(v) is Fraction else Fraction(v) for k, v in terms.items() if v
        }

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> ExtScalar:
        # trusted internal constructor: keys are ints, values nonzero Fractions
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def coerce(cls, v) -> ExtScalar:
        return v if isinstance(v, ExtScalar) else cls(v)

    @classmethod
    def tau(cls, power: int = 1) -> ExtScalar:
        return cls({power: 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExtScalar(other)
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other) -> ExtScalar:
        other = ExtScalar.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            new = out.get(k, 0) + v
            if new:
                out[k] = new
            else:
                del out[k]
        return ExtScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> ExtScalar:
        return ExtScalar._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> ExtScalar:
        return self + (-ExtScalar.coerce(other))

    def __rsub__(self, other) -> ExtScalar:
        return ExtScalar.coerce(other) - self

    def __mul__(self, other) -> ExtScalar:
        if isinstance(other, Laurent):
            return NotImplemented
        other = ExtScalar.coerce(other)
        if len(self.terms) == 1 and len(other.terms) == 1:
            (k1, v1), = self.terms.items()
            (k2, v2), = other.terms.items()
            return ExtScalar._raw({k1 + k2: v1 * v2})
        out: dict[int, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return ExtScalar(out)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return set(self.terms) <= {0}

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a plain rational")
        return self.terms.get(0, Fraction(0))

    def tau_coefficient(self, power: int) -> Fraction:
        return self.terms.get(power, Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {str(k): _q(v) for k, v in sorted(self.terms.items())}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (k, v) in enumerate(sorted(self.terms.items(), reverse=True)):
            unit = "" if k == 0 else "tau" if k == 1 else f"tau^{k}"
            mag = abs(v)
            if not unit:
                body = _q(mag)
            elif mag == 1:
                body = unit
            else:
                body = f"{_q(mag)}*{unit}"
            if i == 0:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__


class Laurent:
    """Finite sum of c_e t^e with e in (1/2)Z and c_e an ExtScalar.

    Exponents are stored as 2e (plain ints hash much faster than Fractions);
    ``terms`` gives the usual exponent-keyed view.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: dict | None = None):
        out: dict[int, ExtScalar] = {}
        for e, c in (terms or {}).items():
            e2 = 2 * Fraction(e)
            if e2.denominator != 1:
                raise ValueError(f"exponent {e} is not a half-integer")
            c = ExtScalar.coerce(c)
            if c:
                out[int(e2)] = out[int(e2)] + c if int(e2) in out else c
        self._t = {k: c for k, c in out.items() if c}

    @classmethod
    def _raw(cls, twice_terms: dict[int, ExtScalar]) -> Laurent:
        obj = cls.__new__(cls)
        obj._t = {e: c for e, c in twice_terms.items() if c}
        return obj

    @classmethod
    def monomial(cls, exponent, coeff=1) -> Laurent:
        return cls({Fraction(exponent): coeff})

    @classmethod
    def zero(cls) -> Laurent:
        return cls()

    @property
    def terms(self) -> dict[Fraction, ExtScalar]:
        return {Fraction(k, 2): c for k, c in self._t.items()}

    def twice_exponents(self) -> list[int]:
        return sorted(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Laurent({0: other})
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(tuple(sorted((e, hash(c)) for e, c in self._t.items())))

    def __add__(self, other) -> Laurent:
        if not isinstance(other, Laurent):
            other = Laurent({0: other})
        out = dict(self._t)
        for e, c in other._t.items():
            out[e] = out[e] + c if e in out else c
        return Laurent._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return Laurent._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other) -> Laurent:
        return self + (-other)

    def __rsub__(self, other) -> Laurent:
        return (-self) + other

    def __mul__(self, other) -> Laurent:
        if not isinstance(other, Laurent):
            s = ExtScalar.coerce(other)
            return Laurent._raw({e: c * s for e, c in self._t.items()})
        out: dict[int, ExtScalar] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                prod = c1 * c2
                k = e1 + e2
                out[k] = out[k] + prod if k in out else prod
        return Laurent._raw(out)

    __rmul__ = __mul__

    def derivative(self, order: int = 1) -> Laurent:
        out = self._t
        for _ in range(order):
            out = {e - 2: c * ExtScalar._raw({0: Fraction(e, 2)}) for e, c in out.items() if e}
        return Laurent._raw(out)

    def coefficient(self, exponent) -> ExtScalar:
        e2 = 2 * Fraction(exponent)
        if e2.denominator != 1:
            return ExtScalar()
        return self._t.get(int(e2), ExtScalar())

    def residue(self) -> ExtScalar:
        return self._t.get(-2, ExtScalar())

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, 2) for k in sorted(self._t)]

    def rational_terms(self) -> dict[Fraction, Fraction]:
        return {Fraction(k, 2): c.rational() for k, c in self._t.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, e in enumerate(sorted(self.terms, reverse=True)):
            c = self.terms[e]
            mono = "" if e == 0 else "t" if e == 1 else f"t^{_q(e)}"
            if c.is_rational():
                v = c.rational()
                neg, mag = v < 0, abs(v)
                if not mono:
                    body = _q(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{_q(mag)}*{mono}"
            else:
                neg = False
                body = f"({c})" + (f"*{mono}" if mono else "")
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    __repr__ = __str__


_LAURENT_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<t>t)|(?P<op>[-+*^()]))")


def parse_laurent(text: str) -> Laurent:
    """Parse literals such as ``t^3 - 2t^-1``, ``3/2*t^(-1/2)`` or ``t^-1/2 + 5``.

    A number directly after ``^`` (optionally signed) is read as the whole
    exponent, so ``t^-1/2`` is t to the power -1/2.
    """
    toks: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _LAURENT_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = toks[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want}", text, tok[2])
        i += 1
        return tok

    def exponent() -> Fraction:
        sign = 1
        if peek()[1] == "(":
            take(value="(")
            if peek()[1] in "+-" and peek()[0] == "op":
                sign = -1 if take()[1] == "-" else 1
            v = Fraction(take("num")[1])
            take(value=")")
            return sign * v
        if peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        return sign * Fraction(take("num")[1])

    result = Laurent()
    first = True
    if peek()[0] == "end":
        raise ParseError("empty Laurent polynomial", text, 0)
    while peek()[0] != "end":
        sign = 1
        if peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-'", text, peek()[2])
        first = False
        coeff = Fraction(1)
        have_coeff = False
        if peek()[0] == "num":
            coeff = Fraction(take()[1])
            have_coeff = True
            if peek()[1] == "*":
                take()
                if peek()[0] != "t":
                    raise ParseError("expected 't' after '*'", text, peek()[2])
        exp = Fraction(0)
        if peek()[0] == "t":
            take()
            exp = Fraction(1)
            if peek()[1] == "^":
                take()
                exp = exponent()
        elif not have_coeff:
            raise ParseError("expected a number or 't'", text, peek()[2])
        if (2 * exp).denominator != 1:
            raise ParseError(f"exponent {exp} is not a half-integer", text, peek()[2])
        result = result + Laurent.monomial(exp, sign * coeff)
    return result
