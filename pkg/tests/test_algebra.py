from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sgca.algebra import (
    C1,
    C2,
    AlgebraParams,
    BasisGen,
    Element,
    G,
    H,
    L,
    P,
    bracket,
    parse_element,
    super_jacobiator,
    verify_jacobi_window,
)
from sgca.errors import GradingError, IndexParityError, ParseError
from sgca.halfint import HalfInt

from strategies import ells, generators, homogeneous_elements, rationals

E = Element.gen
half = Fraction(1, 2)


def br(ell, x, y, **kw):
    return bracket(AlgebraParams(ell, **kw), x if isinstance(x, Element) else E(x), y if isinstance(y, Element) else E(y))


# fixed values from the defining relations

def test_virasoro_central_value():
    assert br(1, L(2), L(-2)) == Element({L(0): 4, C1: 6})
    assert str(br(1, L(2), L(-2))) == "4*L(0) + 6*c1"


@pytest.mark.parametrize("ell", ["0", "1/2", "1", "3/2", "2"])
def test_l0_acts_diagonally_on_p(ell):
    l = HalfInt.parse(ell)
    for k in range(-3, 4):
        r = Fraction(k) + l.value
        assert br(l, L(0), P(r)) == E(P(r), -r)


def test_gg_central_value():
    assert br(1, G(1), G(-1)) == Element({L(0): 2, C1: 3})


def test_pg_half():
    assert br(half, P(half), G(1)) == E(H(Fraction(3, 2)), Fraction(-1, 4))
    assert str(br(half, P(half), G(1))) == "-1/4*H(3/2)"


def test_hh_and_ph_vanish():
    for ell in (0, half, 1, 2):
        l = HalfInt.of(ell)
        r, s = l.value + 1, l.value - 2
        assert br(ell, H(r), H(s)) == 0
        assert br(ell, P(r), H(s)) == 0
        assert br(ell, P(r), P(s)) == 0


def test_gh_central_value_only_at_one():
    assert br(1, G(2), H(-2)) == Element({P(0): 2, C2: 15})
    assert br(2, G(2), H(-2)) == E(P(0), 2)


def test_lh_at_zero_ell():
    # weight -1/2 reading of H at l = 0
    assert br(0, L(2), H(1)) == E(H(3), Fraction(-2))


def test_numeric_central_mode():
    assert br(1, L(2), L(-2), central=(Fraction(1, 2), 0)) == Element({L(0): 4, C1: 3})
    assert br(1, L(2), P(-2), central=(0, 0)) == E(P(0), 4)


def test_index_parity_checked():
    with pytest.raises(IndexParityError):
        br(half, L(0), P(1))
    with pytest.raises(IndexParityError):
        br(1, P(half), G(0))


def test_strict_mode_rejects_mixed():
    mixed = Element({L(1): 1, G(0): 1})
    with pytest.raises(GradingError):
        br(1, mixed, E(L(0)), strict=True)
    assert br(1, mixed, E(L(0))) == br(1, L(1), L(0)) + br(1, G(0), L(0))


def test_jacobiator_examples():
    p = AlgebraParams(1)
    assert super_jacobiator(p, L(2), L(1), L(-3)) == 0
    for ell in ("0", "1/2", "1", "2"):
        l = HalfInt.parse(ell)
        assert super_jacobiator(AlgebraParams(l), L(0), G(0), H(l.value)) == 0


def test_pgg_sweep_three_halves():
    p = AlgebraParams(Fraction(3, 2))
    rs = [Fraction(k, 2) for k in range(-7, 8, 2)]
    for r in rs:
        for m in range(-4, 5):
            for n in range(-4, 5):
                assert super_jacobiator(p, P(r), G(m), G(n)) == 0


def test_window_sweep_small():
    for ell in ("0", "1/2", "1", "3/2", "2", "5/2"):
        rep = verify_jacobi_window(AlgebraParams(HalfInt.parse(ell)), 3)
        assert rep.ok and rep.checked > 0


def test_mutation_detected():
    rep = verify_jacobi_window(AlgebraParams(1, mutation="lp-sign"), 3)
    assert not rep.ok
    assert len(rep.failures) == 876
    keys = [tuple(g.sort_key() for g in t) for t, _ in rep.failures]
    assert keys == sorted(keys)


# properties

@given(st.data())
def test_graded_antisymmetry(data):
    ell = data.draw(ells)
    x = data.draw(generators(ell))
    y = data.draw(generators(ell))
    p = AlgebraParams(ell)
    sign = -1 if (x.parity and y.parity) else 1
    assert bracket(p, E(x), E(y)) + bracket(p, E(y), E(x)) * sign == 0


@given(st.data())
def test_bilinearity(data):
    ell = data.draw(ells)
    par = data.draw(st.sampled_from([0, 1]))
    x = data.draw(homogeneous_elements(ell, par))
    y = data.draw(homogeneous_elements(ell, par))
    z = data.draw(homogeneous_elements(ell, data.draw(st.sampled_from([0, 1]))))
    a, b = data.draw(rationals), data.draw(rationals)
    p = AlgebraParams(ell)
    assert bracket(p, x * a + y * b, z) == bracket(p, x, z) * a + bracket(p, y, z) * b


@given(st.data())
def test_c2_only_at_ell_one(data):
    ell = data.draw(ells)
    x, y = data.draw(generators(ell)), data.draw(generators(ell))
    out = bracket(AlgebraParams(ell), E(x), E(y))
    if ell.twice_value != 2:
        assert out.coeff(C2) == 0


@given(st.data())
def test_centre_is_central(data):
    ell = data.draw(ells)
    x = data.draw(generators(ell))
    p = AlgebraParams(ell)
    for c in (C1, C2):
        assert bracket(p, E(c), E(x)) == 0
        assert bracket(p, E(x), E(c)) == 0


@given(st.data())
def test_jacobi_on_random_triples(data):
    ell = data.draw(ells)
    xs = [data.draw(generators(ell, bound=8)) for _ in range(3)]
    assert super_jacobiator(AlgebraParams(ell), *xs) == 0


# literals and serialization

def test_parse_element_grammar():
    x = parse_element("3/2*L(2) + c1*C1 - H(-1/2)")
    assert x == Element({L(2): Fraction(3, 2), C1: 1, H(-half): -1})
    assert parse_element("-G(0) + 2*c2") == Element({G(0): -1, C2: 2})
    assert parse_element(str(x)) == x


@pytest.mark.parametrize("text,pos", [("L(2", 3), ("L 2", 2), ("L(x)", 2), ("3 * Q(1)", 4), ("L(1) L(2)", 5), ("2", 1)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    assert info.value.pos == pos
    assert info.value.annotated().splitlines()[-1].index("^") == pos + 2


@given(st.data())
def test_json_round_trip(data):
    ell = data.draw(ells)
    x = data.draw(homogeneous_elements(ell, data.draw(st.sampled_from([0, 1]))))
    x = x + Element({C1: data.draw(rationals)})
    assert Element.from_json(x.to_json()) == x
    assert parse_element(str(x)) == x


def test_json_fields():
    (entry,) = Element({H(-half): Fraction(-3, 4)}).to_json()
    assert entry == {"kind": "H", "index_times_two": -1, "coeff_num": -3, "coeff_den": 4, "coeff_c1": 0, "coeff_c2": 0}
    (entry,) = Element({C1: 6}).to_json()
    assert entry["coeff_c1"] == 1 and entry["index_times_two"] is None


def test_basisgen_validation():
    with pytest.raises(ValueError):
        BasisGen("Q", 0)
    with pytest.raises(ValueError):
        BasisGen("C1", 2)
    assert str(P(Fraction(-3, 2))) == "P(-3/2)"
