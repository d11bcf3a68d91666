from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sgca.algebra import C1, C2, AlgebraParams, G, H, L, P, bracket_gens
from sgca.halfint import HalfInt
from sgca.laurent import Laurent
from sgca.superspace import (
    SuperDiffOp,
    apply,
    check_current_algebra,
    check_representation,
    compose,
    current_generator,
    function,
    graded_commutator,
    realize,
    realize_l1_two_grassmann,
)

from strategies import ells, generators, laurent_terms, rationals

half = Fraction(1, 2)
m = SuperDiffOp.monomial


def two(c, **kw):
    return SuperDiffOp.monomial(c, names=("alpha", "beta"), **kw)


# independent oracle: act with each normal-ordered word directly on a superfunction

def _grass_sort(seq):
    items, sign = list(seq), 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    if len(set(items)) != len(items):
        return 0, ()
    return sign, tuple(items)


def act(op: SuperDiffOp, f: dict) -> dict:
    """op applied to f = {(t_exp, x_pow, grassmann tuple): coeff}."""
    out = {}
    for (ta, xa, ga, dt, dx, dg), c in op.terms.items():
        cur = dict(f)
        for _ in range(dt):
            cur = {(t - 1, x, g): v * t for (t, x, g), v in cur.items() if t}
        for _ in range(dx):
            cur = {(t, x - 1, g): v * x for (t, x, g), v in cur.items() if x}
        for var in reversed(dg):
            nxt = {}
            for (t, x, g), v in cur.items():
                if var in g:
                    pos = g.index(var)
                    nxt[(t, x, g[:pos] + g[pos + 1 :])] = v * (-1) ** pos
            cur = nxt
        for (t, x, g), v in cur.items():
            s, gg = _grass_sort(ga + g)
            if s:
                key = (t + ta, x + xa, gg)
                out[key] = out.get(key, 0) + c * v * s
    return {k: v for k, v in out.items() if v}


def as_dict(fn: SuperDiffOp) -> dict:
    return {(k[0], k[1], k[2]): v for k, v in fn.terms.items()}


def random_op(draw, nvars=1):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        g = tuple(sorted(draw(st.sets(st.integers(0, nvars - 1), max_size=nvars))))
        dg = tuple(sorted(draw(st.sets(st.integers(0, nvars - 1), max_size=nvars))))
        key = (Fraction(draw(st.integers(-4, 4)), 2), draw(st.integers(0, 2)), g,
               draw(st.integers(0, 2)), draw(st.integers(0, 2)), dg)
        terms[key] = draw(rationals.filter(bool))
    return SuperDiffOp(terms, ("alpha", "beta")[:nvars] if nvars == 2 else ("xi",))


def random_function(draw, nvars=1):
    f = {}
    for _ in range(draw(st.integers(1, 3))):
        g = tuple(sorted(draw(st.sets(st.integers(0, nvars - 1), max_size=nvars))))
        f[(Fraction(draw(st.integers(-4, 4)), 2), draw(st.integers(0, 3)), g)] = draw(rationals.filter(bool))
    return f


def to_function(f: dict, nvars=1) -> SuperDiffOp:
    names = ("alpha", "beta") if nvars == 2 else ("xi",)
    return SuperDiffOp({(t, x, g, 0, 0, ()): v for (t, x, g), v in f.items()}, names)


@given(st.data())
def test_apply_matches_direct_action(data):
    nv = data.draw(st.sampled_from([1, 2]))
    op = random_op(data.draw, nv)
    f = random_function(data.draw, nv)
    assert as_dict(apply(op, to_function(f, nv))) == act(op, f)


@given(st.data())
def test_composition_is_action_of_product(data):
    nv = data.draw(st.sampled_from([1, 2]))
    a, b = random_op(data.draw, nv), random_op(data.draw, nv)
    f = random_function(data.draw, nv)
    assert act(compose(a, b), f) == act(a, act(b, f))


@given(st.data())
def test_composition_associative(data):
    a, b, c = (random_op(data.draw, 2) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(st.data())
def test_grassmann_nilpotency(data):
    ell = data.draw(ells)
    op = realize(ell, data.draw(generators(ell)))
    d_xi, xi = m(1, dgrass=(0,)), m(1, grass=(0,))
    assert compose(d_xi, d_xi) == 0
    assert compose(xi, xi) == 0
    assert compose(compose(d_xi, d_xi), op) == 0
    assert compose(compose(xi, xi), op) == 0
    assert compose(op, compose(d_xi, d_xi)) == 0
    assert SuperDiffOp.monomial(1, grass=(0, 0)) == 0


# realizations

def test_p_realization():
    for ell in (0, half, 1, 2):
        r = HalfInt.of(ell).value + 1
        assert realize(ell, P(r)) == m(-half, t=r + HalfInt.of(ell).value, dx=1)


def test_l_minus_one_is_translation():
    for ell in (0, half, 1, Fraction(3, 2)):
        assert realize(ell, L(-1)) == m(-1, dt=1)


def test_g0_on_xi():
    for ell in (0, half, 1, 2):
        assert apply(realize(ell, G(0)), function(grass=(0,))) == function(1, t=half)


def test_central_generators_vanish():
    assert realize(1, C1) == 0 and realize(half, C2) == 0
    assert realize_l1_two_grassmann(C1) == 0


def test_two_grassmann_h():
    for r in (-2, 0, 3):
        expected = two(-1, t=r + half, dgrass=(1,)) + two(1, t=r + half, grass=(0,), dx=1)
        assert realize_l1_two_grassmann(H(r)) == expected


def test_two_grassmann_p_minus_one():
    assert realize_l1_two_grassmann(P(-1)) == two(-1, dx=1)


def test_two_grassmann_gh_on_x():
    x = SuperDiffOp.monomial(1, x=1, names=("alpha", "beta"))
    for mm in range(-2, 3):
        for r in range(-2, 3):
            lhs = graded_commutator(realize_l1_two_grassmann(G(mm)), realize_l1_two_grassmann(H(r)))
            rhs = realize_l1_two_grassmann(P(mm + r)) * 2
            assert apply(lhs, x) == apply(rhs, x)


@pytest.mark.parametrize("ell", ["0", "1/2", "1", "3/2", "2"])
def test_representation_window_three(ell):
    rep = check_representation(HalfInt.parse(ell), 3)
    assert rep.ok and rep.checked == len(AlgebraParams(HalfInt.parse(ell)).generators(3)) ** 2


def test_representation_half_window_four():
    assert check_representation(half, 4).ok


def test_two_grassmann_representation():
    rep = check_representation(1, 3, two_grassmann=True)
    assert rep.ok and rep.checked == 784


def test_two_grassmann_needs_ell_one():
    with pytest.raises(ValueError):
        check_representation(2, 3, two_grassmann=True)


@given(st.data())
def test_realized_brackets_random(data):
    ell = data.draw(ells)
    x, y = data.draw(generators(ell, bound=7)), data.draw(generators(ell, bound=7))
    p = AlgebraParams(ell, central=(0, 0))
    rhs = SuperDiffOp.zero()
    for g, c in bracket_gens(p, x, y):
        rhs = rhs + realize(ell, g) * c
    assert graded_commutator(realize(ell, x), realize(ell, y)) == rhs


# current algebra

def lp(d):
    return Laurent({Fraction(k): v for k, v in d.items()})


def test_current_l_of_t_squared():
    for ell in (half, 1, 2):
        lv = HalfInt.of(ell).value
        expected = m(1, t=2, dt=1) + m(2 * lv, t=1, x=1, dx=1) + m(1, t=1, grass=(0,), dgrass=(0,))
        assert current_generator(ell, "L", lp({2: 1})) == expected


def test_current_p_of_one():
    assert current_generator(1, "P", lp({0: 1})) == m(half, dx=1)


def test_current_lp_bracket_example():
    lhs = graded_commutator(current_generator(1, "L", lp({3: 1})), current_generator(1, "P", lp({2: 1})))
    assert lhs == current_generator(1, "P", lp({4: -1}))
    assert lhs == m(-half, t=4, dx=1)


@pytest.mark.parametrize("ell", ["0", "1/2", "1", "2"])
def test_current_families(ell):
    rep = check_current_algebra(HalfInt.parse(ell), trials=20, seed=3)
    assert rep.ok and rep.checked == 140


@pytest.mark.parametrize("ell", ["0", "1/2", "1", "3/2"])
def test_dictionary_matches_modes(ell):
    l = HalfInt.parse(ell)
    lv = l.value
    for k in range(-3, 4):
        r = Fraction(k) + (half if l.twice_value % 2 else 0)
        assert current_generator(l, "L", lp({k + 1: -1})) == realize(l, L(k))
        assert current_generator(l, "G", Laurent({k + half: -1})) == realize(l, G(k))
        assert current_generator(l, "P", Laurent({r + lv: -1})) == realize(l, P(r))
        assert current_generator(l, "H", Laurent({r + lv - half: -1})) == realize(l, H(r))


@given(st.sampled_from(["L", "P", "G", "H"]), ells, laurent_terms(False), st.data())
def test_laurent_linearity(kind, ell, coeffs, data):
    if kind in ("G", "H"):
        coeffs = {e + half: c for e, c in coeffs.items()}
    total = current_generator(ell, kind, Laurent(coeffs))
    parts = SuperDiffOp.zero()
    for e, c in coeffs.items():
        parts = parts + current_generator(ell, kind, Laurent({e: 1})) * c
    assert total == parts


def test_operator_printing_is_canonical():
    op = realize(1, G(0))
    assert str(op) == "-t^(-1/2)*x*xi*d_x + t^(1/2)*d_xi - t^(1/2)*xi*d_t"
    assert str(SuperDiffOp.zero()) == "0"
