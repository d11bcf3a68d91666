from fractions import Fraction

import pytest

from sgca.algebra import G, H, L, P
from sgca.central import (
    CocycleAnsatz,
    basis_satisfies_interior,
    build_constraint_system,
    check_recurrences,
    solve_h2,
    triple_rows,
)
from sgca.errors import DomainError, WindowTooSmall
from sgca.halfint import HalfInt

EXPECTED_H2 = {"0": 1, "1/2": 1, "1": 2, "3/2": 1, "2": 1}


@pytest.fixture(scope="module")
def h2_l1():
    return solve_h2(1, 8)


def test_lgh_row_at_ell_one():
    # m = 1 instance: (1/2 - r) a(n, m+r) + (1/2 - n) a(m+n, r) = 2 c2 m(m^2-1) with the LP profile unknown
    ans = CocycleAnsatz(HalfInt.of(1), HalfInt.of(4))
    rows = triple_rows(ans, L(1), G(0), H(-1))
    row = {ans.describe(k): v for k, v in rows["central"].items()}
    scale = Fraction(3, 2) / row["GH[0,0]"]
    row = {k: v * scale for k, v in row.items()}
    assert row == {"GH[0,0]": Fraction(3, 2), "GH[1,-1]": Fraction(1, 2), "LP[1,-1]": Fraction(-2)}


def test_zero_index_triple_gives_trivial_row():
    ans = CocycleAnsatz(HalfInt.of(1), HalfInt.of(4))
    assert triple_rows(ans, L(0), L(0), L(0)) == {}
    assert triple_rows(ans, L(0), G(0), G(0)).get("central", {}) == {}


def test_no_gh_unknowns_on_diagonal_for_half():
    ans = CocycleAnsatz(HalfInt.parse("1/2"), HalfInt.of(5))
    gh = [lab for lab in ans.labels if not isinstance(lab, str) and lab[0] == "GH"]
    assert gh and all(a.twice + b.twice != 0 for _, a, b in gh)


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        build_constraint_system(1, 2)
    with pytest.raises(WindowTooSmall):
        solve_h2(1, 3)


@pytest.mark.parametrize("ell", sorted(EXPECTED_H2))
@pytest.mark.parametrize("window", [6, 8])
def test_h2_dimensions(ell, window):
    assert solve_h2(ell, window).h2_dim == EXPECTED_H2[ell]


def test_l1_basis_profiles(h2_l1):
    assert h2_l1.h2_dim == 2
    c1_class, c2_class = h2_l1.basis
    assert c1_class["charges"] == {"c1": "1", "c2": "0"}
    assert c2_class["charges"] == {"c1": "0", "c2": "1"}
    gg = c1_class["diagonal_profiles"]["GG"]
    assert gg and all(Fraction(v) == 4 * Fraction(m) ** 2 - 1 for m, v in gg.items())
    gh = c2_class["diagonal_profiles"]["GH"]
    assert len(gh) == 13
    assert all(Fraction(v) == 4 * Fraction(m) ** 2 - 1 for m, v in gh.items())
    lp = c2_class["diagonal_profiles"]["LP"]
    assert all(Fraction(v) == Fraction(m) * (Fraction(m) ** 2 - 1) for m, v in lp.items())


def test_pp_slot_vanishes(h2_l1):
    for rep in (h2_l1, solve_h2(1, 8, generic_bosonic=True)):
        for vec in rep.basis:
            assert "PP" not in vec["slots"]


def test_basis_satisfies_inner_constraints(h2_l1):
    assert basis_satisfies_interior(1, 8, h2_l1)
    rep = solve_h2("3/2", 6)
    assert basis_satisfies_interior("3/2", 6, rep)


def test_odd_slot_mode_agrees():
    for ell in ("1/2", "1"):
        rep = solve_h2(ell, 6, odd_slots=True)
        assert rep.h2_dim == EXPECTED_H2[ell]
        assert rep.mode == "default+odd-slots"
        # odd-output slots are forced to zero
        for vec in rep.basis:
            assert not set(vec["slots"]) & {"LG", "LH", "PG", "PH"}


@pytest.mark.parametrize("ell,expected", [("1/2", 1), ("1", 2), ("2", 1), ("0", 3)])
def test_generic_bosonic(ell, expected):
    # l = 0 has two extra classes once the bosonic slots are free
    assert solve_h2(ell, 6, generic_bosonic=True).h2_dim == expected


@pytest.mark.parametrize("ell", ["0", "1/2", "1", "2"])
def test_coboundary_count(ell):
    # generic mode: one coboundary per L_k and per P_k on the inner window
    w = 6
    l = HalfInt.parse(ell)
    n_l = 2 * (w - 2) + 1
    n_p = n_l if l.is_integer else 2 * (w - 2)
    rep = solve_h2(ell, w, generic_bosonic=True)
    assert rep.coboundary_dim == n_l + n_p
    assert rep.raw_solution_dim - rep.h2_dim == rep.coboundary_dim
    # the pinned bosonic shapes exclude every coboundary
    assert solve_h2(ell, w).coboundary_dim == 0


def test_json_report_fields(h2_l1):
    doc = h2_l1.to_json()
    assert doc["h2_dim"] == 2 and doc["ell"] == "1" and doc["inner_window"] == "6"
    assert doc["raw_solution_dim"] - doc["coboundary_dim"] == doc["h2_dim"]


def test_recurrences_ell_one():
    rep = check_recurrences(1)
    assert rep.ok
    assert rep.a0_over_c2 == -1
    assert rep.a_over_c2[2] == 15
    assert not any(rep.recurrence_residuals.values())


@pytest.mark.parametrize("ell", [0, 2])
def test_recurrences_vanish_elsewhere(ell):
    rep = check_recurrences(ell)
    assert rep.ok and rep.a0_over_c2 == 0
    assert not any(rep.a_over_c2.values())


def test_recurrences_need_integer_ell():
    with pytest.raises(DomainError):
        check_recurrences(Fraction(1, 2))
