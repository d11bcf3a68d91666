"""Brute-force classification of central extensions on a truncated index window.

Every central term allowed by the grading gets its own unknown, one per
(slot, index pair). The super-Jacobi identity on all generator triples inside
the window gives a homogeneous linear system; its exact nullspace, taken modulo
coboundaries and restricted to an inner window, is the windowed H^2.

Default mode pins the bosonic slots to the known shapes
``LL = c1 m(m^2-1) delta``, ``LP = c2 m(m^2-1) delta delta_{l,1}``, ``PP = 0``,
with c1 (and c2 when l = 1) as free unknowns. ``generic_bosonic`` frees them.
``odd_slots`` additionally introduces central terms in the mixed-parity
brackets, with the rule that such a term anticommutes with an odd generator X
to 2*term*X; the resulting equations force those terms to zero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from sgca.algebra import AlgebraParams, BasisGen, bracket_gens
from sgca.errors import DomainError, WindowTooSmall
from sgca.halfint import HalfInt
from sgca.linalg import Echelon, Vec, span_basis

EVEN_SLOTS = ("LL", "LP", "PP", "GG", "GH", "HH")
ODD_SLOTS = ("LG", "LH", "PG", "PH")
_ORDER = {"L": 0, "P": 1, "G": 2, "H": 3}
_BOSONIC = ("LL", "LP", "PP")


def _canonical(x: BasisGen, y: BasisGen) -> tuple[str, BasisGen, BasisGen, int] | None:
    """Slot name, ordered pair and sign s with value(x, y) = s * value(pair).

    Returns None on the diagonal of an antisymmetric slot (identically zero).
    """
    swap_sign = 1 if (x.parity and y.parity) else -1
    kx, ky = _ORDER[x.kind], _ORDER[y.kind]
    if (kx, x.twice) > (ky, y.twice):
        x, y, sign = y, x, swap_sign
    else:
        sign = 1
    if x == y and swap_sign == -1:
        return None
    return x.kind + y.kind, x, y, sign


@dataclass
class CocycleAnsatz:
    ell: HalfInt
    window: HalfInt
    odd_slots: bool = False
    generic_bosonic: bool = False
    labels: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        self.params = AlgebraParams(self.ell, central=(0, 0))
        self.gens = self.params.generators(self.window)
        if not self.generic_bosonic:
            self._add("c1")
            if self.params.ell_is_one:
                self._add("c2")
        slots = EVEN_SLOTS + (ODD_SLOTS if self.odd_slots else ())
        by_kind: dict[str, list[BasisGen]] = {}
        for g in self.gens:
            by_kind.setdefault(g.kind, []).append(g)
        for slot in slots:
            for x in by_kind[slot[0]]:
                for y in by_kind[slot[1]]:
                    canon = _canonical(x, y)
                    if canon is None or canon[1] != x:
                        continue
                    self._add((slot, x, y))

    def _add(self, label):
        self.index[label] = len(self.labels)
        self.labels.append(label)

    @property
    def size(self) -> int:
        return len(self.labels)

    def var(self, x: BasisGen, y: BasisGen) -> tuple[int, int] | None:
        """(variable id, sign) for the central term of [x, y], None if absent or forced zero."""
        canon = _canonical(x, y)
        if canon is None:
            return None
        slot, a, b, sign = canon
        vid = self.index.get((slot, a, b))
        return None if vid is None else (vid, sign)

    def in_window(self, g: BasisGen) -> bool:
        return abs(g.twice) <= self.window.twice_value

    def is_inner(self, vid: int, margin: int = 2) -> bool:
        label = self.labels[vid]
        if isinstance(label, str):
            return True
        # the produced index a+b must be inner too: pairs whose sum leaves the
        # window are never reached by an imposed constraint
        lim = self.window.twice_value - 2 * margin
        a, b = label[1].twice, label[2].twice
        return abs(a) <= lim and abs(b) <= lim and abs(a + b) <= lim

    def describe(self, vid: int) -> str:
        label = self.labels[vid]
        if isinstance(label, str):
            return label
        slot, a, b = label
        return f"{slot}[{a.index},{b.index}]"


@dataclass
class ConstraintSystem:
    ansatz: CocycleAnsatz
    rows: list[Vec]
    row_labels: list


def triple_rows(ansatz: CocycleAnsatz, x: BasisGen, y: BasisGen, z: BasisGen) -> dict | None:
    """Linear constraints from the super-Jacobi identity on one triple.

    Keys are ``"central"`` or an output generator (odd-slot mode only);
    values are sparse rows. None when a produced index leaves the window.
    """
    px, py, pz = x.parity, y.parity, z.parity
    if (px + py + pz) % 2 and not ansatz.odd_slots:
        return {}
    out: dict = {}

    def add(key, vid, coeff):
        row = out.setdefault(key, {})
        v = row.get(vid, 0) + coeff
        if v:
            row[vid] = v
        else:
            row.pop(vid, None)

    for sgn, a, b, c in ((px * pz, x, y, z), (py * px, y, z, x), (pz * py, z, x, y)):
        s = -1 if sgn else 1
        for w, ci in bracket_gens(ansatz.params, b, c):
            if w.is_central or not ci:
                continue
            if not ansatz.in_window(w):
                return None
            hit = ansatz.var(a, w)
            if hit is not None:
                add("central", hit[0], s * hit[1] * ci)
        if ansatz.odd_slots and a.parity and (b.parity + c.parity) % 2:
            hit = ansatz.var(b, c)
            if hit is not None:
                add(a, hit[0], 2 * s * hit[1])
    return {k: r for k, r in out.items() if r}


def build_constraint_system(
    ell, window, odd_slots: bool = False, generic_bosonic: bool = False
) -> ConstraintSystem:
    ell, window = HalfInt.of(ell), HalfInt.of(window)
    if window.twice_value < 6:
        raise WindowTooSmall("window must be >= 3")
    ansatz = CocycleAnsatz(ell, window, odd_slots, generic_bosonic)
    rows: list[Vec] = []
    labels: list = []
    for triple in itertools.combinations_with_replacement(ansatz.gens, 3):
        got = triple_rows(ansatz, *triple)
        if not got:
            continue
        for key, row in got.items():
            rows.append(row)
            labels.append((triple, key))
    if not generic_bosonic:
        rows_shape, labels_shape = _shape_rows(ansatz)
        rows.extend(rows_shape)
        labels.extend(labels_shape)
    return ConstraintSystem(ansatz, rows, labels)


def _shape_rows(ansatz: CocycleAnsatz):
    rows, labels = [], []
    c1 = ansatz.index["c1"]
    c2 = ansatz.index.get("c2")
    for vid, label in enumerate(ansatz.labels):
        if isinstance(label, str) or label[0] not in _BOSONIC:
            continue
        slot, a, b = label
        row: Vec = {vid: Fraction(1)}
        m = a.index
        if a.twice + b.twice == 0 and m * (m * m - 1):
            if slot == "LL":
                row[c1] = -m * (m * m - 1)
            elif slot == "LP" and c2 is not None:
                row[c2] = -m * (m * m - 1)
        rows.append(row)
        labels.append(("shape", slot, a, b))
    return rows, labels


def coboundary_vectors(ansatz: CocycleAnsatz) -> list[Vec]:
    """delta b for each generator b in the window: (delta b)(X, Y) = b([X, Y])."""
    cols: dict[BasisGen, Vec] = {}
    for vid, label in enumerate(ansatz.labels):
        if isinstance(label, str):
            continue
        _, a, b = label
        for w, c in bracket_gens(ansatz.params, a, b):
            if w.is_central or not c or not ansatz.in_window(w):
                continue
            cols.setdefault(w, {})[vid] = Fraction(c)
    return [cols[g] for g in sorted(cols, key=lambda g: g.sort_key())]


@dataclass
class CohomologyReport:
    ell: HalfInt
    window: HalfInt
    inner_window: HalfInt
    mode: str
    num_unknowns: int
    num_constraints: int
    window_nullity: int
    raw_solution_dim: int
    coboundary_dim: int
    h2_dim: int
    basis: list[dict]
    basis_vectors: list[Vec] = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "window": str(self.window),
            "inner_window": str(self.inner_window),
            "mode": self.mode,
            "num_unknowns": self.num_unknowns,
            "num_constraints": self.num_constraints,
            "window_nullity": self.window_nullity,
            "raw_solution_dim": self.raw_solution_dim,
            "coboundary_dim": self.coboundary_dim,
            "h2_dim": self.h2_dim,
            "basis": self.basis,
        }


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _describe_cocycle(ansatz: CocycleAnsatz, vec: Vec) -> dict:
    charges = {}
    for name in ("c1", "c2"):
        if name in ansatz.index:
            charges[name] = _frac(vec.get(ansatz.index[name], Fraction(0)))
    slots: dict[str, list] = {}
    for vid, val in sorted(vec.items()):
        label = ansatz.labels[vid]
        if isinstance(label, str):
            continue
        slot, a, b = label
        slots.setdefault(slot, []).append([str(HalfInt(a.twice)), str(HalfInt(b.twice)), _frac(val)])
    diagonal = {}
    for slot, entries in slots.items():
        if all(Fraction(i) + Fraction(j) == 0 for i, j, _ in entries):
            diagonal[slot] = {i: v for i, _, v in entries}
    return {"charges": charges, "slots": slots, "diagonal_profiles": diagonal}


def solve_h2(ell, window, odd_slots: bool = False, generic_bosonic: bool = False) -> CohomologyReport:
    ell, window = HalfInt.of(ell), HalfInt.of(window)
    if window.twice_value < 8:
        raise WindowTooSmall("window must be >= 4")
    system = build_constraint_system(ell, window, odd_slots, generic_bosonic)
    ansatz = system.ansatz
    ech = Echelon()
    ech.extend(system.rows)
    null = ech.nullspace(ansatz.size)

    inner = [ansatz.is_inner(v) for v in range(ansatz.size)]

    def project(vec: Vec) -> Vec:
        return {k: v for k, v in vec.items() if inner[k]}

    # coboundaries that also satisfy every imposed row (the shape rows may exclude some)
    dcols = coboundary_vectors(ansatz)
    residual_rows: dict[int, Vec] = {}
    for j, col in enumerate(dcols):
        for k, val in col.items():
            if k in ech.pivots:
                r = residual_rows.setdefault(k, {})
                r[j] = r.get(j, 0) + val
            for p in ech._occurs.get(k, ()):
                r = residual_rows.setdefault(p, {})
                r[j] = r.get(j, 0) + val * ech.pivots[p][k]
    m_ech = Echelon()
    m_ech.extend({j: v for j, v in r.items() if v} for r in residual_rows.values())
    cobound: list[Vec] = []
    for y in m_ech.nullspace(len(dcols)):
        vec: Vec = {}
        for j, yj in y.items():
            for k, v in dcols[j].items():
                vec[k] = vec.get(k, 0) + yj * v
        cobound.append({k: v for k, v in vec.items() if v})

    proj_b = span_basis(project(v) for v in cobound)
    proj_s = span_basis(project(v) for v in null)
    b_ech = Echelon()
    b_ech.extend(proj_b)
    quotient = span_basis(b_ech.reduce(v) for v in proj_s)

    mode = "generic-bosonic" if generic_bosonic else "default"
    if odd_slots:
        mode += "+odd-slots"
    return CohomologyReport(
        ell=ell,
        window=window,
        inner_window=window - 2,
        mode=mode,
        num_unknowns=ansatz.size,
        num_constraints=len(system.rows),
        window_nullity=len(null),
        raw_solution_dim=len(proj_s),
        coboundary_dim=len(proj_b),
        h2_dim=len(proj_s) - len(proj_b),
        basis=[_describe_cocycle(ansatz, v) for v in quotient],
        basis_vectors=quotient,
    )


def basis_satisfies_interior(ell, window, report: CohomologyReport, **modes) -> bool:
    """Every row whose unknowns all lie in the inner window vanishes on every basis cocycle."""
    system = build_constraint_system(ell, window, **modes)
    ansatz = system.ansatz
    for row in system.rows:
        if not all(ansatz.is_inner(k) for k in row):
            continue
        for vec in report.basis_vectors:
            if sum(c * vec.get(k, 0) for k, c in row.items()):
                return False
    return True


def _dfact(n: int) -> Fraction:
    """Double factorial for odd n, continued to negative n by n!! = (n+2)!!/(n+2)."""
    if n % 2 == 0:
        raise ValueError("odd argument expected")
    if n >= -1:
        out = Fraction(1)
        for k in range(n, 0, -2):
            out *= k
        return out
    return _dfact(n + 2) / (n + 2)


@dataclass
class RecurrenceReport:
    ell: HalfInt
    a0_over_c2: Fraction
    a_over_c2: dict[int, Fraction]
    recurrence_residuals: dict[int, Fraction]
    relation_residuals: int
    ok: bool

    def to_json(self) -> dict:
        return {
            "ell": str(self.ell),
            "a0_over_c2": _frac(self.a0_over_c2),
            "a_over_c2": {str(n): _frac(v) for n, v in self.a_over_c2.items()},
            "recurrence_residuals": {str(n): _frac(v) for n, v in self.recurrence_residuals.items()},
            "relation_residuals": self.relation_residuals,
            "ok": self.ok,
        }


def check_recurrences(ell, n_range=range(-5, 6)) -> RecurrenceReport:
    """Cross-check the two closed forms for the G-H central term at integer l.

    Both closed forms are linear in (a_0, c_2); equating them pins a_0 in terms
    of c_2. The resulting a_n must satisfy the first-order recurrence and the
    full two-index relation coming from the {L, G, H} identity.
    """
    ell = HalfInt.of(ell)
    if not ell.is_integer:
        raise DomainError("the recurrence branch needs integer l")
    lv = ell.value
    delta = 1 if lv == 1 else 0
    li = int(lv)

    def form1(n: int) -> tuple[Fraction, Fraction]:
        # coefficient of a_0, coefficient of c_2
        return -_dfact(2 * li + 2 * n - 1) / (_dfact(2 * n - 3) * _dfact(2 * li - 1)), Fraction(0)

    def form2(n: int) -> tuple[Fraction, Fraction]:
        return Fraction(3) / (1 - 2 * lv), -Fraction(4 * (n * n - 1) * delta) / (1 - 2 * lv)

    ech = Echelon()
    for n in n_range:
        (p1, q1), (p2, q2) = form1(n), form2(n)
        ech.add({0: p1 - p2, 1: q1 - q2})
    # a_0 is column 0, c_2 column 1: expect a single pivot on a_0
    if 0 not in ech.pivots or 1 in ech.pivots:
        raise DomainError("closed forms do not determine a_0")
    a0 = -ech.pivots[0].get(1, Fraction(0))
    a = {n: form1(n)[0] * a0 for n in range(min(n_range), max(n_range) + 2)}
    closed = {n: Fraction(delta * (4 * n * n - 1)) for n in a}
    rec = {n: (lv + n + Fraction(1, 2)) * a[n] + (Fraction(1, 2) - n) * a[n + 1] for n in n_range}
    bad_relation = 0
    for m in n_range:
        for n in n_range:
            if m + n not in a:
                continue
            lhs = ((2 * lv + 1) / 2 * m + n) * a[n] + (Fraction(m, 2) - n) * a[m + n]
            if lhs != 2 * delta * m * (m * m - 1):
                bad_relation += 1
    ok = all(a[n] == closed[n] for n in a) and not any(rec.values()) and bad_relation == 0
    return RecurrenceReport(ell, a0, {n: a[n] for n in n_range}, rec, bad_relation, ok)
