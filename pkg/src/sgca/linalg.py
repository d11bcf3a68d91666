"""Exact sparse linear algebra over the rationals.

Rows and vectors are ``dict[int, Fraction]`` keyed by column id with no stored
zeros. Elimination is incremental and keeps the pivot rows in reduced row
echelon form, so the result does not depend on the order rows are fed in.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Vec = dict[int, Fraction]


def _axpy(target: Vec, alpha: Fraction, source: Vec) -> None:
    """target += alpha * source, dropping cancelled entries."""
    for k, v in source.items():
        new = target.get(k, 0) + alpha * v
        if new:
            target[k] = new
        else:
            target.pop(k, None)


class Echelon:
    """Reduced row echelon form built one row at a time.

    Pivot choice is the lowest column id surviving reduction, which is what
    makes the basis reproducible.
    """

    def __init__(self):
        self.pivots: dict[int, Vec] = {}
        self._occurs: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Vec) -> Vec:
        out = {k: Fraction(v) for k, v in row.items() if v}
        for col in [c for c in out if c in self.pivots]:
            coeff = out.get(col)
            if coeff:
                _axpy(out, -coeff, self.pivots[col])
        return out

    def add(self, row: Vec) -> int | None:
        """Insert a row; return the new pivot column or None if dependent."""
        red = self.reduce(row)
        if not red:
            return None
        piv = min(red)
        inv = 1 / red[piv]
        red = {k: v * inv for k, v in red.items()}
        for prow_col in list(self._occurs.get(piv, ())):
            prow = self.pivots[prow_col]
            coeff = prow.get(piv)
            if not coeff:
                continue
            before = set(prow)
            _axpy(prow, -coeff, red)
            after = set(prow)
            for k in before - after:
                self._occurs.get(k, set()).discard(prow_col)
            for k in after - before:
                self._occurs.setdefault(k, set()).add(prow_col)
        self._occurs.pop(piv, None)
        self.pivots[piv] = red
        for k in red:
            if k != piv:
                self._occurs.setdefault(k, set()).add(piv)
        return piv

    def extend(self, rows: Iterable[Vec]) -> None:
        for r in rows:
            self.add(r)

    def nullspace(self, ncols: int) -> list[Vec]:
        """Basis of the solution space of all inserted rows, one vector per free column."""
        basis = []
        for free in range(ncols):
            if free in self.pivots:
                continue
            vec: Vec = {free: Fraction(1)}
            for col in self._occurs.get(free, ()):
                vec[col] = -self.pivots[col][free]
            basis.append(dict(sorted(vec.items())))
        return basis


def rank(vectors: Iterable[Vec]) -> int:
    ech = Echelon()
    ech.extend(vectors)
    return ech.rank


def span_basis(vectors: Iterable[Vec]) -> list[Vec]:
    """Canonical (reduced echelon) basis of the span, sorted by pivot column."""
    ech = Echelon()
    ech.extend(vectors)
    return [dict(sorted(ech.pivots[c].items())) for c in sorted(ech.pivots)]


def solve(rows: Iterable[tuple[Vec, Fraction]], ncols: int) -> tuple[Vec, list[Vec]] | None:
    """Solve ``A x = b`` exactly.

    Returns ``(particular, nullspace)`` with free variables of the particular
    solution set to zero, or ``None`` when the system is inconsistent.
    """
    rhs_col = ncols
    ech = Echelon()
    for row, b in rows:
        aug = dict(row)
        if b:
            aug[rhs_col] = -Fraction(b)
        piv = ech.add(aug)
        if piv == rhs_col:
            return None
    particular: Vec = {}
    for col, prow in ech.pivots.items():
        v = -prow.get(rhs_col, 0)
        if v:
            particular[col] = v
    null = [v for v in ech.nullspace(ncols)]
    return dict(sorted(particular.items())), null
