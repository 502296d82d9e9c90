"""Sparse exact row reduction over the rationals.

Rows are dicts from hashable column labels to nonzero coefficients; a key
function orders the columns, and every row pivots on its largest column.
One incremental eliminator supports rank, reduction against a basis,
nullspace extraction, and solving for a vector inside a span.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .errors import InternalInconsistencyError


def _add_scaled(target: dict, source: dict, factor) -> None:
    for k, v in source.items():
        s = target.get(k, 0) + factor * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


class Eliminator:
    """Incremental Gaussian elimination with monic pivot rows.

    Each stored row carries a tag vector recording how it was assembled
    from the rows fed in, so nullspace vectors and span coordinates come
    out of the same elimination.
    """

    def __init__(self, col_key: Callable):
        self.col_key = col_key
        self.pivots: dict = {}  # pivot column -> (row, tag)

    def _pivot_col(self, row: dict):
        return max(row, key=self.col_key)

    def reduce(self, row: dict, tag: Optional[dict] = None) -> tuple[dict, dict]:
        """Fully reduce a row against the basis; returns (residual, combination).

        The combination accumulates the tags of the pivot rows used, so that
        row == residual + sum(combination[j] * original_row_j).
        """
        row = dict(row)
        combo: dict = {} if tag is None else dict(tag)
        while row:
            c = self._pivot_col(row)
            hit = self.pivots.get(c)
            if hit is None:
                break
            base, base_tag = hit
            f = Fraction(row[c]) / base[c]
            _add_scaled(row, base, -f)
            _add_scaled(combo, base_tag, f)
        # clean lower (non-pivot-leading) columns too, for a fully reduced residual
        changed = True
        while changed and row:
            changed = False
            for c in sorted(row, key=self.col_key, reverse=True):
                hit = self.pivots.get(c)
                if hit is not None:
                    base, base_tag = hit
                    f = Fraction(row[c]) / base[c]
                    _add_scaled(row, base, -f)
                    _add_scaled(combo, base_tag, f)
                    changed = True
                    break
        return row, combo

    def add(self, row: dict, tag: Optional[dict] = None) -> Optional[dict]:
        """Insert a row; returns None if it increased the rank, else the
        combination expressing it in terms of previously added rows."""
        residual, combo = self.reduce(row, None)
        if not residual:
            return combo if tag is None else combo
        c = self._pivot_col(residual)
        lead = residual[c]
        monic = {k: Fraction(v) / lead for k, v in residual.items()}
        own_tag: dict = dict(tag) if tag is not None else {}
        # tag tracks: monic = (incoming - sum combo_j . row_j) / lead
        new_tag = {k: -Fraction(v) / lead for k, v in combo.items()}
        for k, v in own_tag.items():
            s = new_tag.get(k, 0) + Fraction(v) / lead
            if s:
                new_tag[k] = s
            else:
                new_tag.pop(k, None)
        # back-substitute into existing rows to keep the basis reduced
        for pc, (base, base_tag) in list(self.pivots.items()):
            if c in base:
                f = Fraction(base[c]) / monic[c]
                _add_scaled(base, monic, -f)
                _add_scaled(base_tag, new_tag, -f)
        self.pivots[c] = (monic, new_tag)
        return None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[dict]:
        """The reduced basis rows, largest pivot first."""
        cols = sorted(self.pivots, key=self.col_key, reverse=True)
        return [self.pivots[c][0] for c in cols]


def rank_of(rows: list[dict], col_key: Callable) -> int:
    elim = Eliminator(col_key)
    for r in rows:
        elim.add(r)
    return elim.rank


def nullspace(rows: list[dict], col_key: Callable) -> list[dict]:
    """Basis of the left kernel: combinations of the rows summing to zero.

    Tags are indexed by row position; each returned dict maps row indices
    to rational coefficients with sum_i coeff[i] * rows[i] == 0.
    """
    elim = Eliminator(col_key)
    out = []
    for i, r in enumerate(rows):
        residual, combo = elim.reduce(r)
        if not residual:
            combo = {k: -v for k, v in combo.items()}
            combo[i] = 1
            out.append(combo)
        else:
            elim.add(r, tag={i: 1})
    return out


def solve_in_span(
    target: dict, rows: list[dict], col_key: Callable
) -> Optional[dict]:
    """Coefficients expressing target as a combination of rows, or None.

    The rows are required to be linearly independent, so a solution is
    unique when it exists.
    """
    elim = Eliminator(col_key)
    for i, r in enumerate(rows):
        if elim.add(r, tag={i: 1}) is not None:
            raise InternalInconsistencyError("solve_in_span expects independent rows")
    residual, combo = elim.reduce(target)
    if residual:
        return None
    return combo
