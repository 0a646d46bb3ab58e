"""Exact Gaussian elimination and homology of windowed complexes.

Everything runs over Fraction.  Pivots are chosen as the smallest nonzero
entry in absolute value (ties to the earliest row), which keeps intermediate
numerators modest; the reduced echelon form itself is unique, so canonical
representatives do not depend on the pivot rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .spaces import GradedLinearMap, GradedSpace, GradedVector, Window

ZERO = Fraction(0)


def _rref_in_place(rows, width, pivot_limit=None):
    """Reduce rows (lists of Fraction) to RREF; return pivot column list.

    Only columns < pivot_limit are eligible as pivots; trailing columns are
    carried along, which is how kernel tracking works.
    """
    if pivot_limit is None:
        pivot_limit = width
    pivots = []
    r = 0
    for col in range(pivot_limit):
        best = None
        for i in range(r, len(rows)):
            v = rows[i][col]
            if v:
                if best is None or abs(v) < abs(rows[best][col]):
                    best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                ri, rr = rows[i], rows[r]
                rows[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(col)
        r += 1
    return pivots


def rref(rows, width):
    """Nonzero rows of the reduced echelon form, plus pivot columns."""
    work = [list(map(Fraction, row)) for row in rows]
    pivots = _rref_in_place(work, width)
    return work[: len(pivots)], pivots


def rank(rows, width) -> int:
    return len(rref(rows, width)[1])


def kernel(rows, width):
    """Canonical basis (RREF rows) of {x : sum_i x_i * rows[i] = 0}."""
    s = len(rows)
    work = []
    for i, row in enumerate(rows):
        tail = [ZERO] * s
        tail[i] = Fraction(1)
        work.append(list(map(Fraction, row)) + tail)
    pivots = _rref_in_place(work, width + s, pivot_limit=width)
    combos = [row[width:] for row in work[len(pivots):]]
    out, _ = rref(combos, s)
    return out


class SpanSolver:
    """An echelonized span supporting membership and coordinate queries."""

    def __init__(self, rows, width):
        self.width = width
        self.nrows = len(rows)
        work = []
        for i, row in enumerate(rows):
            tail = [ZERO] * self.nrows
            tail[i] = Fraction(1)
            work.append(list(map(Fraction, row)) + tail)
        self.pivots = _rref_in_place(work, width + self.nrows, pivot_limit=width)
        self.echelon = [row[:width] for row in work[: len(self.pivots)]]
        self.tracking = [row[width:] for row in work[: len(self.pivots)]]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vec):
        """Residual of vec after projecting off the span, plus echelon coeffs."""
        v = list(map(Fraction, vec))
        coeffs = []
        for j, col in enumerate(self.pivots):
            c = v[col]
            coeffs.append(c)
            if c:
                row = self.echelon[j]
                v = [a - c * b for a, b in zip(v, row)]
        return v, coeffs

    def contains(self, vec) -> bool:
        residual, _ = self.reduce(vec)
        return not any(residual)

    def coordinates(self, vec):
        """Coefficients over the ORIGINAL rows, or None if vec is outside."""
        residual, coeffs = self.reduce(vec)
        if any(residual):
            return None
        out = [ZERO] * self.nrows
        for c, track in zip(coeffs, self.tracking):
            if c:
                out = [a + c * b for a, b in zip(out, track)]
        return out


@dataclass(frozen=True)
class HomologySummary:
    degree: int
    dim: int
    representatives: tuple
    trusted: bool


def _degree_matrix(d: GradedLinearMap, source_names, target_names):
    tindex = {n: i for i, n in enumerate(target_names)}
    rows = []
    for name in source_names:
        row = [ZERO] * len(target_names)
        for tn, c in d.column(name).terms.items():
            row[tindex[tn]] = c
        rows.append(row)
    return rows


def homology(d: GradedLinearMap, window: Window):
    """Homology of a complex (space, d) with d of degree -1 or +1.

    Returns {degree: HomologySummary} for every window degree where the space
    is nonzero.  Representatives are canonical (RREF of cycle residues mod
    boundaries).  A degree is trusted when both neighboring degrees are
    strictly inside the window, so truncation cannot distort it.
    """
    if d.source != d.target:
        raise ValidationError("homology expects an endomorphism-shaped differential")
    if d.degree not in (-1, 1):
        raise ValidationError("differential degree must be -1 or +1")
    dd = d.compose(d)
    if dd.columns:
        bad = sorted(dd.columns)[0]
        raise ValidationError("d^2 != 0, first failure on %r" % bad)
    space = d.source
    out = {}
    for n in window.degrees():
        here = space.names_in_degree(n)
        if not here:
            continue
        below = space.names_in_degree(n + d.degree)
        above = space.names_in_degree(n - d.degree)
        cycle_rows = kernel(_degree_matrix(d, here, below), len(below))
        boundary_rows, _ = rref(_degree_matrix(d, above, here), len(here))
        bspan = SpanSolver(boundary_rows, len(here))
        residues = []
        for row in cycle_rows:
            residual, _ = bspan.reduce(row)
            if any(residual):
                residues.append(residual)
        reps_rows, _ = rref(residues, len(here))
        reps = tuple(
            GradedVector(space, zip(here, row)) for row in reps_rows
        )
        assert len(reps) == len(cycle_rows) - len(boundary_rows)
        trusted = (n - d.degree) in window and (n + d.degree) in window
        out[n] = HomologySummary(n, len(reps), reps, trusted)
    return out
