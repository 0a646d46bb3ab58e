"""Exact linear algebra: echelon forms, kernels, spans, windowed homology."""

import random
from fractions import Fraction

import pytest

from linfty.errors import ValidationError
from linfty.homology import SpanSolver, homology, kernel, rank, rref
from linfty.spaces import GradedLinearMap, GradedSpace, Window


def _random_matrix(rng, nrows, width):
    return [
        [Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2])) for _ in range(width)]
        for _ in range(nrows)
    ]


def _row_shuffle(rng, rows):
    """Apply invertible row operations: scale, swap, add multiples."""
    out = [list(r) for r in rows]
    for _ in range(12):
        i, j = rng.randrange(len(out)), rng.randrange(len(out))
        op = rng.randrange(3)
        if op == 0:
            c = Fraction(rng.choice([1, -1, 2, 3]))
            out[i] = [c * x for x in out[i]]
        elif op == 1:
            out[i], out[j] = out[j], out[i]
        elif i != j:
            c = Fraction(rng.randint(-2, 2))
            out[i] = [a + c * b for a, b in zip(out[i], out[j])]
    return out


def test_rref_canonical_under_row_operations():
    rng = random.Random(11)
    for _ in range(40):
        rows = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        base, pivots = rref(rows, len(rows[0]))
        again, pivots2 = rref(_row_shuffle(rng, rows), len(rows[0]))
        assert base == again and pivots == pivots2


def test_rref_idempotent_and_pivot_shape():
    rows = [[1, 2, 0], [2, 4, 1], [0, 0, 3]]
    red, pivots = rref(rows, 3)
    assert pivots == [0, 2]
    assert rref(red, 3)[0] == red
    for r, col in zip(red, pivots):
        assert r[col] == 1
        # pivot columns are cleared everywhere else
        assert all(other[col] == 0 for other in red if other is not r)


def test_rank():
    assert rank([[1, 2], [2, 4]], 2) == 1
    assert rank([[0, 0]], 2) == 0
    assert rank([[1, 0], [0, 1], [1, 1]], 2) == 2


def test_kernel_orthogonality_and_dimension():
    rng = random.Random(23)
    for _ in range(40):
        width = rng.randint(1, 6)
        rows = _random_matrix(rng, rng.randint(1, 5), width)
        ker = kernel(rows, width)
        assert len(ker) == len(rows) - rank(rows, width)
        for combo in ker:
            hit = [Fraction(0)] * width
            for c, row in zip(combo, rows):
                hit = [a + c * b for a, b in zip(hit, row)]
            assert not any(hit)


def test_span_solver_membership_and_coordinates():
    rows = [[1, 0, 2], [0, 1, 1], [1, 1, 3]]  # rank 2
    span = SpanSolver(rows, 3)
    assert span.dim == 2
    assert span.contains([2, 1, 5])
    assert not span.contains([0, 0, 1])
    assert span.coordinates([0, 0, 1]) is None
    coords = span.coordinates([2, 3, 7])
    assert coords is not None
    rebuilt = [Fraction(0)] * 3
    for c, row in zip(coords, rows):
        rebuilt = [a + c * Fraction(b) for a, b in zip(rebuilt, row)]
    assert rebuilt == [Fraction(2), Fraction(3), Fraction(7)]


def test_span_solver_coordinates_randomized():
    rng = random.Random(7)
    for _ in range(30):
        width = rng.randint(1, 5)
        rows = _random_matrix(rng, rng.randint(1, 4), width)
        span = SpanSolver(rows, width)
        combo = [Fraction(rng.randint(-2, 2)) for _ in rows]
        vec = [Fraction(0)] * width
        for c, row in zip(combo, rows):
            vec = [a + c * b for a, b in zip(vec, row)]
        coords = span.coordinates(vec)
        assert coords is not None
        rebuilt = [Fraction(0)] * width
        for c, row in zip(coords, rows):
            rebuilt = [a + c * b for a, b in zip(rebuilt, row)]
        assert rebuilt == vec


def _complex(basis, columns, degree=-1):
    space = GradedSpace(basis)
    return GradedLinearMap(space, space, degree, columns)


def test_homology_circle():
    # one 0-cell, one 1-cell glued at both ends: d(e) = v - v = 0
    d = _complex([("v", 0), ("e", 1)], {})
    out = homology(d, Window(-1, 2))
    assert sorted(out) == [0, 1]
    assert out[0].dim == 1 and out[1].dim == 1
    assert out[0].trusted and out[1].trusted
    assert out[1].representatives[0].terms == {"e": Fraction(1)}


def test_homology_interval_contracts():
    d = _complex([("v0", 0), ("v1", 0), ("e", 1)], {"e": [("v1", 1), ("v0", -1)]})
    out = homology(d, Window(-1, 2))
    assert out[0].dim == 1 and out[1].dim == 0
    assert out[1].representatives == ()


def test_homology_representatives_canonical():
    # two independent cycles, one killed by a boundary
    d = _complex(
        [("a", 1), ("b", 1), ("f", 2)],
        {"f": [("a", 1), ("b", -1)]},
    )
    out = homology(d, Window(0, 3))
    assert out[1].dim == 1
    rep = out[1].representatives[0]
    # RREF normalizes the leading coefficient to 1
    lead = rep.items()[0]
    assert lead[1] == 1


def test_homology_rejects_bad_differentials():
    d = _complex([("a", 2), ("b", 1), ("c", 0)], {"a": [("b", 1)], "b": [("c", 1)]})
    with pytest.raises(ValidationError, match="d\\^2"):
        homology(d, Window(0, 2))
    with pytest.raises(ValidationError, match="degree"):
        homology(_complex([("a", 0)], {}, degree=-2), Window(0, 0))
    V = GradedSpace([("a", 0)])
    W = GradedSpace([("b", 0)])
    with pytest.raises(ValidationError):
        homology(GradedLinearMap(V, W, -1), Window(0, 0))


def test_homology_trust_marks_window_edges():
    d = _complex([("a", 0), ("b", 1), ("c", 2)], {})
    out = homology(d, Window(1, 2))
    assert not out[1].trusted  # degree 0 neighbor fell outside
    assert not out[2].trusted
    wide = homology(d, Window(-1, 3))
    assert all(s.trusted for s in wide.values())
