"""Builtin example catalog.

Four small, fully worked instances used throughout the tests and exposed by
the `example` CLI command.  Each bundles a coalgebra, a bracket table, and a
(possibly zero) flat degree -1 map between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coalgebra import DGCoalgebra
from .errors import FormatError
from .linfinity import LInfinity
from .spaces import GradedLinearMap, GradedSpace


@dataclass(frozen=True)
class Example:
    name: str
    description: str
    coalgebra: DGCoalgebra
    target: LInfinity
    phi: GradedLinearMap


def _cp_coalgebra(names_degrees, counit):
    """Truncated polynomial-type diagonal: Delta(u_r) = sum u_i (x) u_(r-i)."""
    space = GradedSpace(names_degrees)
    names = space.names
    diagonal = {}
    for r, name in enumerate(names):
        diagonal[name] = {
            (names[i], names[r - i]): Fraction(1) for i in range(r + 1)
        }
    return DGCoalgebra(space, counit, diagonal)


def _primitive_coalgebra(names_degrees, counit):
    space = GradedSpace(names_degrees)
    diagonal = {}
    for name in space.names:
        if name == counit:
            diagonal[name] = {(counit, counit): Fraction(1)}
        else:
            diagonal[name] = {
                (name, counit): Fraction(1),
                (counit, name): Fraction(1),
            }
    return DGCoalgebra(space, counit, diagonal)


def _cp2_connected_sum() -> Example:
    C = _cp_coalgebra([("1", 0), ("u1", 2), ("u2", 4)], "1")
    L = LInfinity(
        GradedSpace([("a", 1), ("b", 1), ("c", 2), ("v", 4)]),
        3,
        [
            (2, ("a", "b"), {"c": 1}),
            (3, ("a", "a", "a"), {"v": 1}),
            (3, ("b", "b", "b"), {"v": 1}),
        ],
    )
    phi = GradedLinearMap(C.space, L.space, -1, {"u1": {"a": 1}})
    return Example(
        "cp2-connected-sum",
        "homology of a connected sum of two projective planes mapping in its"
        " ruling class",
        C, L, phi,
    )


def _s3y() -> Example:
    C = _primitive_coalgebra([("1", 0), ("alpha", 3)], "1")
    L = LInfinity(
        GradedSpace([("a", 1), ("b", 2), ("r", 2), ("s", 6)]),
        3,
        [(3, ("a", "b", "r"), {"s": 1})],
    )
    phi = GradedLinearMap(C.space, L.space, -1, {"alpha": {"b": 1}})
    return Example(
        "s3y",
        "a three-sphere mapping into a four-stage target with one ternary"
        " bracket",
        C, L, phi,
    )


def _regular_seq_i2() -> Example:
    C = _primitive_coalgebra([("1", 0)], "1")
    L = LInfinity(
        GradedSpace([("z", 1), ("y1", 1), ("u1", 2), ("y2", 3), ("u2", 6)]),
        4,
        [
            (2, ("z", "z"), {"u1": -1}),
            (2, ("y1", "y1"), {"u1": 1}),
            (2, ("y2", "y2"), {"u2": 1}),
            (4, ("z", "z", "z", "z"), {"u2": -1}),
        ],
    )
    phi = GradedLinearMap(C.space, L.space, -1)
    return Example(
        "regular-seq-i2",
        "two-step regular-sequence quotient with a quaternary correction"
        " bracket",
        C, L, phi,
    )


def _free_lie_cpinf() -> Example:
    C = _cp_coalgebra(
        [("x0", 0), ("x1", 2), ("x2", 4), ("x3", 6), ("x4", 8)], "x0"
    )
    L = LInfinity(
        GradedSpace(
            [("a1", 2), ("a2", 4), ("c12", 6), ("h112", 8), ("h212", 10)]
        ),
        2,
        [
            (2, ("a1", "a2"), {"c12": 1}),
            (2, ("a1", "c12"), {"h112": 1}),
            (2, ("a2", "c12"), {"h212": 1}),
        ],
    )
    phi = GradedLinearMap(C.space, L.space, -1)
    return Example(
        "free-lie-cpinf",
        "free bracket words of length at most three on two even generators,"
        " paired with a length-four truncated polynomial coalgebra",
        C, L, phi,
    )


_BUILDERS = {
    "cp2-connected-sum": _cp2_connected_sum,
    "s3y": _s3y,
    "regular-seq-i2": _regular_seq_i2,
    "free-lie-cpinf": _free_lie_cpinf,
}

_ALIASES = {"cp2": "cp2-connected-sum", "s3": "s3y"}

BUILTIN_NAMES = tuple(sorted(_BUILDERS))


def builtin(name: str) -> Example:
    full = _ALIASES.get(name, name)
    try:
        return _BUILDERS[full]()
    except KeyError:
        raise FormatError(
            "unknown example %r (choose from %s)"
            % (name, ", ".join(BUILTIN_NAMES))
        ) from None
