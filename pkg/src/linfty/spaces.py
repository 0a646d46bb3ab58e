"""Finite graded vector spaces over the rationals, with named bases.

Vectors are sparse dicts name -> Fraction.  Coefficients are always exact;
floats are rejected at the door so nothing downstream ever sees one.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeError, ValidationError


def as_coeff(value) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to an exact Fraction."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError("coefficients must be exact rationals, got %r" % (value,))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError("bad rational literal %r" % (value,)) from exc
    raise ValidationError("coefficients must be exact rationals, got %r" % (value,))


def coeff_str(value: Fraction) -> str:
    """Canonical string form: 'p' or 'p/q' with q > 0 in lowest terms."""
    return str(Fraction(value))


class GradedSpace:
    """An ordered list of named basis elements with integer degrees."""

    def __init__(self, basis):
        names = []
        degree = {}
        for name, deg in basis:
            if not isinstance(name, str) or not name:
                raise ValidationError("basis names must be nonempty strings")
            if name in degree:
                raise ValidationError("duplicate basis name %r" % name)
            if isinstance(deg, bool) or not isinstance(deg, int):
                raise ValidationError("degree of %r must be an integer" % name)
            names.append(name)
            degree[name] = deg
        self.names = tuple(names)
        self._degree = degree
        self._index = {n: i for i, n in enumerate(self.names)}

    def degree(self, name: str) -> int:
        try:
            return self._degree[name]
        except KeyError:
            raise ValidationError("unknown basis element %r" % name) from None

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValidationError("unknown basis element %r" % name) from None

    def basis(self):
        return tuple((n, self._degree[n]) for n in self.names)

    def names_in_degree(self, deg: int):
        return tuple(n for n in self.names if self._degree[n] == deg)

    def degrees(self):
        return sorted(set(self._degree.values()))

    @property
    def dim(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._degree

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.basis() == other.basis()

    def __repr__(self):
        return "GradedSpace(%r)" % (self.basis(),)

    def zero(self) -> "GradedVector":
        return GradedVector(self, ())

    def vector(self, terms) -> "GradedVector":
        return GradedVector(self, terms)

    def unit_vector(self, name: str) -> "GradedVector":
        return GradedVector(self, ((name, 1),))


class GradedVector:
    """Sparse vector in a GradedSpace.  Zero coefficients are dropped."""

    __slots__ = ("space", "terms")

    def __init__(self, space: GradedSpace, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        acc = {}
        for name, value in terms:
            space.degree(name)  # raises on unknown names
            c = as_coeff(value)
            if c:
                acc[name] = acc.get(name, Fraction(0)) + c
                if not acc[name]:
                    del acc[name]
        self.space = space
        self.terms = acc

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """The common degree of the support, or None for the zero vector."""
        degs = {self.space.degree(n) for n in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeError("vector is not homogeneous: degrees %s" % sorted(degs))
        return degs.pop()

    def coefficient(self, name: str) -> Fraction:
        return self.terms.get(name, Fraction(0))

    def items(self):
        """(name, coefficient) pairs in basis order."""
        idx = self.space.index
        return [(n, self.terms[n]) for n in sorted(self.terms, key=idx)]

    def __add__(self, other: "GradedVector") -> "GradedVector":
        if self.space is not other.space and self.space != other.space:
            raise ValidationError("cannot add vectors from different spaces")
        acc = dict(self.terms)
        for n, c in other.terms.items():
            acc[n] = acc.get(n, Fraction(0)) + c
            if not acc[n]:
                del acc[n]
        out = GradedVector.__new__(GradedVector)
        out.space = self.space
        out.terms = acc
        return out

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + other.scale(-1)

    def scale(self, value) -> "GradedVector":
        c = as_coeff(value)
        out = GradedVector.__new__(GradedVector)
        out.space = self.space
        out.terms = {n: a * c for n, a in self.terms.items()} if c else {}
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GradedVector)
            and self.space == other.space
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "<0>"
        return "<" + " + ".join("%s*%s" % (coeff_str(c), n) for n, c in self.items()) + ">"


class GradedLinearMap:
    """A degree-homogeneous linear map, stored column by column."""

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int, columns=None):
        self.source = source
        self.target = target
        self.degree = degree
        self.columns = {}
        for name, vec in (columns or {}).items():
            self.set_column(name, vec)

    def set_column(self, name: str, vec) -> None:
        if not isinstance(vec, GradedVector):
            vec = GradedVector(self.target, vec)
        want = self.source.degree(name) + self.degree
        got = vec.degree()
        if got is not None and got != want:
            raise DegreeError(
                "column %r should land in degree %d, got %d" % (name, want, got)
            )
        if vec.is_zero():
            self.columns.pop(name, None)
        else:
            self.columns[name] = vec

    def column(self, name: str) -> GradedVector:
        self.source.degree(name)
        return self.columns.get(name, self.target.zero())

    def apply(self, vec) -> GradedVector:
        if isinstance(vec, str):
            return self.column(vec)
        out = self.target.zero()
        for name, c in vec.terms.items():
            col = self.columns.get(name)
            if col is not None:
                out = out + col.scale(c)
        return out

    def compose(self, other: "GradedLinearMap") -> "GradedLinearMap":
        """self after other."""
        if other.target != self.source:
            raise ValidationError("composition mismatch")
        out = GradedLinearMap(other.source, self.target, self.degree + other.degree)
        for name in other.source.names:
            out.set_column(name, self.apply(other.column(name)))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GradedLinearMap)
            and self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and self.columns == other.columns
        )


class Window:
    """An inclusive degree range [lo, hi] used to bound hom-space builds."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: int, hi: int):
        if lo > hi:
            raise ValidationError("window lo=%d exceeds hi=%d" % (lo, hi))
        self.lo = lo
        self.hi = hi

    def __contains__(self, deg: int) -> bool:
        return self.lo <= deg <= self.hi

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def clip_low(self, lo: int) -> "Window":
        return Window(max(self.lo, lo), self.hi)

    def __eq__(self, other):
        return isinstance(other, Window) and (self.lo, self.hi) == (other.lo, other.hi)

    def __repr__(self):
        return "Window(%d, %d)" % (self.lo, self.hi)


DEFAULT_WINDOW = Window(-2, 12)


def suspend(space: GradedSpace) -> GradedSpace:
    """Shift every degree up by one; names gain an 's' prefix."""
    return GradedSpace((("s" + n, d + 1) for n, d in space.basis()))


def desuspend(space: GradedSpace) -> GradedSpace:
    """Shift every degree down by one, undoing suspend on names where possible."""
    def unname(n):
        return n[1:] if n.startswith("s") and len(n) > 1 else "s^-1" + n
    return GradedSpace(((unname(n), d - 1) for n, d in space.basis()))
