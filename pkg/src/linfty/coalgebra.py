"""Coaugmented cocommutative coalgebras and their finite-dimensional duals.

Both sides are basis-explicit.  The coalgebra differential lowers degree by
one; the algebra differential raises it by one.  Dualization uses the pairing

    <beta (x) beta'; b (x) b'> = (-1)^(|beta'| |b|) beta(b) beta'(b'),

which fixes all signs below: a product table lambda with b1*b2 = sum lambda b
dualizes to Delta(c_b) = sum (-1)^(|b1||b2|) lambda c_b1 (x) c_b2, and a degree
+1 differential d dualizes to delta(c_b) = (-1)^(|b|+1) sum <b; d b'> c_b'.
Both transforms are exactly involutive on named bases, and the differential
sign is the one that matches the dual-side formula <d beta; c> =
(-1)^|beta| <beta; delta c> used by the derivation-complex comparison.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError
from .spaces import GradedLinearMap, GradedSpace, GradedVector, as_coeff


def _norm_pairs(space, data):
    """name -> {(left, right): coeff}, validating names and coefficients."""
    out = {}
    for name, rows in (data or {}).items():
        space.degree(name)
        acc = {}
        if isinstance(rows, dict):
            rows = [(l, r, c) for (l, r), c in rows.items()]
        for left, right, coeff in rows:
            space.degree(left)
            space.degree(right)
            c = as_coeff(coeff)
            if not c:
                continue
            key = (left, right)
            acc[key] = acc.get(key, Fraction(0)) + c
            if not acc[key]:
                del acc[key]
        if acc:
            out[name] = acc
    return out


class DGCoalgebra:
    """A coalgebra with counit spanned by one degree-0 basis element."""

    def __init__(self, space: GradedSpace, counit: str, diagonal, differential=None):
        self.space = space
        if space.degree(counit) != 0:
            raise ValidationError("counit element %r must have degree 0" % counit)
        self.counit = counit
        self.diagonal_table = _norm_pairs(space, diagonal)
        if isinstance(differential, GradedLinearMap):
            if differential.degree != -1:
                raise ValidationError("coalgebra differential must have degree -1")
            self.differential = differential
        else:
            self.differential = GradedLinearMap(space, space, -1, {
                name: GradedVector(space, terms)
                for name, terms in (differential or {}).items()
            })
        self._iterated = {}

    def diagonal(self, name: str):
        """Delta(c) as {(left, right): coeff}."""
        self.space.degree(name)
        return dict(self.diagonal_table.get(name, {}))

    def reduced_names(self):
        return tuple(n for n in self.space.names if n != self.counit)

    def reduced_diagonal(self, name: str):
        """Delta(c) - c (x) 1 - 1 (x) c, defined away from the counit line."""
        if name == self.counit:
            raise ValidationError("reduced diagonal is undefined on the counit element")
        acc = dict(self.diagonal_table.get(name, {}))
        for key in ((name, self.counit), (self.counit, name)):
            acc[key] = acc.get(key, Fraction(0)) - 1
            if not acc[key]:
                del acc[key]
        return acc

    def iterated_diagonal(self, k: int, reduced: bool = False):
        """The (k-1)-fold diagonal into k tensor slots, expanded on the left.

        Returns {name: {k-tuple of names: coeff}}.  With reduced=True the
        counit line is stripped throughout (both input and all slots).
        """
        if k < 1:
            raise ValidationError("need at least one tensor slot")
        cached = self._iterated.get((k, reduced))
        if cached is not None:
            return cached
        names = self.reduced_names() if reduced else self.space.names
        if k == 1:
            out = {n: {(n,): Fraction(1)} for n in names}
        else:
            prev = self.iterated_diagonal(k - 1, reduced)
            out = {}
            for n in names:
                acc = {}
                for tup, c in prev[n].items():
                    head = tup[0]
                    expand = (
                        self.reduced_diagonal(head) if reduced
                        else self.diagonal_table.get(head, {})
                    )
                    for (l, r), d in expand.items():
                        key = (l, r) + tup[1:]
                        acc[key] = acc.get(key, Fraction(0)) + c * d
                        if not acc[key]:
                            del acc[key]
                out[n] = acc
        self._iterated[(k, reduced)] = out
        return out


def validate_coalgebra(C: DGCoalgebra):
    """All axiom failures as human-readable strings; empty list means valid."""
    problems = []
    space = C.space
    unit = C.counit

    for name in space.names:
        for (l, r), c in C.diagonal_table.get(name, {}).items():
            if space.degree(l) + space.degree(r) != space.degree(name):
                problems.append(
                    "diagonal of %s has inhomogeneous term %s(x)%s" % (name, l, r)
                )

    if C.diagonal(unit) != {(unit, unit): Fraction(1)}:
        problems.append("diagonal of the counit element must be 1(x)1")

    for name in space.names:
        left = {}
        right = {}
        for (l, r), c in C.diagonal_table.get(name, {}).items():
            if l == unit:
                right[r] = right.get(r, Fraction(0)) + c
            if r == unit:
                left[l] = left.get(l, Fraction(0)) + c
        if GradedVector(space, left) != space.unit_vector(name):
            problems.append("counit law fails on the left factor of %s" % name)
        if GradedVector(space, right) != space.unit_vector(name):
            problems.append("counit law fails on the right factor of %s" % name)

    for name in space.names:
        lhs = {}
        rhs = {}
        for (a, b), c in C.diagonal_table.get(name, {}).items():
            for (a1, a2), d in C.diagonal_table.get(a, {}).items():
                key = (a1, a2, b)
                lhs[key] = lhs.get(key, Fraction(0)) + c * d
            for (b1, b2), d in C.diagonal_table.get(b, {}).items():
                key = (a, b1, b2)
                rhs[key] = rhs.get(key, Fraction(0)) + c * d
        lhs = {k: v for k, v in lhs.items() if v}
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            problems.append("diagonal is not coassociative on %s" % name)

    for name in space.names:
        flipped = {}
        for (l, r), c in C.diagonal_table.get(name, {}).items():
            sign = -1 if (space.degree(l) * space.degree(r)) % 2 else 1
            flipped[(r, l)] = flipped.get((r, l), Fraction(0)) + sign * c
        flipped = {k: v for k, v in flipped.items() if v}
        if flipped != C.diagonal_table.get(name, {}):
            problems.append("diagonal is not cocommutative on %s" % name)

    d = C.differential
    if not d.apply(unit).is_zero():
        problems.append("differential does not kill the counit element")
    dd = d.compose(d)
    for name in sorted(dd.columns):
        problems.append("differential does not square to zero on %s" % name)

    for name in space.names:
        lhs = {}
        for cname, c in d.apply(name).terms.items():
            for (l, r), e in C.diagonal_table.get(cname, {}).items():
                lhs[(l, r)] = lhs.get((l, r), Fraction(0)) + c * e
        rhs = {}
        for (l, r), c in C.diagonal_table.get(name, {}).items():
            for l2, e in d.apply(l).terms.items():
                key = (l2, r)
                rhs[key] = rhs.get(key, Fraction(0)) + c * e
            sign = -1 if space.degree(l) % 2 else 1
            for r2, e in d.apply(r).terms.items():
                key = (l, r2)
                rhs[key] = rhs.get(key, Fraction(0)) + sign * c * e
        lhs = {k: v for k, v in lhs.items() if v}
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            problems.append("differential is not a coderivation on %s" % name)

    return problems


def is_primitively_cogenerated(C: DGCoalgebra, max_depth: int = None):
    """(flag, depths): depth of c = least n with the n-fold reduced diagonal
    of c equal to zero; None when no such n up to the bound exists."""
    bound = max_depth if max_depth is not None else len(C.reduced_names()) + 1
    depths = {}
    ok = True
    for name in C.reduced_names():
        depth = None
        for n in range(1, bound + 1):
            if not C.iterated_diagonal(n + 1, reduced=True).get(name):
                depth = n
                break
        depths[name] = depth
        if depth is None:
            ok = False
    return ok, depths


class CDGAlgebra:
    """A connected graded-commutative algebra with a degree +1 differential."""

    def __init__(self, space: GradedSpace, unit: str, products=(), differential=None):
        self.space = space
        if space.degree(unit) != 0:
            raise ValidationError("unit element %r must have degree 0" % unit)
        self.unit = unit
        self.table = {}
        if isinstance(products, dict):
            products = [(a, b, v) for (a, b), v in products.items()]
        for a, b, value in products:
            self._insert(a, b, value)
        if isinstance(differential, GradedLinearMap):
            if differential.degree != 1:
                raise ValidationError("algebra differential must have degree +1")
            self.differential = differential
        else:
            self.differential = GradedLinearMap(space, space, 1, {
                name: GradedVector(space, terms)
                for name, terms in (differential or {}).items()
            })

    def _insert(self, a, b, value):
        if not isinstance(value, GradedVector):
            value = GradedVector(self.space, value)
        if self.unit in (a, b):
            other = b if a == self.unit else a
            if value != self.space.unit_vector(other):
                raise ValidationError(
                    "product by the unit must reproduce %r" % other
                )
            return
        ia, ib = self.space.index(a), self.space.index(b)
        da, db = self.space.degree(a), self.space.degree(b)
        if ia > ib:
            a, b, ia, ib = b, a, ib, ia
            if (da * db) % 2:
                value = value.scale(-1)
        if ia == ib and da % 2:
            if not value.is_zero():
                raise ValidationError("square of odd element %r must vanish" % a)
            return
        key = (ia, ib)
        if key in self.table:
            value = self.table[key] + value
        if value.is_zero():
            self.table.pop(key, None)
        else:
            self.table[key] = value

    def multiply_basis(self, a: str, b: str) -> GradedVector:
        if a == self.unit:
            return self.space.unit_vector(b)
        if b == self.unit:
            return self.space.unit_vector(a)
        ia, ib = self.space.index(a), self.space.index(b)
        sign = 1
        if ia > ib:
            ia, ib = ib, ia
            if (self.space.degree(a) * self.space.degree(b)) % 2:
                sign = -1
        value = self.table.get((ia, ib))
        if value is None:
            return self.space.zero()
        return value.scale(sign)

    def multiply(self, va, vb) -> GradedVector:
        if isinstance(va, str):
            va = self.space.unit_vector(va)
        if isinstance(vb, str):
            vb = self.space.unit_vector(vb)
        out = self.space.zero()
        for a, ca in va.terms.items():
            for b, cb in vb.terms.items():
                part = self.multiply_basis(a, b)
                if not part.is_zero():
                    out = out + part.scale(ca * cb)
        return out


def validate_cdga(B: CDGAlgebra):
    """Axiom failures as strings; empty list means valid."""
    problems = []
    space = B.space
    names = space.names

    if any(space.degree(n) < 0 for n in names):
        problems.append("negatively graded elements are not allowed")
    if space.names_in_degree(0) != (B.unit,):
        problems.append("degree 0 must be spanned by the unit alone")

    for (ia, ib), value in B.table.items():
        a, b = names[ia], names[ib]
        want = space.degree(a) + space.degree(b)
        got = value.degree()
        if got is not None and got != want:
            problems.append("product %s*%s lands in the wrong degree" % (a, b))

    for i in range(len(names)):
        for j in range(i, len(names)):
            for k in range(j, len(names)):
                a, b, c = names[i], names[j], names[k]
                left = B.multiply(B.multiply_basis(a, b), space.unit_vector(c))
                right = B.multiply(space.unit_vector(a), B.multiply_basis(b, c))
                if left != right:
                    problems.append("product is not associative on (%s,%s,%s)" % (a, b, c))

    d = B.differential
    if not d.apply(B.unit).is_zero():
        problems.append("differential does not kill the unit")
    dd = d.compose(d)
    for name in sorted(dd.columns):
        problems.append("differential does not square to zero on %s" % name)

    for i in range(len(names)):
        for j in range(i, len(names)):
            a, b = names[i], names[j]
            lhs = d.apply(B.multiply_basis(a, b))
            rhs = B.multiply(d.apply(a), space.unit_vector(b))
            sign = -1 if space.degree(a) % 2 else 1
            rhs = rhs + B.multiply(space.unit_vector(a), d.apply(b)).scale(sign)
            if lhs != rhs:
                problems.append("differential is not a derivation on (%s,%s)" % (a, b))

    return problems


def dualize_cdga(B: CDGAlgebra) -> DGCoalgebra:
    """The dual coalgebra on the same named basis."""
    space = GradedSpace(B.space.basis())
    diagonal = {}
    for name in space.names:
        rows = []
        for b1 in space.names:
            for b2 in space.names:
                coeff = B.multiply_basis(b1, b2).coefficient(name)
                if coeff:
                    sign = -1 if (space.degree(b1) * space.degree(b2)) % 2 else 1
                    rows.append((b1, b2, sign * coeff))
        if rows:
            diagonal[name] = rows
    differential = {}
    for name in space.names:
        sign = 1 if space.degree(name) % 2 else -1
        terms = {}
        for b2 in space.names:
            coeff = B.differential.apply(b2).coefficient(name)
            if coeff:
                terms[b2] = sign * coeff
        if terms:
            differential[name] = terms
    return DGCoalgebra(space, B.unit, diagonal, differential)


def dualize_coalgebra(C: DGCoalgebra) -> CDGAlgebra:
    """The dual algebra on the same named basis; inverse of dualize_cdga."""
    space = GradedSpace(C.space.basis())
    products = []
    for name in space.names:
        for (b1, b2), coeff in C.diagonal_table.get(name, {}).items():
            if C.counit in (b1, b2):
                continue
            if space.index(b1) > space.index(b2):
                continue  # the cocommutative mirror of a pair already taken
            sign = -1 if (space.degree(b1) * space.degree(b2)) % 2 else 1
            products.append((b1, b2, {name: sign * coeff}))
    differential = {}
    for name in space.names:
        sign = 1 if space.degree(name) % 2 else -1
        for b2, coeff in C.differential.apply(name).terms.items():
            differential.setdefault(b2, {})[name] = sign * coeff
    return CDGAlgebra(space, C.counit, products, differential)
