"""Finite bracket tables: graded skew multilinear operations of each arity.

An algebra is a graded space plus, for each arity k = 1..max_arity, a sparse
table of bracket values on canonically sorted tuples of basis elements.  A
tuple is canonical when its basis indices are nondecreasing; evaluation on any
other ordering routes through the skew sign of the sorting permutation, and a
tuple repeating an even-degree element can only carry the zero value.

The k-ary bracket has degree k - 2: |[x_1,...,x_k]| = |x_1|+...+|x_k| + k - 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial
from typing import NamedTuple

from .errors import (
    DegreeError,
    NotMaurerCartan,
    SeriesTruncation,
    ValidationError,
)
from .homology import rref
from .signs import koszul_sign, shuffles, sort_skew
from .spaces import GradedLinearMap, GradedSpace, GradedVector


class LInfinity:
    """A graded space with skew-symmetric brackets up to a fixed arity."""

    def __init__(self, space: GradedSpace, max_arity: int, entries=()):
        if not isinstance(max_arity, int) or max_arity < 1:
            raise ValidationError("max_arity must be a positive integer")
        self.space = space
        self.max_arity = max_arity
        self.tables = {k: {} for k in range(1, max_arity + 1)}
        for arity, names, value in entries:
            self._insert(arity, tuple(names), value)
        self._audit()

    def _insert(self, arity, names, value):
        if not isinstance(arity, int) or arity < 1:
            raise ValidationError("bracket arity must be a positive integer")
        if arity > self.max_arity:
            raise ValidationError(
                "entry of arity %d exceeds max_arity %d" % (arity, self.max_arity)
            )
        if len(names) != arity:
            raise ValidationError("arity %d entry lists %d arguments" % (arity, len(names)))
        idxs = tuple(self.space.index(n) for n in names)
        degs = tuple(self.space.degree(n) for n in names)
        key, sign = sort_skew(idxs, degs)
        if not isinstance(value, GradedVector):
            value = GradedVector(self.space, value)
        value = value.scale(sign)
        table = self.tables[arity]
        if key in table:
            value = table[key] + value
        if value.is_zero():
            table.pop(key, None)
        else:
            table[key] = value

    def _audit(self):
        names = self.space.names
        for arity, table in self.tables.items():
            for key, value in table.items():
                degs = [self.space.degree(names[i]) for i in key]
                for a, b in zip(key, key[1:]):
                    if a == b and self.space.degree(names[a]) % 2 == 0:
                        raise ValidationError(
                            "nonzero bracket on repeated even-degree element %r"
                            % names[a]
                        )
                want = sum(degs) + arity - 2
                got = value.degree()
                if got != want:
                    raise DegreeError(
                        "arity-%d bracket on %s should have degree %d, got %s"
                        % (arity, tuple(names[i] for i in key), want, got)
                    )

    # -- evaluation ---------------------------------------------------------

    def bracket(self, names) -> GradedVector:
        """Bracket of basis elements given by name, any order."""
        names = tuple(names)
        k = len(names)
        if k == 0:
            raise ValidationError("bracket of arity 0 is not defined")
        if k > self.max_arity:
            return self.space.zero()
        idxs = tuple(self.space.index(n) for n in names)
        degs = tuple(self.space.degree(n) for n in names)
        key, sign = sort_skew(idxs, degs)
        value = self.tables[k].get(key)
        if value is None:
            return self.space.zero()
        return value.scale(sign)

    def eval(self, args) -> GradedVector:
        """Multilinear evaluation; args mix basis names and GradedVectors."""
        args = list(args)
        if not args:
            raise ValidationError("bracket of arity 0 is not defined")
        if len(args) > self.max_arity:
            return self.space.zero()
        factor_terms = []
        for a in args:
            if isinstance(a, str):
                factor_terms.append([(a, Fraction(1))])
            else:
                if a.space != self.space:
                    raise ValidationError("argument from a different space")
                if a.is_zero():
                    return self.space.zero()
                factor_terms.append(a.items())
        out = self.space.zero()
        for combo in product(*factor_terms):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            val = self.bracket([n for n, _ in combo])
            if not val.is_zero():
                out = out + val.scale(coeff)
        return out

    # -- inspection ---------------------------------------------------------

    def support(self, arity: int):
        """Canonical name tuples with nonzero bracket at this arity."""
        if arity < 1 or arity > self.max_arity:
            return ()
        names = self.space.names
        return tuple(
            tuple(names[i] for i in key) for key in sorted(self.tables[arity])
        )

    def entries(self):
        """All (arity, names, value) rows in canonical order."""
        names = self.space.names
        out = []
        for arity in sorted(self.tables):
            for key in sorted(self.tables[arity]):
                out.append(
                    (arity, tuple(names[i] for i in key), self.tables[arity][key])
                )
        return out

    def is_minimal(self) -> bool:
        return not self.tables.get(1)

    def is_dgl(self) -> bool:
        return all(not t for k, t in self.tables.items() if k > 2)

    def differential(self) -> GradedLinearMap:
        """The arity-1 table as a degree -1 map."""
        d = GradedLinearMap(self.space, self.space, -1)
        for key, value in self.tables.get(1, {}).items():
            d.set_column(self.space.names[key[0]], value)
        return d

    def same_tables(self, other: "LInfinity") -> bool:
        """Name-based comparison of bracket tables (basis order irrelevant)."""
        if dict(self.space.basis()) != dict(other.space.basis()):
            return False

        def as_dict(alg):
            # re-sort each tuple by (degree, name) so that two algebras
            # listing the same basis in different orders still compare equal
            out = {}
            for k, names, val in alg.entries():
                degs = [alg.space.degree(n) for n in names]
                keys = list(zip(degs, names))
                skey, sign = sort_skew(keys, degs)
                row = {n: c * sign for n, c in val.items()}
                out[(k, tuple(n for _, n in skey))] = row
            return out

        return as_dict(self) == as_dict(other)


# -- generalized Jacobi -----------------------------------------------------

@dataclass(frozen=True)
class JacobiWitness:
    arity: int
    names: tuple
    defect: GradedVector


def _submultiset(small, big) -> bool:
    """small and big are sorted tuples; is small a sub-multiset of big?"""
    it = iter(big)
    for s in small:
        for b in it:
            if b == s:
                break
            if b > s:
                return False
        else:
            return False
    return True


def check_jacobi(L: LInfinity, n_max: int = 4):
    """All generalized Jacobi violations on basis tuples of arity <= n_max.

    For each nondecreasing basis tuple (x_1..x_n) the checked identity is

        sum_{i+j=n+1} sum_{(i,n-i) shuffles s}
            sgn(s) * eps(s) * (-1)^(i(j-1))
            * [ [x_s(1),...,x_s(i)], x_s(i+1),...,x_s(n) ]  =  0.

    Returns a list of JacobiWitness records; empty means no violation found.
    """
    out = []
    names = L.space.names
    support_keys = {
        k: sorted(L.tables[k]) for k in L.tables if L.tables[k]
    }
    shuffle_cache = {}
    for n in range(1, n_max + 1):
        i_lo = max(1, n + 1 - L.max_arity)
        i_hi = min(n, L.max_arity)
        if i_lo > i_hi:
            continue
        for key in combinations_with_replacement(range(L.space.dim), n):
            if not any(
                any(_submultiset(s, key) for s in support_keys.get(i, ()))
                for i in range(i_lo, i_hi + 1)
            ):
                continue
            tup_names = [names[i] for i in key]
            degs = [L.space.degree(nm) for nm in tup_names]
            total = L.space.zero()
            for i in range(i_lo, i_hi + 1):
                j = n + 1 - i
                if (i, n) not in shuffle_cache:
                    shuffle_cache[(i, n)] = shuffles(i, n)
                for sigma in shuffle_cache[(i, n)]:
                    im = sigma.images
                    inner = L.bracket([tup_names[t - 1] for t in im[:i]])
                    if inner.is_zero():
                        continue
                    term = L.eval([inner] + [tup_names[t - 1] for t in im[i:]])
                    if term.is_zero():
                        continue
                    sign = sigma.sign() * koszul_sign(sigma, degs)
                    if (i * (j - 1)) % 2:
                        sign = -sign
                    total = total + term.scale(sign)
            if not total.is_zero():
                out.append(JacobiWitness(n, tuple(tup_names), total))
    return out


# -- curvature, twisting ----------------------------------------------------

class CurvatureResult(NamedTuple):
    value: GradedVector
    truncated: bool


def _check_degree_minus_one(z: GradedVector):
    d = z.degree()
    if d is not None and d != -1:
        raise DegreeError("twisting elements must sit in degree -1, got %d" % d)


def curvature(L: LInfinity, z: GradedVector, j_max: int = 16) -> CurvatureResult:
    """d z + sum_{k>=2} (1/k!) [z,...,z], summed while brackets can be nonzero."""
    _check_degree_minus_one(z)
    upper = min(j_max, L.max_arity)
    total = L.space.zero()
    last = L.space.zero()
    for k in range(1, upper + 1):
        term = L.eval([z] * k).scale(Fraction(1, factorial(k)))
        total = total + term
        if k == upper:
            last = term
    truncated = (upper == j_max) and not last.is_zero()
    return CurvatureResult(total, truncated)


def is_maurer_cartan(L: LInfinity, z: GradedVector, j_max: int = 16) -> bool:
    if j_max < L.max_arity:
        # cannot certify the tail; reuse the twisting cutoff rule
        _series_sum(L, [], z, j_max)
    return curvature(L, z, j_max).value.is_zero()


def _series_sum(L: LInfinity, fixed_names, z: GradedVector, j_max: int) -> GradedVector:
    """sum_j (1/j!) [z^j, fixed...]; raises SeriesTruncation when j_max bites.

    The cutoff is accepted silently only when the last three computed terms
    all vanish.
    """
    k = len(fixed_names)
    exact_upper = L.max_arity - k
    upper = min(j_max, exact_upper)
    total = L.space.zero()
    terms = []
    for j in range(0, upper + 1):
        args = [z] * j + list(fixed_names)
        term = L.eval(args).scale(Fraction(1, factorial(j))) if args else L.space.zero()
        terms.append(term)
        total = total + term
    if j_max < exact_upper:
        tail = terms[max(0, j_max - 2):]
        if len(tail) < 3 or any(not t.is_zero() for t in tail):
            raise SeriesTruncation(
                "bracket series still active at j_max=%d (max arity %d)"
                % (j_max, L.max_arity)
            )
    return total


def twist(L: LInfinity, z: GradedVector, j_max: int = 16, check: bool = True) -> LInfinity:
    """The algebra with brackets [x...]^z = sum_j (1/j!) [z,...,z, x...].

    z must satisfy the flatness equation (zero curvature); the twisted
    operations then obey the same generalized Jacobi identities.
    """
    _check_degree_minus_one(z)
    if check and not is_maurer_cartan(L, z, j_max):
        raise NotMaurerCartan(
            "curvature is nonzero: %r" % (curvature(L, z, j_max).value,)
        )
    zsupp = {L.space.index(n) for n in z.terms}
    names = L.space.names
    candidates = {k: set(L.tables[k]) for k in L.tables}
    for m, table in L.tables.items():
        for key in table:
            for mask in range(1, 1 << m):
                kept = tuple(key[t] for t in range(m) if not (mask >> t) & 1)
                removed = (key[t] for t in range(m) if (mask >> t) & 1)
                if kept and all(r in zsupp for r in removed):
                    candidates[len(kept)].add(kept)
    entries = []
    for k in sorted(candidates):
        for key in sorted(candidates[k]):
            tup_names = [names[i] for i in key]
            value = _series_sum(L, tup_names, z, j_max)
            if not value.is_zero():
                entries.append((k, tuple(tup_names), value))
    return LInfinity(L.space, L.max_arity, entries)


# -- filtration invariants --------------------------------------------------

def _row(space: GradedSpace, vec: GradedVector):
    return [vec.coefficient(n) for n in space.names]


def _partitions(total: int, parts: int, cap: int):
    """Non-increasing positive integer tuples of given length and sum, max part <= cap."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    lo = -(-total // parts)  # ceil: largest part at least the average
    for first in range(min(cap, total - parts + 1), lo - 1, -1):
        for rest in _partitions(total - first, parts - 1, first):
            out.append((first,) + rest)
    return out


def lower_central_series(L: LInfinity, i_max: int = 10):
    """Representatives of the bracket-length filtration F^1 >= F^2 >= ...

    F^1 is the whole space; F^i for i >= 2 is spanned by all brackets
    [v_1,...,v_k], k >= 2, with v_t in F^(i_t) and i_1+...+i_k = max(i, k).
    The list stops at the last nonzero stage or at i_max.
    """
    space = L.space
    if space.dim == 0:
        return []
    stages = [tuple(space.unit_vector(n) for n in space.names)]
    for i in range(2, i_max + 1):
        rows = []
        for k in range(2, L.max_arity + 1):
            if not L.tables.get(k):
                continue
            for part in _partitions(max(i, k), k, i - 1):
                groups = []
                pos = 0
                while pos < len(part):
                    end = pos
                    while end < len(part) and part[end] == part[pos]:
                        end += 1
                    level_reps = stages[part[pos] - 1]
                    groups.append(
                        list(combinations_with_replacement(level_reps, end - pos))
                    )
                    pos = end
                for picks in product(*groups):
                    args = [v for grp in picks for v in grp]
                    val = L.eval(args)
                    if not val.is_zero():
                        rows.append(_row(space, val))
        basis_rows, _ = rref(rows, space.dim)
        if not basis_rows:
            break
        stages.append(
            tuple(GradedVector(space, zip(space.names, r)) for r in basis_rows)
        )
    return stages


def nilpotency_order(L: LInfinity, i_max: int = 10):
    """Largest i with F^i nonzero; the string '>=i_max' when uncertified."""
    stages = lower_central_series(L, i_max)
    if not stages:
        return 0
    if len(stages) == i_max:
        return ">=%d" % i_max
    return len(stages)


def whitehead_length(L: LInfinity, len_max: int = 8):
    """Longest nonvanishing chain of binary brackets in a minimal algebra.

    W^1 = L, W^(n+1) = span [L, W^n]; returns the largest n with W^n != 0,
    or '>=len_max' when the chain is still alive at the cap.
    """
    if not L.is_minimal():
        raise ValidationError("whitehead_length needs a minimal algebra (no arity-1 table)")
    space = L.space
    if space.dim == 0:
        return 0
    reps = tuple(space.unit_vector(n) for n in space.names)
    for n in range(2, len_max + 1):
        rows = []
        for b in space.names:
            for w in reps:
                val = L.eval([b, w])
                if not val.is_zero():
                    rows.append(_row(space, val))
        basis_rows, _ = rref(rows, space.dim)
        if not basis_rows:
            return n - 1
        reps = tuple(GradedVector(space, zip(space.names, r)) for r in basis_rows)
    return ">=%d" % len_max
