"""Free graded-commutative algebras dual to finite bracket tables.

A SullivanCDGA is Lambda(V) for a positively graded generator space V, with a
differential given on generators by rational combinations of canonically
sorted monomials (sorted by (degree, name); words with a repeated odd factor
vanish).

The dictionary with bracket tables runs through the pairing of Lambda^j(V)
with the j-th exterior power of the shifted space: for a basis element u of
the bracket side, its dual generator is written u^ in cohomological degree
|u|+1, and the arity-j bracket corresponds to the weight-j part of the
differential through

    <d v; s x_1 ^ ... ^ s x_j>
        = (-1)^(|v| + sum_t (j-t)|s x_t|) <v; s [x_1,...,x_j]>,

with the arguments sorted by (dual degree, dual name).  Pairing a sorted
monomial against the matching sorted wedge contributes the multiplicity
factorials of repeated factors and the sign (-1)^C(o,2), where o counts the
odd-degree dual factors.  Squaring to zero of d is then equivalent to the
generalized Jacobi identities of the table, which is what the tests pin.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import BudgetExceeded, ValidationError
from .linfinity import LInfinity
from .signs import sort_koszul
from .spaces import GradedSpace, GradedVector, as_coeff


def normalize_monomial(gens: GradedSpace, names):
    """Canonical form of a word: ((sorted names), koszul sign) or (None, 0)."""
    degs = [gens.degree(n) for n in names]
    keys = [(gens.degree(n), n) for n in names]
    sorted_keys, sign, repeated_odd = sort_koszul(keys, degs)
    if repeated_odd:
        return None, 0
    return tuple(n for _, n in sorted_keys), sign


class SullivanCDGA:
    """Lambda(V) with a differential specified on generators by monomials."""

    def __init__(self, generators: GradedSpace, differential=None):
        for name in generators.names:
            if generators.degree(name) < 1:
                raise ValidationError(
                    "generator %r must have positive degree" % name
                )
        self.generators = generators
        self.differential = {}
        for gen, rows in (differential or {}).items():
            want = generators.degree(gen) + 1
            if isinstance(rows, dict):
                rows = rows.items()
            acc = {}
            for word, coeff in rows:
                c = as_coeff(coeff)
                if not c:
                    continue
                mon, sign = normalize_monomial(generators, tuple(word))
                if mon is None:
                    continue
                got = sum(generators.degree(n) for n in mon)
                if got != want:
                    raise ValidationError(
                        "d(%s) has a term of degree %d, expected %d"
                        % (gen, got, want)
                    )
                acc[mon] = acc.get(mon, Fraction(0)) + sign * c
                if not acc[mon]:
                    del acc[mon]
            if acc:
                self.differential[gen] = acc

    def d_generator(self, gen: str):
        self.generators.degree(gen)
        return dict(self.differential.get(gen, {}))

    def d_monomial(self, mon):
        """Extend d as a derivation to a canonical word."""
        out = {}
        prefix_deg = 0
        for t, gen in enumerate(mon):
            sign_t = -1 if prefix_deg % 2 else 1
            for part, c in self.differential.get(gen, {}).items():
                word = mon[:t] + part + mon[t + 1:]
                key, s = normalize_monomial(self.generators, word)
                if key is None:
                    continue
                out[key] = out.get(key, Fraction(0)) + sign_t * s * c
                if not out[key]:
                    del out[key]
            prefix_deg += self.generators.degree(gen)
        return out

    def d_poly(self, poly):
        out = {}
        for mon, c in poly.items():
            for key, d in self.d_monomial(mon).items():
                out[key] = out.get(key, Fraction(0)) + c * d
                if not out[key]:
                    del out[key]
        return out

    def multiply(self, left, right):
        """Product of two monomial polynomials ({word: coeff} dicts)."""
        out = {}
        for m1, c1 in left.items():
            for m2, c2 in right.items():
                key, s = normalize_monomial(self.generators, m1 + m2)
                if key is None:
                    continue
                out[key] = out.get(key, Fraction(0)) + s * c1 * c2
                if not out[key]:
                    del out[key]
        return out

    def check(self):
        """d^2 failures on generators (enough: d^2 is a derivation)."""
        problems = []
        for gen in self.generators.names:
            sq = self.d_poly(self.d_generator(gen))
            if sq:
                problems.append("d^2 is nonzero on %s" % gen)
        return problems

    def weights(self):
        """Word lengths appearing in the differential."""
        out = set()
        for rows in self.differential.values():
            out.update(len(m) for m in rows)
        return sorted(out)


def _dual_name(name: str) -> str:
    return name[:-1] if name.endswith("^") else name + "^"


def _pairing_sign(odd_dual_count: int) -> int:
    return -1 if (odd_dual_count * (odd_dual_count - 1) // 2) % 2 else 1


def _multiplicity_factor(names) -> int:
    out = 1
    run = 1
    for a, b in zip(names, names[1:]):
        run = run + 1 if a == b else 1
        out *= run if a == b else 1
    return out


def cdga_of(L: LInfinity) -> SullivanCDGA:
    """The free algebra dual to a non-negatively graded bracket table."""
    for name in L.space.names:
        if L.space.degree(name) < 0:
            raise ValidationError(
                "dualization needs a non-negatively graded table; %r has degree %d"
                % (name, L.space.degree(name))
            )
    dual_basis = sorted(
        ((n + "^", L.space.degree(n) + 1) for n in L.space.names),
        key=lambda p: (p[1], p[0]),
    )
    gens = GradedSpace(dual_basis)
    diff = {}
    for arity, names, _ in L.entries():
        ordered = tuple(
            sorted(names, key=lambda n: (L.space.degree(n) + 1, n + "^"))
        )
        vec = L.eval(ordered)
        if vec.is_zero():
            continue
        decal = sum(
            (arity - t) * (L.space.degree(ordered[t - 1]) + 1)
            for t in range(1, arity)
        )
        odd_duals = sum(1 for n in ordered if L.space.degree(n) % 2 == 0)
        pair = _pairing_sign(odd_duals)
        mult = _multiplicity_factor(ordered)
        mon = tuple(n + "^" for n in ordered)
        for u, c in vec.terms.items():
            exp = (L.space.degree(u) + 1 + decal) % 2
            kappa = c * pair * (-1 if exp else 1) / mult
            row = diff.setdefault(u + "^", {})
            row[mon] = row.get(mon, Fraction(0)) + kappa
            if not row[mon]:
                del row[mon]
    diff = {g: rows for g, rows in diff.items() if rows}
    return SullivanCDGA(gens, diff)


def linfty_of(A: SullivanCDGA) -> LInfinity:
    """The bracket table dual to a free algebra; inverse of cdga_of."""
    gens = A.generators
    basis = [(_dual_name(g), gens.degree(g) - 1) for g in gens.names]
    space = GradedSpace(basis)
    max_arity = 1
    for rows in A.differential.values():
        for mon in rows:
            max_arity = max(max_arity, len(mon))
    entries = []
    for g in gens.names:
        u = _dual_name(g)
        for mon, kappa in A.d_generator(g).items():
            j = len(mon)
            names = tuple(_dual_name(m) for m in mon)
            decal = sum((j - t) * gens.degree(mon[t - 1]) for t in range(1, j))
            odd_duals = sum(1 for m in mon if gens.degree(m) % 2)
            exp = (gens.degree(g) + decal) % 2
            c = kappa * _pairing_sign(odd_duals) * (-1 if exp else 1)
            c *= _multiplicity_factor(mon)
            entries.append((j, names, {u: c}))
    return LInfinity(space, max_arity, entries)


def monomial_basis(A: SullivanCDGA, top: int, cap: int = 200000):
    """Canonical monomials of each degree 0..top, graded-lex ordered."""
    order = sorted(A.generators.names, key=lambda n: (A.generators.degree(n), n))
    out = {d: [] for d in range(top + 1)}
    count = 0

    def rec(start, deg, word):
        nonlocal count
        count += 1
        if count > cap:
            raise BudgetExceeded("monomial enumeration passed %d entries" % cap)
        out[deg].append(tuple(word))
        for t in range(start, len(order)):
            g = order[t]
            d = A.generators.degree(g)
            if deg + d > top:
                continue
            if d % 2 and word and word[-1] == g:
                continue
            word.append(g)
            rec(t, deg + d, word)
            word.pop()

    rec(0, 0, [])
    return out


def cdga_cohomology(A: SullivanCDGA, max_degree: int, cap: int = 200000):
    """Cohomology dimensions {n: dim} for 0 <= n <= max_degree."""
    from .homology import rank

    mons = monomial_basis(A, max_degree + 1, cap)
    ranks = {}
    for n in range(max_degree + 1):
        target_index = {m: i for i, m in enumerate(mons.get(n + 1, []))}
        rows = []
        for mon in mons[n]:
            row = [Fraction(0)] * len(target_index)
            for key, c in A.d_monomial(mon).items():
                row[target_index[key]] = c
            rows.append(row)
        ranks[n] = rank(rows, len(target_index))
    dims = {}
    for n in range(max_degree + 1):
        cycles = len(mons[n]) - ranks[n]
        dims[n] = cycles - (ranks[n - 1] if n > 0 else 0)
    return dims
