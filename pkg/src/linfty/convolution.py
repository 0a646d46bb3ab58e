"""Bracket structures on spaces of coalgebra-to-algebra linear maps.

Graded maps from a differential coalgebra C into a bracket-bearing target L
carry brackets of every arity: push a basis element of C through the iterated
diagonal, apply the component maps slotwise, and feed the result to the target
bracket.  The arity-1 operation is the two-sided differential

    l_1(f) = l_1 o f + (-1)^(|f|+1) f o delta.

Everything is built on a degree window over the single-pair basis c@x with
|c@x| = |x| - |c|.  On top of that this module provides the flatness check
for degree -1 maps, twisting by a flat map, the two truncations (non-negative
part and universal cover), and the homotopy invariants read off a truncated
algebra: homology dimensions, nilpotency order, and Whitehead length of the
induced homology model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

from .coalgebra import DGCoalgebra
from .errors import DegreeError, NotMaurerCartan, ValidationError
from .homology import SpanSolver, homology, kernel, rref
from .linfinity import LInfinity, nilpotency_order, twist, whitehead_length
from .spaces import (
    DEFAULT_WINDOW,
    GradedLinearMap,
    GradedSpace,
    GradedVector,
    Window,
)


def pair_name(cname: str, xname: str) -> str:
    return "%s@%s" % (cname, xname)


@dataclass(frozen=True)
class MCMap:
    """A degree -1 map C -> L with vanishing curvature, plus its coordinates."""

    phi: GradedLinearMap
    vector: GradedVector


@dataclass
class ConvolutionAlgebra:
    coalgebra: DGCoalgebra
    target: LInfinity
    reduced: bool
    window: Window
    space: GradedSpace
    pairs: tuple            # (cname, xname) aligned with space.names
    table: LInfinity
    phi: GradedLinearMap = None      # the twist, when applied
    base: "ConvolutionAlgebra" = None  # untwisted origin of a twisted algebra
    kind: str = None                 # "nonneg" | "cover" for truncations
    ambient: "ConvolutionAlgebra" = None
    reps: dict = None                # truncated basis name -> ambient vector


def _coalgebra_names(C: DGCoalgebra, reduced: bool):
    return C.reduced_names() if reduced else C.space.names


def build_convolution(
    C: DGCoalgebra,
    L: LInfinity,
    reduced: bool = False,
    window: Window = DEFAULT_WINDOW,
) -> ConvolutionAlgebra:
    """The bracket table on window-degree maps C -> L (or reduced-C -> L)."""
    cnames = _coalgebra_names(C, reduced)
    pairs = []
    for c in cnames:
        for x in L.space.names:
            n = L.space.degree(x) - C.space.degree(c)
            if n in window:
                pairs.append((n, C.space.index(c), L.space.index(x), c, x))
    pairs.sort()
    pairs = tuple((c, x) for _, _, _, c, x in pairs)
    space = GradedSpace(
        (pair_name(c, x), L.space.degree(x) - C.space.degree(c))
        for c, x in pairs
    )

    entries = []

    # arity 1: postcompose with the target differential, precompose with delta
    delta_adj = {}
    for c2 in cnames:
        for c, coeff in C.differential.apply(c2).terms.items():
            delta_adj.setdefault(c, []).append((c2, coeff))
    for c, x in pairs:
        n = space.degree(pair_name(c, x))
        col = {}
        for u, coeff in L.eval([x]).terms.items():
            name = pair_name(c, u)
            if name in space:
                col[name] = col.get(name, Fraction(0)) + coeff
        sign = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
        for c2, coeff in delta_adj.get(c, ()):
            name = pair_name(c2, x)
            if name in space:
                col[name] = col.get(name, Fraction(0)) + sign * coeff
        vec = GradedVector(space, col)
        if not vec.is_zero():
            entries.append((1, (pair_name(c, x),), vec))

    # arity k >= 2: one diagonal lookup per canonical tuple
    for k in range(2, L.max_arity + 1):
        support = set(L.support(k))
        if not support:
            continue
        diag = C.iterated_diagonal(k, reduced=reduced)
        degs = [space.degree(n) for n in space.names]
        for combo in combinations_with_replacement(range(space.dim), k):
            tup = [pairs[i] for i in combo]
            skip = any(
                a == b and degs[a] % 2 == 0
                for a, b in zip(combo, combo[1:])
            )
            if skip:
                continue
            xs = tuple(sorted((x for _, x in tup), key=L.space.index))
            if xs not in support:
                continue
            val = L.eval([x for _, x in tup])
            if val.is_zero():
                continue
            # sign of moving each map past the earlier tensor slots
            exp = 0
            prefix = 0
            for t, (c, _) in enumerate(tup):
                if t:
                    exp += space.degree(pair_name(*tup[t])) * prefix
                prefix += C.space.degree(c)
            base_sign = -1 if exp % 2 else 1
            gamma = tuple(c for c, _ in tup)
            col = {}
            for c in cnames:
                m = diag.get(c, {}).get(gamma)
                if not m:
                    continue
                for u, coeff in val.terms.items():
                    name = pair_name(c, u)
                    if name in space:
                        col[name] = col.get(name, Fraction(0)) + base_sign * m * coeff
            vec = GradedVector(space, col)
            if not vec.is_zero():
                names = tuple(pair_name(c, x) for c, x in tup)
                entries.append((k, names, vec))

    table = LInfinity(space, max(L.max_arity, 1), entries)
    return ConvolutionAlgebra(C, L, reduced, window, space, pairs, table)


def hom_vector(A: ConvolutionAlgebra, phi: GradedLinearMap) -> GradedVector:
    """Coordinates of a linear map C -> L in the single-pair basis."""
    if phi.source != A.coalgebra.space or phi.target != A.target.space:
        raise ValidationError("map is not shaped C -> target")
    terms = {}
    for c in _coalgebra_names(A.coalgebra, A.reduced):
        for x, coeff in phi.apply(c).terms.items():
            name = pair_name(c, x)
            if name not in A.space:
                raise ValidationError(
                    "map component %s falls outside the window" % name
                )
            terms[name] = coeff
    if not A.reduced and not phi.apply(A.coalgebra.counit).is_zero():
        raise ValidationError("map must vanish on the counit line")
    return GradedVector(A.space, terms)


def mc_defects(C: DGCoalgebra, L: LInfinity, phi: GradedLinearMap):
    """Curvature of phi on every coalgebra basis element, window-free.

    Returns [(cname, defect in the target)] for the elements with nonzero
    curvature; empty list means phi is flat.
    """
    if phi.degree != -1:
        raise DegreeError("twisting maps must have degree -1")
    if not phi.apply(C.counit).is_zero():
        raise ValidationError("twisting maps must vanish on the counit line")
    out = []
    for c in C.reduced_names():
        defect = L.eval([phi.apply(c)]) + phi.apply(C.differential.apply(c))
        for k in range(2, L.max_arity + 1):
            scale = Fraction(1, factorial(k))
            for gamma, m in C.iterated_diagonal(k, reduced=True).get(c, {}).items():
                args = [phi.apply(g) for g in gamma]
                if any(a.is_zero() for a in args):
                    continue
                exp = sum(
                    (k - i - 1) * C.space.degree(g)
                    for i, g in enumerate(gamma[:-1])
                )
                term = L.eval(args).scale(m * scale)
                defect = defect + (term.scale(-1) if exp % 2 else term)
        if not defect.is_zero():
            out.append((c, defect))
    return out


def mc_check(A: ConvolutionAlgebra, phi: GradedLinearMap) -> MCMap:
    """Certify flatness; raises NotMaurerCartan naming the witnesses."""
    bad = mc_defects(A.coalgebra, A.target, phi)
    if bad:
        raise NotMaurerCartan(
            "curvature is nonzero on %s" % ", ".join(name for name, _ in bad)
        )
    return MCMap(phi, hom_vector(A, phi))


def twist_convolution(A: ConvolutionAlgebra, phi, j_max: int = 16) -> ConvolutionAlgebra:
    """The same pair space with brackets perturbed by a flat degree -1 map."""
    if A.phi is not None:
        raise ValidationError("algebra is already twisted")
    mc = phi if isinstance(phi, MCMap) else mc_check(A, phi)
    table = twist(A.table, mc.vector, j_max=j_max, check=False)
    return ConvolutionAlgebra(
        A.coalgebra, A.target, A.reduced, A.window, A.space, A.pairs,
        table, phi=mc.phi, base=A,
    )


_CUTS = {"nonneg": 0, "cover": 1}


def truncate(A: ConvolutionAlgebra, kind: str) -> ConvolutionAlgebra:
    """Keep degrees above the cut whole, the cut degree only on cycles.

    kind "nonneg" cuts at degree 0, "cover" at degree 1.  Brackets are
    restricted: every bracket of kept elements is re-expressed in the kept
    basis, which is possible because cut-degree bracket values are cycles.
    """
    cut = _CUTS[kind]
    if A.kind is not None:
        raise ValidationError("algebra is already truncated")
    if A.window.lo > cut - 1:
        raise ValidationError("window too narrow to detect cut-degree cycles")
    space = A.space
    d = A.table.differential()

    kept = [n for n in space.names if space.degree(n) > cut]
    at_cut = list(space.names_in_degree(cut))
    below = list(space.names_in_degree(cut - 1))
    rows = []
    for n in at_cut:
        col = d.apply(n)
        rows.append([col.coefficient(b) for b in below])
    cycle_rows = kernel(rows, len(below)) if at_cut else []

    reps = {}
    names = []
    synth = 0
    for row in cycle_rows:
        vec = GradedVector(space, zip(at_cut, row))
        nz = vec.items()
        if len(nz) == 1 and nz[0][1] == 1:
            name = nz[0][0]
        else:
            name = "cyc%d_%d" % (cut, synth)
            synth += 1
        names.append((name, cut))
        reps[name] = vec
    for n in kept:
        names.append((n, space.degree(n)))
        reps[n] = space.unit_vector(n)

    tspace = GradedSpace(names)
    cut_solver = SpanSolver(cycle_rows, len(at_cut))
    cut_names = [name for name, degc in names if degc == cut]

    def express(vec: GradedVector) -> GradedVector:
        out = {}
        residue = [Fraction(0)] * len(at_cut)
        for n, coeff in vec.terms.items():
            degn = space.degree(n)
            if degn > cut:
                out[n] = coeff
            elif degn == cut:
                residue[at_cut.index(n)] += coeff
            else:
                raise ValidationError(
                    "bracket escapes the truncation through degree %d" % degn
                )
        if any(residue):
            coords = cut_solver.coordinates(residue)
            if coords is None:
                raise ValidationError(
                    "cut-degree bracket value is not a cycle"
                )
            for name, coeff in zip(cut_names, coords):
                if coeff:
                    out[name] = out.get(name, Fraction(0)) + coeff
        return GradedVector(tspace, out)

    entries = []
    tdegs = [tspace.degree(n) for n in tspace.names]
    for k in range(1, A.table.max_arity + 1):
        if not A.table.tables.get(k):
            continue
        for combo in combinations_with_replacement(range(tspace.dim), k):
            tnames = [tspace.names[i] for i in combo]
            if any(
                a == b and tdegs[a] % 2 == 0
                for a, b in zip(combo, combo[1:])
            ):
                continue
            val = A.table.eval([reps[n] for n in tnames])
            if val.is_zero():
                continue
            entries.append((k, tuple(tnames), express(val)))

    table = LInfinity(tspace, A.table.max_arity, entries)
    return ConvolutionAlgebra(
        A.coalgebra, A.target, A.reduced, A.window, tspace, None,
        table, phi=A.phi, base=A.base, kind=kind, ambient=A, reps=reps,
    )


def truncate_nonneg(A: ConvolutionAlgebra) -> ConvolutionAlgebra:
    return truncate(A, "nonneg")


def truncate_universal_cover(A: ConvolutionAlgebra) -> ConvolutionAlgebra:
    return truncate(A, "cover")


# -- homotopy invariants of a truncated algebra -------------------------------

@dataclass(frozen=True)
class InvariantsRecord:
    kind: str
    dims: dict          # degree -> homology dimension
    trusted: dict       # degree -> bool (window-complete degrees)
    classes: dict       # degree -> tuple of class names
    nil_twisted: object
    nil_untwisted: object
    wh_twisted: object
    wh_untwisted: object
    model_twisted: LInfinity = None    # induced binary table on classes
    model_untwisted: LInfinity = None
    reps: dict = None                  # class name -> representing cycle


def truncated_homology(A: ConvolutionAlgebra):
    """Per-degree homology summaries of a truncated algebra's differential."""
    if A.kind is None:
        raise ValidationError("homology invariants expect a truncated algebra")
    cut = _CUTS[A.kind]
    # widen one step down so the cut degree itself is judged trusted: its
    # incoming boundaries all live inside the truncated space already
    return {
        n: s
        for n, s in homology(
            A.table.differential(), Window(cut - 1, A.window.hi)
        ).items()
        if n >= cut
    }


def homology_model(A: ConvolutionAlgebra):
    """Minimal binary-bracket model on the homology classes of a truncation.

    Returns (model, classes) where classes maps each new name h<deg>_<i> to
    its representing cycle.  The bracket of two representatives is a cycle;
    its class coordinates define the induced table.
    """
    summaries = truncated_homology(A)
    space = A.space
    d = A.table.differential()

    names = []
    classes = {}
    solvers = {}
    for n in sorted(summaries):
        s = summaries[n]
        here = list(space.names_in_degree(n))
        hrows = [[v.coefficient(nm) for nm in here] for v in s.representatives]
        above = space.names_in_degree(n + 1)
        brows, _ = rref(
            [[d.apply(a).coefficient(nm) for nm in here] for a in above],
            len(here),
        )
        solvers[n] = (here, SpanSolver(hrows + brows, len(here)), len(hrows))
        for i, rep in enumerate(s.representatives):
            cname = "h%d_%d" % (n, i)
            names.append((cname, n))
            classes[cname] = rep

    mspace = GradedSpace(names)

    def project(vec: GradedVector) -> GradedVector:
        if vec.is_zero():
            return mspace.zero()
        n = vec.degree()
        if n not in solvers:
            raise ValidationError("bracket value in degree %d carries no classes" % n)
        here, solver, hcount = solvers[n]
        coords = solver.coordinates([vec.coefficient(nm) for nm in here])
        if coords is None:
            raise ValidationError("bracket of cycles failed to be a cycle")
        return GradedVector(
            mspace,
            {"h%d_%d" % (n, i): c for i, c in enumerate(coords[:hcount])},
        )

    entries = []
    mnames = mspace.names
    for i, j in combinations_with_replacement(range(len(mnames)), 2):
        a, b = mnames[i], mnames[j]
        if i == j and mspace.degree(a) % 2 == 0:
            continue
        val = A.table.eval([classes[a], classes[b]])
        if val.is_zero():
            continue
        pv = project(val)
        if not pv.is_zero():
            entries.append((2, (a, b), pv))
    model = LInfinity(mspace, 2, entries)
    return model, classes


def untwisted_companion(A: ConvolutionAlgebra) -> ConvolutionAlgebra:
    """The truncation of the untwisted origin, cut along its own cycles."""
    if A.kind is None:
        raise ValidationError("expected a truncated algebra")
    if A.base is None:
        return A
    return truncate(A.base, A.kind)


def mapping_space_invariants(
    A: ConvolutionAlgebra, i_max: int = 10, len_max: int = 8
) -> InvariantsRecord:
    """Homology dimensions, nilpotency, and Whitehead data of a truncation."""
    summaries = truncated_homology(A)
    companion = untwisted_companion(A)
    model_tw, classes_tw = homology_model(A)
    model_un, _ = homology_model(companion)
    return InvariantsRecord(
        kind=A.kind,
        dims={n: s.dim for n, s in summaries.items()},
        trusted={n: s.trusted for n, s in summaries.items()},
        classes={
            n: tuple(
                nm for nm in model_tw.space.names if model_tw.space.degree(nm) == n
            )
            for n in summaries
        },
        nil_twisted=nilpotency_order(A.table, i_max),
        nil_untwisted=nilpotency_order(companion.table, i_max),
        wh_twisted=whitehead_length(model_tw, len_max),
        wh_untwisted=whitehead_length(model_un, len_max),
        model_twisted=model_tw,
        model_untwisted=model_un,
        reps=classes_tw,
    )
