"""Randomized instance builders shared across the test modules.

Every builder takes a seeded random.Random so suites are reproducible.
The bracket tables produced here are nilpotent by construction: brackets
only land in inert center elements, so generalized Jacobi holds term by
term and the lower central series stops on its own.
"""

from fractions import Fraction

from linfty.coalgebra import DGCoalgebra, validate_coalgebra
from linfty.convolution import mc_defects
from linfty.linfinity import LInfinity
from linfty.spaces import GradedLinearMap, GradedSpace


def inert_center_table(rng, max_basis=6, max_arity=4):
    """A bracket table whose outputs are central, hence honestly nilpotent.

    Generators get random small degrees; each chosen arity adds one entry
    from generator tuples into a fresh center element whose degree is
    forced by the arity rule.  Center elements never appear as inputs.
    """
    n_gen = rng.randint(2, max(2, max_basis - 2))
    gens = [("g%d" % i, rng.randint(1, 4)) for i in range(n_gen)]
    entries = []
    extra = []
    arity_top = rng.randint(2, max_arity)
    for arity in range(2, arity_top + 1):
        if len(gens) + len(extra) >= max_basis:
            break
        if rng.random() < 0.25:
            continue
        names = sorted(
            (rng.choice(gens)[0] for _ in range(arity)),
            key=lambda nm: [g[0] for g in gens].index(nm),
        )
        degs = {nm: d for nm, d in gens}
        # a repeated even slot would force the entry to vanish; reroll once
        if any(
            a == b and degs[a] % 2 == 0 for a, b in zip(names, names[1:])
        ):
            names = sorted(g[0] for g in rng.sample(gens, min(arity, len(gens))))
            if len(names) < arity:
                continue
        zdeg = sum(degs[nm] for nm in names) + arity - 2
        znm = "z%d" % len(extra)
        extra.append((znm, zdeg))
        entries.append((arity, tuple(names), {znm: rng.choice([1, -1, 2])}))
    if rng.random() < 0.5 and len(gens) + len(extra) < max_basis:
        src, sdeg = rng.choice(gens)
        znm = "z%d" % len(extra)
        extra.append((znm, sdeg - 1))
        entries.append((1, (src,), {znm: 1}))
    space = GradedSpace(gens + extra)
    return LInfinity(space, max(2, arity_top), entries)


def random_coalgebra(rng, max_basis=5):
    """Cocommutative, coassociative, counital; sometimes with differential."""
    basis = [("1", 0)]
    diag = {"1": {("1", "1"): 1}}
    dcols = {}
    n = rng.randint(1, max_basis - 1)
    for i in range(n):
        nm = "c%d" % i
        basis.append((nm, rng.randint(1, 5)))
        diag[nm] = {(nm, "1"): 1, ("1", nm): 1}
    if n >= 2 and rng.random() < 0.4:
        # one product pair: primitive part plus c0 (x) c1 and its flip
        g1 = dict(basis)["c0"]
        g2 = dict(basis)["c1"]
        nm = "c%d" % n
        basis.append((nm, g1 + g2))
        sign = -1 if (g1 * g2) % 2 else 1
        diag[nm] = {
            (nm, "1"): 1, ("1", nm): 1, ("c0", "c1"): 1, ("c1", "c0"): sign,
        }
    elif n >= 2 and rng.random() < 0.4:
        # a differential strand: delta c1 = c0 needs |c1| = |c0| + 1
        degs = dict(basis)
        if degs["c1"] != degs["c0"] + 1:
            basis = [(nm, d) for nm, d in basis if nm != "c1"]
            basis.append(("c1", degs["c0"] + 1))
        dcols["c1"] = {"c0": 1}
    space = GradedSpace(basis)
    d = GradedLinearMap(space, space, -1, dcols)
    C = DGCoalgebra(space, "1", diag, d)
    assert validate_coalgebra(C) == []
    return C


def random_phi(rng, C, L):
    """A sparse degree -1 map, kept only when it is Maurer-Cartan."""
    delta_hit = set()
    for col in C.differential.columns.values():
        delta_hit.update(nm for nm, _ in col.items())
    cols = {}
    for c in C.reduced_names():
        if c in delta_hit or not C.differential.apply(c).is_zero():
            continue
        opts = [
            x for x in L.space.names
            if L.space.degree(x) == C.space.degree(c) - 1
        ]
        if opts and rng.random() < 0.5:
            cols[c] = {rng.choice(opts): rng.choice([1, -1, Fraction(1, 2)])}
    phi = GradedLinearMap(C.space, L.space, -1, cols)
    if any(not v.is_zero() for _, v in mc_defects(C, L, phi)):
        return GradedLinearMap(C.space, L.space, -1)
    return phi


def twist_pair_table():
    """Tiny negative-degree table carrying a one-parameter family of
    Maurer-Cartan elements; used for the twist composition laws."""
    space = GradedSpace([("e1", -1), ("e2", -1), ("g", -2)])
    return LInfinity(space, 3, [
        (1, ("e1",), {"g": 1}),
        (2, ("e1", "e2"), {"g": 1}),
        (3, ("e1", "e1", "e2"), {"g": 1}),
    ])
