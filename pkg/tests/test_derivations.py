"""Derivations along an induced algebra map, and the two-route crosscheck."""

import random
from fractions import Fraction

import pytest

from linfty.coalgebra import dualize_coalgebra
from linfty.convolution import build_convolution
from linfty.derivations import (
    CrosscheckMismatch,
    CrosscheckReport,
    PhiDerivation,
    PhiMorphism,
    PositiveDerivationComplex,
    crosscheck,
    derivation_bracket,
    morphism_of,
    nabla_pairing,
    theta_pairing,
    twin_derivation,
    untwin,
)
from linfty.errors import DegreeError, NotMaurerCartan, ValidationError
from linfty.examples import BUILTIN_NAMES, builtin
from linfty.linfinity import LInfinity
from linfty.spaces import GradedLinearMap, GradedSpace, Window
from linfty.sullivan import cdga_of

from family import inert_center_table, random_coalgebra, random_phi


def _setup(name):
    ex = builtin(name)
    A = cdga_of(ex.target)
    B = dualize_coalgebra(ex.coalgebra)
    m = morphism_of(A, B, ex.coalgebra, ex.target, ex.phi)
    return ex, A, B, m


def test_morphism_images_and_degree_check():
    ex, A, B, m = _setup("s3y")
    assert {g: v.terms for g, v in m.images.items()} == {
        "b^": {"alpha": Fraction(1)}
    }
    assert m.image("a^").is_zero()
    with pytest.raises(DegreeError, match="image of a\\^"):
        PhiMorphism(A, B, {"a^": {"alpha": 1}})
    with pytest.raises(ValidationError):
        m.image("zebra")


def test_morphism_is_multiplicative():
    ex, A, B, m = _setup("cp2")
    assert m.apply_monomial(()).terms == {"1": Fraction(1)}
    assert m.apply_monomial(("a^",)).terms == {"u1": Fraction(1)}
    assert m.apply_monomial(("a^", "a^")).terms == {"u2": Fraction(1)}
    assert m.apply_monomial(("a^", "a^", "a^")).is_zero()
    assert m.apply_monomial(("b^",)).is_zero()
    assert m.apply_poly({("a^", "a^"): Fraction(2)}).terms == {"u2": Fraction(2)}


def test_consume_carries_the_parity_involution():
    _, _, _, m = _setup("cp2")
    assert m.consume(("a^",)).terms == {"u1": Fraction(1)}  # even source
    _, _, _, m3 = _setup("s3y")
    assert m3.consume(("b^",)).terms == {"alpha": Fraction(-1)}  # odd source
    assert m3.consume(()).terms == {"1": Fraction(1)}


def test_morphism_defects_detect_curvature():
    for name in BUILTIN_NAMES:
        assert _setup(name)[3].defects() == []

    ex, A, B, _ = _setup("cp2")
    phi = GradedLinearMap(
        ex.coalgebra.space, ex.target.space, -1, {"u1": {"a": 1, "b": 1}}
    )
    m = morphism_of(A, B, ex.coalgebra, ex.target, phi)
    assert [(g, v.terms) for g, v in m.defects()] == [
        ("c^", {"u2": Fraction(-1)})
    ]


def test_derivation_value_degree_check():
    _, _, _, m = _setup("s3y")
    theta = PhiDerivation(m, 3, {"r^": {"1": 1}})
    assert theta.value("r^").terms == {"1": Fraction(1)}
    assert theta.value("a^").is_zero() and not theta.is_zero()
    with pytest.raises(DegreeError, match="value on s\\^"):
        PhiDerivation(m, 3, {"s^": {"alpha": 1}})


def test_derivation_addition_guards():
    ex, A, B, m = _setup("s3y")
    theta = PhiDerivation(m, 3, {"r^": {"1": 1}})
    doubled = theta + theta
    assert doubled.value("r^").terms == {"1": Fraction(2)}
    assert (theta + theta.scale(-1)).is_zero()
    with pytest.raises(ValidationError):
        theta + PhiDerivation(m, 2, {"a^": {"1": 1}})
    rebuilt = morphism_of(A, B, ex.coalgebra, ex.target, ex.phi)
    with pytest.raises(ValidationError):
        theta + PhiDerivation(rebuilt, 3, {"r^": {"1": 1}})


def test_evaluate_extends_by_the_slot_rule():
    _, _, _, m2 = _setup("cp2")
    theta = PhiDerivation(m2, 0, {"a^": {"u1": 1}})
    assert theta.evaluate(("a^", "a^")).terms == {"u2": Fraction(2)}
    assert theta.evaluate(("b^",)).is_zero()

    _, _, _, m3 = _setup("s3y")
    eta = PhiDerivation(m3, 3, {"r^": {"1": 1}})
    # consume(b^) = -alpha and the prefix sign flips once more
    assert eta.evaluate(("b^", "r^")).terms == {"alpha": Fraction(1)}
    assert eta.evaluate(("r^", "b^")).terms == {"alpha": Fraction(-1)}


def test_delta_drops_the_degree_and_squares_to_zero():
    _, _, _, m = _setup("s3y")
    theta = PhiDerivation(m, 2, {"a^": {"1": 1}})
    d1 = theta.delta()
    assert d1.degree == 1
    assert d1.delta().is_zero()


def test_derivation_bracket_values():
    _, _, _, m = _setup("s3y")
    th_a = PhiDerivation(m, 2, {"a^": {"1": 1}})
    th_r = PhiDerivation(m, 3, {"r^": {"1": 1}})
    br = derivation_bracket([th_a, th_r])
    assert br.degree == 4
    assert {g: v.terms for g, v in br.values.items()} == {
        "s^": {"alpha": Fraction(-1)}
    }
    # even*odd: both orders agree
    rev = derivation_bracket([th_r, th_a])
    assert rev.degree == 4 and rev.values == br.values
    # odd repeated: forced to vanish
    assert derivation_bracket([th_r, th_r]).is_zero()
    with pytest.raises(ValidationError):
        derivation_bracket([])


def test_derivation_bracket_odd_odd_antisymmetry():
    _, _, _, m = _setup("free-lie-cpinf")
    th1 = PhiDerivation(m, 3, {"a1^": {"x0": 1}})
    th2 = PhiDerivation(m, 5, {"a2^": {"x0": 1}})
    fwd = derivation_bracket([th1, th2])
    rev = derivation_bracket([th2, th1])
    assert not fwd.is_zero()
    assert rev.values == {g: v.scale(-1) for g, v in fwd.values.items()}


def test_twin_and_untwin_are_inverse_on_the_window():
    for name in BUILTIN_NAMES:
        ex, A, B, m = _setup(name)
        conv = build_convolution(ex.coalgebra, ex.target)
        for nm in conv.space.names:
            f = conv.space.unit_vector(nm)
            theta = twin_derivation(conv, m, f)
            assert theta.degree == conv.space.degree(nm) + 1
            assert untwin(conv, theta) == f


def test_twin_needs_a_degree_on_zero_vectors():
    ex, _, _, m = _setup("cp2")
    conv = build_convolution(ex.coalgebra, ex.target)
    with pytest.raises(DegreeError, match="explicit map-space degree"):
        twin_derivation(conv, m, conv.space.zero())
    theta = twin_derivation(conv, m, conv.space.zero(), degree=0)
    assert theta.is_zero() and theta.degree == 1


def test_untwin_drops_pairs_outside_the_window():
    ex, _, _, m = _setup("cp2")
    conv = build_convolution(ex.coalgebra, ex.target)
    # u2@a sits in degree -3, below the default window
    theta = PhiDerivation(m, -2, {"a^": {"u2": 1}})
    assert untwin(conv, theta).is_zero()


def test_pairing_matrices_agree():
    # the generator-against-coalgebra matrix of the twin derivation equals
    # the matrix read off the map-space element directly
    for name in BUILTIN_NAMES:
        ex, A, B, m = _setup(name)
        conv = build_convolution(ex.coalgebra, ex.target)
        for nm in conv.space.names:
            f = conv.space.unit_vector(nm)
            assert theta_pairing(
                twin_derivation(conv, m, f), ex.coalgebra
            ) == nabla_pairing(conv, f)


def test_pairing_matrices_agree_on_random_instances():
    rng = random.Random(90125)
    done = 0
    while done < 10:
        C = random_coalgebra(rng)
        L = inert_center_table(rng)
        phi = random_phi(rng, C, L)
        conv = build_convolution(C, L, window=Window(-6, 12))
        if not conv.space.names:
            continue
        m = morphism_of(cdga_of(L), dualize_coalgebra(C), C, L, phi)
        done += 1
        for nm in conv.space.names:
            f = conv.space.unit_vector(nm)
            theta = twin_derivation(conv, m, f)
            assert theta_pairing(theta, C) == nabla_pairing(conv, f)
            assert untwin(conv, theta) == f


def test_crosscheck_passes_on_builtins():
    want = {
        "cp2-connected-sum": 219,
        "s3y": 128,
        "regular-seq-i2": 84,
        "free-lie-cpinf": 253,
    }
    for name, compared in want.items():
        ex = builtin(name)
        report = crosscheck(ex.coalgebra, ex.target, ex.phi)
        assert report.passed, report.summary()
        assert report.compared == compared
        assert report.jacobi == [] and report.mismatches == []
        assert report.summary().startswith("crosscheck passed:")


def test_crosscheck_accepts_an_arity_cap():
    ex = builtin("s3y")
    report = crosscheck(ex.coalgebra, ex.target, ex.phi, arity_max=1)
    assert report.passed and report.compared == 8


def test_crosscheck_rejects_curved_maps():
    ex = builtin("cp2")
    phi = GradedLinearMap(
        ex.coalgebra.space, ex.target.space, -1, {"u1": {"a": 1, "b": 1}}
    )
    with pytest.raises(NotMaurerCartan):
        crosscheck(ex.coalgebra, ex.target, phi)


def test_report_summary_shapes():
    space = GradedSpace([("p", 1)])
    z = space.zero()
    report = CrosscheckReport(window=Window(-2, 10), arities=(1, 2))
    report.mismatches = [
        CrosscheckMismatch(2, ("p", "p"), z, z) for _ in range(10)
    ]
    text = report.summary()
    assert not report.passed
    assert text.startswith("crosscheck FAILED:")
    assert text.count("arity 2 at") == 8
    assert "... 2 more mismatches" in text

    defected = CrosscheckReport(window=Window(-2, 10), arities=(1,))
    defected.morphism_defects = [("c^", z)]
    assert not defected.passed
    assert "commute with d on c^" in defected.summary()


def test_positive_complex_bases():
    _, _, _, m2 = _setup("cp2")
    P = PositiveDerivationComplex(m2)
    assert len(P.basis(1)) == 2
    assert all(t.degree == 1 for t in P.basis(1))
    assert len(P.basis(2)) == 2
    with pytest.raises(ValidationError, match="starts in degree one"):
        P.basis(0)

    _, _, _, m3 = _setup("s3y")
    assert PositiveDerivationComplex(m3).basis(1) == []


def test_positive_complex_squares_to_zero():
    for name in BUILTIN_NAMES:
        _, _, _, m = _setup(name)
        assert PositiveDerivationComplex(m).check_square() == []
