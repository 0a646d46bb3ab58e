"""Exact rational computation with graded brackets and mapping spaces.

The package builds bracket tables on spaces of coalgebra-to-algebra maps,
twists them along flat degree -1 elements, truncates, and reads off homotopy
invariants -- everything over Fraction, so every reported number is exact.
"""

from .coalgebra import (
    CDGAlgebra,
    DGCoalgebra,
    dualize_cdga,
    dualize_coalgebra,
    is_primitively_cogenerated,
    validate_cdga,
    validate_coalgebra,
)
from .convolution import (
    ConvolutionAlgebra,
    InvariantsRecord,
    MCMap,
    build_convolution,
    homology_model,
    hom_vector,
    mapping_space_invariants,
    mc_check,
    mc_defects,
    pair_name,
    truncate,
    truncate_nonneg,
    truncate_universal_cover,
    truncated_homology,
    twist_convolution,
    untwisted_companion,
)
from .derivations import (
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
from .errors import (
    BudgetExceeded,
    DegreeError,
    FormatError,
    LinftyError,
    NotMaurerCartan,
    SeriesTruncation,
    ValidationError,
)
from .examples import BUILTIN_NAMES, Example, builtin
from .homology import SpanSolver, homology, kernel, rank, rref
from .linfinity import (
    CurvatureResult,
    JacobiWitness,
    LInfinity,
    check_jacobi,
    curvature,
    is_maurer_cartan,
    lower_central_series,
    nilpotency_order,
    twist,
    whitehead_length,
)
from .problemfile import Options, ProblemFile, dump, dumps, from_example, load, loads
from .signs import Permutation, koszul_sign, shuffles, skew_sign, sort_koszul, sort_skew
from .spaces import (
    DEFAULT_WINDOW,
    GradedLinearMap,
    GradedSpace,
    GradedVector,
    Window,
)
from .sullivan import (
    SullivanCDGA,
    cdga_cohomology,
    cdga_of,
    linfty_of,
    monomial_basis,
)

__version__ = "0.1.0"
