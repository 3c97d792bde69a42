"""Exact temperedness criteria for L^2(G/H), tensor products of induced
representations and L^p exponents, with brute-force oracles."""

from .errors import (
    DegenerateDenominatorError,
    InvalidFormError,
    InvalidInputError,
    InvalidSubalgebraError,
    SizeLimitError,
    TemperkitError,
    UnsupportedExponentError,
    UnsupportedFormError,
)
from .gln import (
    EpsilonMatrix,
    TemperednessReport,
    ad_image_dim,
    ad_image_dims,
    adjoint_weights,
    almost_lp,
    almost_lp_closed_form,
    block_diagonal_epsilon,
    c_value,
    complement_weights,
    compositions,
    d_value,
    epsilon_from_parabolic,
    epsilon_intersection,
    gl_weights,
    lp_criterion,
    lp_exponent,
    parse_composition,
    parse_epsilon,
    random_closed_epsilon,
    read_epsilon,
    tempered_bruteforce,
    tempered_fast,
    tensor_tempered,
)
from .levi import (
    LeviVerdict,
    classify_levis,
    generate_table,
    levi_roots,
    levi_tempered,
    levi_type,
    table_predicate,
)
from .quadratic import QuadForm, quad_f, quad_lemma_check, recursion_defect
from .rho import RatioResult, WeightMultiset, dominates, max_ratio, rho2_batch, rho2_eval
from .rootsys import (
    RootDatum,
    build,
    build_complex,
    build_restricted,
    build_split,
    edge_candidates,
    parse_label,
    weyl_orbit,
)

__version__ = "0.1.0"
