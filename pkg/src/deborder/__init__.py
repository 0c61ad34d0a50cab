"""Exact debordering of border Waring rank decompositions.

Border decompositions are grouped into local classes, turned into generalized
additive decompositions, and synthesized into explicit Waring decompositions
over cyclotomic fields. Rank oracles and apolarity tools provide independent
checks.
"""

from .apolarity import (
    GradedSubspace,
    HilbertProfile,
    ann_graded,
    apolarity_check,
    compression,
    gad_size,
    hilbert_function,
)
from .border import (
    BorderDecomposition,
    EpsLinForm,
    LocalClass,
    group_local_classes,
    limit_of_decomposition,
    projective_limit,
    standardize_local,
)
from .errors import *  # noqa: F401,F403
from .gad import GAD, GADPart, check_gad, extract_gad, jordan_independence_dim, verify_gad
from .oracles import (
    RankCertificate,
    Tag,
    binary_exact_ranks,
    catalecticant_lower_bound,
    classify_small_border,
    normal_form_sample,
)
from .polynomials import (
    CatMatrix,
    LinForm,
    Poly,
    apply_operator,
    catalecticant,
    essential_vars,
    exact_kernel,
    exact_rank,
    partial_derivative,
    power_of_linform,
    substitute_linear,
)
from .scalars import QQ, EpsScalar, FieldContext, Scalar, make_context
from .synthesis import (
    BoundReport,
    WaringDecomposition,
    bounds,
    decompose_in_power_basis,
    deborder,
    monomial_two_form,
    power_basis,
    synthesize,
)

__version__ = "0.1.0"
