"""Component-count certificates for signomials on the positive orthant."""

from .certifier import Certificate, CertificateError, certify, check_certificate, simplex_to_separating, univariate_certify
from .descartes import classify_at_negative_start, component_bounds, sign_bounds, sign_changes
from .geometry import (
    Hyperplane,
    SimplexError,
    SimplexWitness,
    barycentric,
    check_simplex,
    convex_by_term_rules,
    negative_cone_membership,
    normalize_to_standard,
    simplex_from_halfspaces,
    simplex_from_nonstrict_family,
    simplex_from_very_strict,
)
from .oracle import LogBox, count_components, grid_labeling, stability_check
from .polytope import newton_polytope
from .separation import (
    Strictness,
    classify_strictness,
    find_enclosing_vector,
    find_separating_vector,
    very_strict_basis,
)
from .signomial import (
    AffineMap,
    Signomial,
    SignedSupport,
    UnivariateSignomial,
    evaluate,
    induced_univariate,
    monomial_transform,
    restrict,
    signed_support,
)

__version__ = "0.1.0"
