"""Almost-intersecting set families: constructions, exact bounds and search."""

__version__ = "0.1.0"

from .bounds import (
    binom,
    check_lemma,
    delta_b_r,
    ekr_bound,
    ell_upper_bound,
    size_b_plus,
    size_b_r,
    theorem_case,
)
from .constructions import b_plus, b_r, full_star, hilton_milner, lex_family
from .errors import (
    AlmostIntError,
    DomainError,
    NotAlmostIntersectingError,
    ParameterError,
    ResourceError,
    UnsupportedError,
)
from .family import (
    KSubset,
    Params,
    SetFamily,
    family_isomorphic,
    is_almost_intersecting,
    is_intersecting,
    max_degree,
)
from .partition import canonical_partition, full_tails
from .search import SearchProblem, diagnose, max_almost_intersecting, oracle_max

__all__ = [
    "AlmostIntError", "DomainError", "KSubset", "NotAlmostIntersectingError", "ParameterError",
    "Params", "ResourceError", "SearchProblem", "SetFamily", "UnsupportedError",
    "b_plus", "b_r", "binom", "canonical_partition", "check_lemma", "delta_b_r", "diagnose",
    "ekr_bound", "ell_upper_bound", "family_isomorphic", "full_star", "full_tails",
    "hilton_milner", "is_almost_intersecting", "is_intersecting", "lex_family",
    "max_almost_intersecting", "max_degree", "oracle_max", "size_b_plus", "size_b_r",
    "theorem_case",
]
