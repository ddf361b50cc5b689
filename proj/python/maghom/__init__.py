"""Magnitude homology of finite graphs.

Thin re-export of the compiled core. Ranks, torsion, and series
coefficients come back as plain Python ints, tables as dicts keyed by
(k, l), and the structural checks as report dicts.
"""

from ._core import (
    Graph,
    ParseError,
    ResourceLimitError,
    __version__,
    box_product,
    builtin_corpus,
    chain_counts,
    check_cyclic_patterns,
    check_diagonal,
    check_disjoint_additivity,
    check_join_diagonal,
    check_kunneth,
    check_mayer_vietoris,
    check_support_bounds,
    check_tree_formula,
    disjoint_union,
    distance_matrix,
    from_lcf,
    homology,
    is_projecting_decomposition,
    join,
    magnitude,
    named,
    parse,
    wedge,
)

__all__ = [
    "Graph",
    "ParseError",
    "ResourceLimitError",
    "__version__",
    "box_product",
    "builtin_corpus",
    "chain_counts",
    "check_cyclic_patterns",
    "check_diagonal",
    "check_disjoint_additivity",
    "check_join_diagonal",
    "check_kunneth",
    "check_mayer_vietoris",
    "check_support_bounds",
    "check_tree_formula",
    "disjoint_union",
    "distance_matrix",
    "from_lcf",
    "homology",
    "is_projecting_decomposition",
    "join",
    "magnitude",
    "named",
    "parse",
    "wedge",
]
