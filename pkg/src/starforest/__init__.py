"""Star-forest Turán workbench: constructions, detectors, exact formulas and oracles."""

from .hypercore import (
    ColoredHypergraph,
    FormatError,
    Graph,
    Hypergraph,
    HypergraphError,
    MultiHypergraph,
    canonical_form,
    is_isomorphic,
    is_linear,
    link_hypergraph,
    parse_hypergraph,
    write_hypergraph,
)
from .detect import (
    Pattern,
    SearchLimitExceeded,
    find_berge_star,
    find_berge_star_forest,
    find_expansion_star,
    find_expansion_star_forest,
    find_pattern,
    max_sdr,
    verify_witness,
)
from .formulas import BoundValue, RegimeError
from .oracle import (
    ForbiddenFamily,
    SearchReport,
    clique_hypergraph,
    count_cliques,
    exact_generalized_turan,
    exact_turan,
)

__all__ = [
    "BoundValue",
    "ColoredHypergraph",
    "ForbiddenFamily",
    "FormatError",
    "Graph",
    "Hypergraph",
    "HypergraphError",
    "MultiHypergraph",
    "Pattern",
    "RegimeError",
    "SearchLimitExceeded",
    "SearchReport",
    "canonical_form",
    "clique_hypergraph",
    "count_cliques",
    "exact_generalized_turan",
    "exact_turan",
    "find_berge_star",
    "find_berge_star_forest",
    "find_expansion_star",
    "find_expansion_star_forest",
    "find_pattern",
    "is_isomorphic",
    "is_linear",
    "link_hypergraph",
    "max_sdr",
    "parse_hypergraph",
    "verify_witness",
    "write_hypergraph",
]
