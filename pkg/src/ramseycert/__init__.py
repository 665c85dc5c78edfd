"""Certified lower bounds for multicolour Ramsey numbers via distance colourings."""
from .clique import CliqueResult, Undecided, max_clique
from .constructions import (
    BandSpec,
    FillRule,
    GateFailure,
    apply_band,
    compound,
    compound_order,
    cyclify,
    extend_linear,
    gapped_cyclify,
    mathon_double,
    neighborhood_clique_numbers,
    neighborhood_subgraph,
    paley,
    quadruple,
)
from .core import (
    CYCLIC,
    LINEAR,
    ColoringError,
    DistanceColoring,
    ExplicitCapError,
    ExplicitColoring,
    KVector,
    color_degree,
    expand,
    induced,
    to_explicit,
    validate,
)
from .search import SearchConfig, exhaustive_nonexistence, search
from .verifier import Certificate, clique_number_color, clique_witness, explicit_clique_number, verify

__version__ = "0.1.0"

__all__ = [
    "apply_band",
    "BandSpec",
    "Certificate",
    "clique_number_color",
    "clique_witness",
    "CliqueResult",
    "color_degree",
    "ColoringError",
    "compound",
    "compound_order",
    "CYCLIC",
    "cyclify",
    "DistanceColoring",
    "exhaustive_nonexistence",
    "expand",
    "explicit_clique_number",
    "ExplicitCapError",
    "ExplicitColoring",
    "extend_linear",
    "FillRule",
    "gapped_cyclify",
    "GateFailure",
    "induced",
    "KVector",
    "LINEAR",
    "mathon_double",
    "max_clique",
    "neighborhood_clique_numbers",
    "neighborhood_subgraph",
    "paley",
    "quadruple",
    "search",
    "SearchConfig",
    "to_explicit",
    "Undecided",
    "validate",
    "verify",
]
