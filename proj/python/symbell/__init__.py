"""Symmetric multipartite Bell inequalities for GHZ states under
regular-polygon measurements: visibility certificates, exact local bounds,
polytope enumeration, and derived quantities."""

from ._core import (
    __version__,
    activation,
    certify,
    class_weight,
    critical_efficiency,
    facets,
    ghz_reduced,
    heuristic_local_bound,
    lij,
    local_bound,
    m4_local_bound,
    m4_visibility,
    necklace_count,
    necklaces,
    vertex_count,
    visibility,
    xy_lower_bound,
)

__all__ = [
    "__version__",
    "activation",
    "certify",
    "class_weight",
    "critical_efficiency",
    "facets",
    "ghz_reduced",
    "heuristic_local_bound",
    "lij",
    "local_bound",
    "m4_local_bound",
    "m4_visibility",
    "necklace_count",
    "necklaces",
    "vertex_count",
    "visibility",
    "xy_lower_bound",
]
