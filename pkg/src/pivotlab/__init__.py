"""Pivot and local complementation on graphs and hypergraphs, exact flat
spectra under {I,H,N}^n, orbit enumeration and binary code classification."""

from .anf import BooleanFunction, Z4Function, family_member, format_anf, parse_anf
from .canon import CanonicalForm, canonical_form
from .codes import (
    LinearCode,
    StandardForm,
    classify_codes,
    code_from_graph,
    dual,
    equivalent,
    graph_from_code,
    information_set_count,
    pivot_P,
    standard_form,
)
from .graph import Graph, hyper_pivot, is_admissible, local_complement, pivot
from .orbits import classify, extend_bipartite, lc_orbit, pivot_orbit
from .spectral import (
    SpectralVector,
    TransformSpec,
    apply,
    bipolar,
    count_flat,
    count_flat_quadratic,
    flat_specs,
    is_flat,
)

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction", "Z4Function", "family_member", "format_anf", "parse_anf",
    "CanonicalForm", "canonical_form",
    "LinearCode", "StandardForm", "classify_codes", "code_from_graph", "dual", "equivalent",
    "graph_from_code", "information_set_count", "pivot_P", "standard_form",
    "Graph", "hyper_pivot", "is_admissible", "local_complement", "pivot",
    "classify", "extend_bipartite", "lc_orbit", "pivot_orbit",
    "SpectralVector", "TransformSpec", "apply", "bipolar", "count_flat", "count_flat_quadratic",
    "flat_specs", "is_flat",
]
