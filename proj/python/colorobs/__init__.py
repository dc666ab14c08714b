"""Observability analysis of node-colored directed graphs.

Graphs are accepted as ``Graph`` objects, JSON strings or dicts in the
library's JSON schema. Analysis results come back as plain dicts.
"""

from ._core import (
    BudgetExceeded,
    Error,
    Graph,
    InternalConsistencyError,
    ModelError,
    ParseError,
    ValidationError,
    apply_indicators,
    burn_in,
    chromatic_bound,
    classify,
    detect,
    growth_class,
    hypothesis_count,
    mitigate,
    reduce_insp,
    reduce_multicolor,
    satisfies,
    simulate,
    two_colorable_without_monochromatic_triangle,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "Graph",
    "InternalConsistencyError",
    "ModelError",
    "ParseError",
    "ValidationError",
    "apply_indicators",
    "burn_in",
    "chromatic_bound",
    "classify",
    "detect",
    "growth_class",
    "hypothesis_count",
    "mitigate",
    "reduce_insp",
    "reduce_multicolor",
    "satisfies",
    "simulate",
    "two_colorable_without_monochromatic_triangle",
]
