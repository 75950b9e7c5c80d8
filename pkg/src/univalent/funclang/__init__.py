"""Expression language, function objects and the catalog of named test functions."""
from .catalog import CATALOG, FunctionSpec, as_function, catalog_function, catalog_list, lookup
from .evaluate import eval_jet, eval_series, eval_value
from .functions import (
    AnalyticFunction,
    Composition,
    ExprFunction,
    JetFunction,
    ScaledFunction,
    SeriesFunction,
    identity_function,
)
from .parser import parse, to_text

__all__ = [
    "CATALOG", "FunctionSpec", "as_function", "catalog_function", "catalog_list", "lookup",
    "eval_jet", "eval_series", "eval_value", "AnalyticFunction", "Composition", "ExprFunction",
    "JetFunction", "ScaledFunction", "SeriesFunction", "identity_function", "parse", "to_text",
]
