"""Fixed points and quasi-fixed points of maps over finite related sets."""

from .core import EndoMap, RelatedSet, make_endo_map, make_related_set
from .search import Conjecture, Instance, Report, find_counterexample, verify_theorems
from .textio import Model, parse_model, serialize_model

__version__ = "0.1.0"

__all__ = [
    "Conjecture", "EndoMap", "Instance", "Model", "RelatedSet", "Report",
    "find_counterexample", "make_endo_map", "make_related_set", "parse_model",
    "serialize_model", "verify_theorems",
]
