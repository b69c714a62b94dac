"""Exact counting, enumeration and verification of friezes of Dynkin type."""

from .band import FriezeBand, InvalidSeed, NonIntegral, enumerate_friezes, validate_seed
from .cluster import enumerate_clusters, unitary_bounds, unitary_friezes
from .counting import FriezeCount, frieze_count, gf_identity_check, series_t_table, t_count
from .dynkin import DynkinType, OrientedDiagram, cartan_matrix, default_orientation, symmetric_orientation
from .folding import count_invariant, fold
from .polygon import enumerate_friezes_geometric, enumerate_triangulations, triangulations_with_spokes

__version__ = "0.1.0"

__all__ = [
    "DynkinType",
    "OrientedDiagram",
    "cartan_matrix",
    "default_orientation",
    "symmetric_orientation",
    "FriezeBand",
    "InvalidSeed",
    "NonIntegral",
    "validate_seed",
    "enumerate_friezes",
    "enumerate_clusters",
    "unitary_friezes",
    "unitary_bounds",
    "FriezeCount",
    "frieze_count",
    "t_count",
    "gf_identity_check",
    "series_t_table",
    "fold",
    "count_invariant",
    "enumerate_triangulations",
    "triangulations_with_spokes",
    "enumerate_friezes_geometric",
]
