"""Exact mutual-visibility numbers and mutual-visibility colorings of small graphs."""

from .chimu import (
    ChimuCertificate,
    Coloring,
    GreedyTrace,
    chimu_exact,
    greedy_coloring,
)
from .graph import Graph, from_edge_list, all_pairs_distances
from .visibility import is_mv_set, mu_exact, verify_coloring

__all__ = [
    "ChimuCertificate",
    "Coloring",
    "Graph",
    "GreedyTrace",
    "all_pairs_distances",
    "chimu_exact",
    "from_edge_list",
    "greedy_coloring",
    "is_mv_set",
    "mu_exact",
    "verify_coloring",
]

__version__ = "0.1.0"
