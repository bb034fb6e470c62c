"""Clique counts in graphs with bounded maximum degree.

Colex constructions, cluster folding, degree-multiset bounds and an
isomorph-free exhaustive search for the maximum number of ``K_t`` among
graphs with ``m`` edges and maximum degree at most ``r``.
"""

from .colex import colex_graph, conjectured_extremal_graph, decompose, g_t
from .graph import Graph, count_cliques
from .search import SearchSpec, compute_f

__all__ = [
    "Graph",
    "SearchSpec",
    "colex_graph",
    "compute_f",
    "conjectured_extremal_graph",
    "count_cliques",
    "decompose",
    "g_t",
]
__version__ = "0.1.0"
