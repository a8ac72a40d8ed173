"""Exact census and verification engine for independent sets in regular graphs."""

__version__ = "0.1.0"

from .graph import (Graph, alon_graph, complete_bipartite, connected_components, cycle,
                    double_cover, from_graph6, induced, is_bipartite, is_regular,
                    neighbor_witness, to_graph6)
from .indpoly import (IndependencePolynomial, count_independent_sets, count_nonbipartite_induced,
                      enumerate_independent_sets, evaluate, independence_polynomial)
from .regular import RegularClassSpec, canonical_form, enumerate_regular, is_isomorphic

__all__ = [
    "Graph", "alon_graph", "complete_bipartite", "connected_components", "cycle",
    "double_cover", "from_graph6", "induced", "is_bipartite", "is_regular",
    "neighbor_witness", "to_graph6", "IndependencePolynomial", "count_independent_sets",
    "count_nonbipartite_induced", "enumerate_independent_sets", "evaluate",
    "independence_polynomial", "RegularClassSpec", "canonical_form", "enumerate_regular",
    "is_isomorphic",
]
