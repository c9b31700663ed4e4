"""Exact signed graph colouring, the 2-list to signature reduction, and
corpus scans for both planar colouring conjectures."""

from .graph import Graph, build_graph, induced_subgraph, is_bipartite, euler_planarity_bound
from .signed import SignedGraph, all_positive, enumerate_signature_classes, switch
from .solver import chromatic_number, colour_set, is_proper, solve_k
from .reduction import ListAssignment, build_signature, list_colour_via_signature

__version__ = "0.1.0"
