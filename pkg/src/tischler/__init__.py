"""Topological Tischler graphs, their Schottky maps, and critically fixed anti-rational maps."""

from .rotation_graph import (PlaneGraph, automorphism_group, canonical_code, dual_graph, faces,
                             parse_graph)
from .tischler import (TischlerGraph, TischlerTree, expand_full, from_tree, is_obstructed,
                       to_tree, validate)

__version__ = "0.1.0"

__all__ = [
    "PlaneGraph", "automorphism_group", "canonical_code", "dual_graph", "faces", "parse_graph",
    "TischlerGraph", "TischlerTree", "expand_full", "from_tree", "is_obstructed", "to_tree",
    "validate",
]
