"""Almost-disjoint 2-path decompositions of graphs and digraphs."""

from .graph import (
    MultiDigraph,
    MultiGraph,
    ParseError,
    TwoPath,
    enumerate_two_paths,
    girth,
    in_conflict,
    parse_graph,
    underlying_graph,
    verify_decomposition,
)

__all__ = [
    "MultiDigraph",
    "MultiGraph",
    "ParseError",
    "TwoPath",
    "enumerate_two_paths",
    "girth",
    "in_conflict",
    "parse_graph",
    "underlying_graph",
    "verify_decomposition",
]
