"""Distances, diameter and radius on k-multimode graphs."""

from .graph import (
    INF,
    DistanceMap,
    ExactParameters,
    GraphError,
    MultimodeGraph,
    ball,
    build_graph,
    exact_apsp,
    exact_parameters,
    induced_subgraph,
    kmode_distance,
    multi_source_sssp,
    sssp,
)

__all__ = [
    "INF",
    "DistanceMap",
    "ExactParameters",
    "GraphError",
    "MultimodeGraph",
    "ball",
    "build_graph",
    "exact_apsp",
    "exact_parameters",
    "induced_subgraph",
    "kmode_distance",
    "multi_source_sssp",
    "sssp",
]
