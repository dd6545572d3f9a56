"""Exact-arithmetic laboratory for point-curve and point-surface incidence
problems in three dimensions: generators for extremal and reduction-based
instances, exact incidence counting and bipartite decomposition, polynomial
partitioning at desk scale, distance and similar-triangle pipelines, and
bound-shape verification."""

__version__ = "0.1.0"

__all__ = [
    "apps",
    "bounds",
    "construct",
    "engine",
    "errors",
    "geom",
    "io",
    "partition",
    "roots",
]
