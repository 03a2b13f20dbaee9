"""Directed grid regions: lattice paths, square moves and their classes."""

from ._kernels import HAVE_NUMBA, backend
from .classes import (
    ClassMatrix,
    ClassPartition,
    PathClass,
    cell_commutes,
    class_matrix,
    dihomotopy_classes,
    enumerate_paths,
    model_vertices,
    replay_merge,
    to_presentation,
    vertex_name,
)
from .region import BUILTIN_GRIDS, GridError, GridRegion, LatticePath, builtin_grid, max_grid

__all__ = [
    "BUILTIN_GRIDS",
    "ClassMatrix",
    "ClassPartition",
    "GridError",
    "GridRegion",
    "HAVE_NUMBA",
    "LatticePath",
    "PathClass",
    "backend",
    "builtin_grid",
    "cell_commutes",
    "class_matrix",
    "dihomotopy_classes",
    "enumerate_paths",
    "max_grid",
    "model_vertices",
    "replay_merge",
    "to_presentation",
    "vertex_name",
]
