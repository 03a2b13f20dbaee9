"""Combinatorial controlled spaces and their fundamental categories."""

from .cgraph import CGraph, CGraphError, Edge, Generator, default_name, reversible_pair
from .covering import (
    CoveringError,
    CoveringMap,
    LiftResult,
    builtin_covering,
    chain_over_cycle,
    identity_covering,
    lift_hom,
)
from .io import cgraph_from_dict, cgraph_to_dict, cgraph_to_dot, covering_from_dict, covering_to_dict
from .ops import dspace_edges, flexible_part, generate_dspace, product, quotient, restrict
from .pi1 import (
    InducedFunctors,
    PreflexResult,
    fundamental_presentation,
    hat_is_full_and_faithful,
    induced_functors,
    preflexible_check,
)
from .registry import DESCRIPTIONS, UnknownModel, registry, registry_entries

__all__ = [
    "CoveringError",
    "CoveringMap",
    "LiftResult",
    "builtin_covering",
    "cgraph_from_dict",
    "cgraph_to_dict",
    "cgraph_to_dot",
    "chain_over_cycle",
    "covering_from_dict",
    "covering_to_dict",
    "identity_covering",
    "lift_hom",
    "CGraph",
    "CGraphError",
    "DESCRIPTIONS",
    "Edge",
    "Generator",
    "InducedFunctors",
    "PreflexResult",
    "UnknownModel",
    "default_name",
    "dspace_edges",
    "flexible_part",
    "fundamental_presentation",
    "generate_dspace",
    "hat_is_full_and_faithful",
    "induced_functors",
    "preflexible_check",
    "product",
    "quotient",
    "registry",
    "registry_entries",
    "restrict",
    "reversible_pair",
]
