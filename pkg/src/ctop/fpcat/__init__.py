"""Finitely presented categories."""

from .core import (
    DEFAULT_BOUND,
    Arrow,
    CatFunctor,
    Presentation,
    PresentationError,
    Quiver,
    Relation,
    Word,
    cycle_quiver,
    free_category,
    identity_functor,
)
from .hom import HomClass, HomSetResult, enumerate_hom, equivalent, hom_representatives, is_complete, is_finite, normal_form
from .iso import IsoResult, describe, find_isomorphism, iso_check, skeleton
from .ops import (
    FunctorCheck,
    FunctorError,
    FunctorProfile,
    check_functor,
    functor_profile,
    product,
    pushout,
    pushout_with_injections,
    relations_from_image,
    tietze_simplify,
)
from .rewriting import RewritingSystem, Step, apply_step, congruence_chain, knuth_bendix, replay_chain, rewriting_system

__all__ = [
    "DEFAULT_BOUND",
    "Arrow",
    "CatFunctor",
    "FunctorCheck",
    "FunctorError",
    "FunctorProfile",
    "HomClass",
    "HomSetResult",
    "IsoResult",
    "Presentation",
    "PresentationError",
    "Quiver",
    "Relation",
    "RewritingSystem",
    "Step",
    "Word",
    "apply_step",
    "check_functor",
    "congruence_chain",
    "cycle_quiver",
    "describe",
    "enumerate_hom",
    "equivalent",
    "find_isomorphism",
    "free_category",
    "functor_profile",
    "hom_representatives",
    "identity_functor",
    "is_complete",
    "is_finite",
    "iso_check",
    "knuth_bendix",
    "normal_form",
    "product",
    "pushout",
    "pushout_with_injections",
    "relations_from_image",
    "replay_chain",
    "rewriting_system",
    "skeleton",
    "tietze_simplify",
]
