"""Seifert-van Kampen on the c-interval: gluing fundamental categories of an open cover.

Cover cI by U = [0,1[ and V = ]0,1].  Neither piece contains a controlled
path from 0 to 1 and their intersection has no flexible point, so the
pushout of fundamental categories has no arrow 0 -> 1 while cI has one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cspace import fundamental_presentation, registry, restrict
from .fpcat import DEFAULT_BOUND, CatFunctor, Presentation, enumerate_hom, pushout


@dataclass(frozen=True)
class SvkDemo:
    whole: int
    whole_completeness: str
    glued: int
    glued_completeness: str
    pushout: Presentation

    @property
    def fails(self) -> bool:
        return self.whole != self.glued


def inclusion(sub: Presentation, whole: Presentation) -> CatFunctor:
    """Inclusion of a presentation whose objects and generators all occur in ``whole``."""
    return CatFunctor(
        sub,
        whole,
        {x: x for x in sub.objects},
        {a.id: whole.quiver.word(a.src, [a.id]) for a in sub.arrows},
    )


def svk_interval(bound: int = DEFAULT_BOUND) -> SvkDemo:
    ci = registry("cI")
    u = fundamental_presentation(restrict(ci, {"0"}))
    v = fundamental_presentation(restrict(ci, {"1"}))
    uv = fundamental_presentation(restrict(ci, ()))
    glued = pushout(inclusion(uv, u), inclusion(uv, v))
    whole = enumerate_hom(fundamental_presentation(ci), "0", "1", bound)
    part = enumerate_hom(glued, "0", "1", bound)
    return SvkDemo(len(whole), whole.completeness, len(part), part.completeness, glued)
