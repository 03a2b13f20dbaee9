"""Hom-set enumeration and the word problem."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .core import DEFAULT_BOUND, Presentation, PresentationError, Word
from .rewriting import bounded_closure, congruence_chain, rewriting_system

Completeness = Literal["complete", "bounded-partial"]


@dataclass(frozen=True)
class HomClass:
    representative: Word
    members: tuple[Word, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class HomSetResult:
    source: str
    target: str
    classes: tuple[HomClass, ...]
    completeness: Completeness
    bound: int
    # True when every class of the hom-set has a representative within the bound
    exhaustive: bool = False

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> list[Word]:
        return [c.representative for c in self.classes]

    def class_of(self, w: Word) -> int:
        for i, c in enumerate(self.classes):
            if w in c.members:
                return i
        raise KeyError(w)


def _check_objects(p: Presentation, *objs: str) -> None:
    for x in objs:
        if x not in p.objects:
            raise PresentationError(f"unknown object {x!r}")


def is_complete(p: Presentation) -> bool:
    return not p.relations or rewriting_system(p).confluent


def irreducible_lengths(p: Presentation, max_len: int) -> list[int]:
    """Number of irreducible words (any endpoints) of each length 0..max_len."""
    rs = rewriting_system(p)
    frontier = [Word(x, x, ()) for x in p.objects]
    counts = []
    for _ in range(max_len + 1):
        counts.append(len(frontier))
        nxt = []
        for w in frontier:
            for a in p.quiver.outgoing[w.tgt]:
                arrows = w.arrows + (a.id,)
                if not rs.ends_with_redex(arrows):
                    nxt.append(Word(w.src, a.tgt, arrows))
        frontier = nxt
    return counts


def is_finite(p: Presentation, max_len: int = DEFAULT_BOUND) -> int | None:
    """Longest arrow length if ``p`` is certified finite within ``max_len``, else None.

    Irreducible words are closed under taking factors, so once no irreducible
    word of length m exists, none longer does either.
    """
    if not is_complete(p):
        return None
    counts = irreducible_lengths(p, max_len + 1)
    for m, c in enumerate(counts):
        if c == 0:
            return m - 1
    return None


def normal_forms(p: Presentation, src: str, tgt: str, max_len: int) -> list[Word]:
    """Irreducible words src -> tgt up to ``max_len`` (requires a complete system)."""
    _check_objects(p, src, tgt)
    rs = rewriting_system(p)
    frontier = [Word(src, src, ())]
    out = []
    for _ in range(max_len + 1):
        out.extend(w for w in frontier if w.tgt == tgt)
        nxt = []
        for w in frontier:
            for a in p.quiver.outgoing[w.tgt]:
                arrows = w.arrows + (a.id,)
                if not rs.ends_with_redex(arrows):
                    nxt.append(Word(src, a.tgt, arrows))
        frontier = nxt
        if not frontier:
            break
    return out


def hom_representatives(p: Presentation, src: str, tgt: str, max_len: int = DEFAULT_BOUND) -> tuple[list[Word], bool]:
    """Canonical class representatives src -> tgt and whether the partition is certified.

    Cheaper than :func:`enumerate_hom` when members are not needed.
    """
    if is_complete(p):
        return normal_forms(p, src, tgt, max_len), True
    closure = bounded_closure(p, src, tgt, max_len)
    return [c[0] for c in closure.classes], False


def enumerate_hom(p: Presentation, src: str, tgt: str, max_len: int = DEFAULT_BOUND) -> HomSetResult:
    """Classes of all words src -> tgt of length <= max_len under the relation congruence."""
    _check_objects(p, src, tgt)
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if is_complete(p):
        rs = rewriting_system(p)
        groups: dict[tuple[str, ...], list[Word]] = {}
        for w in p.quiver.words_from(src, max_len):
            if w.tgt == tgt:
                groups.setdefault(rs.reduce(w.arrows), []).append(w)
        classes = [HomClass(Word(src, tgt, nf), tuple(ws)) for nf, ws in groups.items()]
        classes.sort(key=lambda c: c.representative.key())
        finite = is_finite(p, max_len)
        return HomSetResult(src, tgt, tuple(classes), "complete", max_len, finite is not None and finite <= max_len)
    closure = bounded_closure(p, src, tgt, max_len)
    classes = [HomClass(c[0], tuple(c)) for c in closure.classes]
    return HomSetResult(src, tgt, tuple(classes), "bounded-partial", max_len, False)


def normal_form(p: Presentation, w: Word) -> Word:
    return rewriting_system(p).normal_form(w)


def equivalent(p: Presentation, u: Word, v: Word, max_len: int = DEFAULT_BOUND) -> bool | None:
    """Decide u == v in the presented category.

    Exact when the rewriting system is complete; otherwise searches for a
    relation chain through words of length <= max_len and returns None if
    none is found.
    """
    if (u.src, u.tgt) != (v.src, v.tgt):
        return False
    if u == v:
        return True
    if is_complete(p):
        rs = rewriting_system(p)
        return rs.reduce(u.arrows) == rs.reduce(v.arrows)
    return True if congruence_chain(p, u, v, max_len) is not None else None
