"""Quivers, path words, relations and presentations.

Words are read in diagrammatic order: ``Word("A", "A", ("a", "b"))`` is
``a`` followed by ``b``.  The empty word at an object is its identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_BOUND = 12


class PresentationError(ValueError):
    """Raised when a quiver, word or relation is malformed."""


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    src: str
    tgt: str


@dataclass(frozen=True, order=True)
class Word:
    src: str
    tgt: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_identity(self) -> bool:
        return not self.arrows

    def then(self, other: Word) -> Word:
        if self.tgt != other.src:
            raise PresentationError(
                f"cannot compose {self} with {other}: {self.tgt} != {other.src}"
            )
        return Word(self.src, other.tgt, self.arrows + other.arrows)

    def key(self) -> tuple[int, tuple[str, ...]]:
        """Shortlex sort key: length first, then arrow ids."""
        return (len(self.arrows), self.arrows)

    def label(self) -> str:
        if not self.arrows:
            return f"1_{self.src}"
        return ".".join(self.arrows)

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class Relation:
    left: Word
    right: Word

    def __post_init__(self) -> None:
        if (self.left.src, self.left.tgt) != (self.right.src, self.right.tgt):
            raise PresentationError(f"relation sides are not parallel: {self.left} vs {self.right}")

    def __str__(self) -> str:
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class Quiver:
    objects: tuple[str, ...] = ()
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise PresentationError("duplicate object ids")
        seen: set[str] = set()
        for a in self.arrows:
            if a.id in seen:
                raise PresentationError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            if a.src not in objs or a.tgt not in objs:
                raise PresentationError(f"arrow {a.id!r} has an endpoint outside the object set")

    @cached_property
    def by_id(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    @cached_property
    def outgoing(self) -> dict[str, tuple[Arrow, ...]]:
        out: dict[str, list[Arrow]] = {x: [] for x in self.objects}
        for a in sorted(self.arrows, key=lambda a: a.id):
            out[a.src].append(a)
        return {x: tuple(v) for x, v in out.items()}

    def word(self, src: str, arrows: Sequence[str] = ()) -> Word:
        """Build a word starting at ``src``, checking composability."""
        if src not in self.objects:
            raise PresentationError(f"unknown object {src!r}")
        cur = src
        for aid in arrows:
            a = self.by_id.get(aid)
            if a is None:
                raise PresentationError(f"unknown arrow {aid!r}")
            if a.src != cur:
                raise PresentationError(f"arrow {aid!r} starts at {a.src!r}, expected {cur!r}")
            cur = a.tgt
        return Word(src, cur, tuple(arrows))

    def path(self, arrows: Sequence[str]) -> Word:
        if not arrows:
            raise PresentationError("an empty word needs an explicit base object")
        first = self.by_id.get(arrows[0])
        if first is None:
            raise PresentationError(f"unknown arrow {arrows[0]!r}")
        return self.word(first.src, arrows)

    def check_word(self, w: Word) -> None:
        built = self.word(w.src, w.arrows)
        if built.tgt != w.tgt:
            raise PresentationError(f"word {w} ends at {built.tgt!r}, not {w.tgt!r}")

    def words_from(self, src: str, max_len: int) -> Iterator[Word]:
        """All words starting at ``src`` of length <= ``max_len``, shortlex order."""
        frontier = [Word(src, src, ())]
        for _ in range(max_len + 1):
            yield from frontier
            nxt = []
            for w in frontier:
                for a in self.outgoing[w.tgt]:
                    nxt.append(Word(w.src, a.tgt, w.arrows + (a.id,)))
            frontier = nxt
            if not frontier:
                break


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()

    def __post_init__(self) -> None:
        for r in self.relations:
            self.quiver.check_word(r.left)
            self.quiver.check_word(r.right)

    @property
    def objects(self) -> tuple[str, ...]:
        return self.quiver.objects

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def identity(self, x: str) -> Word:
        return self.quiver.word(x)

    def word(self, src: str, arrows: Sequence[str] = ()) -> Word:
        return self.quiver.word(src, arrows)

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        arrows: Iterable[tuple[str, str, str]] = (),
        relations: Iterable[tuple[Sequence[str], Sequence[str]] | tuple[Sequence[str], Sequence[str], str]] = (),
    ) -> Presentation:
        """Convenience constructor from plain tuples.

        A relation is ``(left_ids, right_ids)``; when both sides might be
        empty give the base object as a third entry.
        """
        q = Quiver(tuple(objects), tuple(Arrow(*a) for a in arrows))
        rels = []
        for rel in relations:
            left, right = list(rel[0]), list(rel[1])
            if len(rel) == 3:
                base = rel[2]
            elif left:
                base = q.by_id[left[0]].src
            elif right:
                base = q.by_id[right[0]].src
            else:
                raise PresentationError("relation with two empty sides needs a base object")
            rels.append(Relation(q.word(base, left), q.word(base, right)))
        return cls(q, tuple(rels))

    def summary(self) -> str:
        return (
            f"{len(self.objects)} objects, {len(self.arrows)} generators, "
            f"{len(self.relations)} relations"
        )


def free_category(q: Quiver) -> Presentation:
    return Presentation(q, ())


def cycle_quiver(n: int, prefix: str = "x", arrow_prefix: str = "e") -> Quiver:
    """The n-cycle: objects x0..x{n-1}, arrows e_k: x_k -> x_{k+1 mod n}."""
    objs = tuple(f"{prefix}{k}" for k in range(n))
    arrows = tuple(Arrow(f"{arrow_prefix}{k}", objs[k], objs[(k + 1) % n]) for k in range(n))
    return Quiver(objs, arrows)


@dataclass(frozen=True)
class CatFunctor:
    """A functor between presentations, given on generators."""

    domain: Presentation
    codomain: Presentation
    object_map: Mapping[str, str] = field(default_factory=dict)
    arrow_map: Mapping[str, Word] = field(default_factory=dict)

    def on_object(self, x: str) -> str:
        return self.object_map[x]

    def apply(self, w: Word) -> Word:
        out = Word(self.object_map[w.src], self.object_map[w.src], ())
        for aid in w.arrows:
            out = out.then(self.arrow_map[aid])
        return out

    def then(self, other: CatFunctor) -> CatFunctor:
        return CatFunctor(
            self.domain,
            other.codomain,
            {x: other.object_map[y] for x, y in self.object_map.items()},
            {a: other.apply(w) for a, w in self.arrow_map.items()},
        )


def identity_functor(p: Presentation) -> CatFunctor:
    return CatFunctor(
        p,
        p,
        {x: x for x in p.objects},
        {a.id: Word(a.src, a.tgt, (a.id,)) for a in p.arrows},
    )
