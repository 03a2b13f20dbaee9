"""Combinatorial controlled spaces (c-graphs).

A c-graph is a directed multigraph whose edges are elementary path segments,
together with

* a set of *flexible* vertices (points whose trivial loop is controlled),
* *generators*: edge words that are controlled paths,
* *cells*: pairs of parallel edge words that are 2-equivalent,
* per-edge flags: a *flexible* edge is a segment all of whose restrictions are
  controlled; ``reverse`` links an edge to the edge running over the same
  segment backwards.

Controlled paths are the concatenations of generators.  Every flexible edge
is implicitly a generator.  Two edges linked by ``reverse`` cancel
(``e . e_rev = 1``) only when both are flexible; a rigid reversible pair such
as the reversible c-interval keeps its two traversals independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ..fpcat import Arrow, Presentation, PresentationError, Quiver, Relation, Word


class CGraphError(ValueError):
    """Raised for structurally invalid c-graphs."""


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    src: str
    tgt: str
    flexible: bool = False
    reverse: str | None = None


@dataclass(frozen=True)
class Generator:
    name: str
    path: Word

    @property
    def src(self) -> str:
        return self.path.src

    @property
    def tgt(self) -> str:
        return self.path.tgt


def default_name(path: Sequence[str]) -> str:
    return "[" + ".".join(path) + "]"


def inverse_id(edge_id: str) -> str:
    return f"{edge_id}^-1"


@dataclass(frozen=True)
class CGraph:
    vertices: tuple[str, ...]
    flexible: frozenset[str]
    edges: tuple[Edge, ...] = ()
    generators: tuple[Generator, ...] = ()
    cells: tuple[Relation, ...] = ()
    meta: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        try:
            q = self.edge_quiver
        except PresentationError as exc:
            raise CGraphError(str(exc)) from exc
        if not self.flexible <= set(self.vertices):
            raise CGraphError(f"flexible vertices {sorted(self.flexible - set(self.vertices))} are not vertices")
        by_id = {e.id: e for e in self.edges}
        for e in self.edges:
            if e.flexible and not {e.src, e.tgt} <= self.flexible:
                raise CGraphError(f"flexible edge {e.id!r} has a non-flexible endpoint")
            if e.reverse is not None:
                r = by_id.get(e.reverse)
                if r is None:
                    raise CGraphError(f"edge {e.id!r}: reverse {e.reverse!r} is not an edge")
                if r.reverse != e.id or (r.src, r.tgt) != (e.tgt, e.src):
                    raise CGraphError(f"edges {e.id!r} and {r.id!r} are not reverses of each other")
        names = set()
        for g in self.generators:
            if g.name in names:
                raise CGraphError(f"duplicate generator name {g.name!r}")
            names.add(g.name)
            if not g.path.arrows:
                raise CGraphError(f"generator {g.name!r} is empty")
            try:
                q.check_word(g.path)
            except PresentationError as exc:
                raise CGraphError(f"generator {g.name!r}: {exc}") from exc
            if g.src not in self.flexible or g.tgt not in self.flexible:
                raise CGraphError(f"generator {g.name!r} has a non-flexible endpoint")
        for c in self.cells:
            try:
                q.check_word(c.left)
                q.check_word(c.right)
            except PresentationError as exc:
                raise CGraphError(f"cell {c}: {exc}") from exc

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        flexible: Iterable[str],
        edges: Iterable[Edge | tuple] = (),
        generators: Iterable[Sequence[str] | tuple[str, Sequence[str]]] = (),
        cells: Iterable[tuple[Sequence[str], Sequence[str]] | tuple[Sequence[str], Sequence[str], str]] = (),
        meta: dict[str, str] | None = None,
    ) -> CGraph:
        """Build from plain data.

        ``edges`` items are :class:`Edge` or ``(id, src, tgt)`` tuples;
        ``generators`` items are edge-id lists or ``(name, edge_ids)`` pairs.
        """
        vertices = tuple(vertices)
        es = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        q = Quiver(vertices, tuple(Arrow(e.id, e.src, e.tgt) for e in es))
        gens = []
        for g in generators:
            if isinstance(g, tuple) and len(g) == 2 and isinstance(g[0], str) and not isinstance(g[1], str):
                name, path = g[0], list(g[1])
            else:
                name, path = default_name(list(g)), list(g)
            try:
                gens.append(Generator(name, q.path(path)))
            except PresentationError as exc:
                raise CGraphError(f"generator {name!r}: {exc}") from exc
        cs = []
        for c in cells:
            left, right = list(c[0]), list(c[1])
            base = c[2] if len(c) == 3 else q.by_id[(left or right)[0]].src
            cs.append(Relation(q.word(base, left), q.word(base, right)))
        return cls(
            vertices,
            frozenset(flexible),
            es,
            tuple(gens),
            tuple(cs),
            tuple(sorted((meta or {}).items())),
        )

    # -- derived structure --------------------------------------------------------------

    @cached_property
    def edge_quiver(self) -> Quiver:
        return Quiver(self.vertices, tuple(Arrow(e.id, e.src, e.tgt) for e in self.edges))

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @property
    def flexible_vertices(self) -> tuple[str, ...]:
        """Flexible vertices in vertex order."""
        return tuple(v for v in self.vertices if v in self.flexible)

    @cached_property
    def controlled(self) -> tuple[Generator, ...]:
        """Declared generators plus the implicit one-edge generators of flexible edges."""
        out = list(self.generators)
        singles = {g.path.arrows for g in self.generators if len(g.path) == 1}
        names = {g.name for g in self.generators}
        for e in self.edges:
            if e.flexible and (e.id,) not in singles:
                name = default_name([e.id])
                while name in names:
                    name += "'"
                names.add(name)
                out.append(Generator(name, Word(e.src, e.tgt, (e.id,))))
        return tuple(out)

    @cached_property
    def edge_presentation(self) -> Presentation:
        """Edge quiver modulo cells and cancellation of flexible reverse pairs."""
        rels = list(self.cells)
        for e in self.edges:
            r = self.edge_by_id.get(e.reverse) if e.reverse else None
            if r is not None and e.flexible and r.flexible:
                rels.append(Relation(Word(e.src, e.src, (e.id, r.id)), Word(e.src, e.src, ())))
        return Presentation(self.edge_quiver, tuple(rels))

    @cached_property
    def generator_quiver(self) -> Quiver:
        """Quiver on flexible vertices with one arrow per controlled generator."""
        return Quiver(self.flexible_vertices, tuple(Arrow(g.name, g.src, g.tgt) for g in self.controlled))

    def expand(self, w: Word) -> Word:
        """Edge word of a word in the generator quiver."""
        paths = {g.name: g.path.arrows for g in self.controlled}
        out: tuple[str, ...] = ()
        for name in w.arrows:
            out += paths[name]
        return Word(w.src, w.tgt, out)

    @property
    def metadata(self) -> dict[str, str]:
        return dict(self.meta)

    def summary(self) -> str:
        return (
            f"{len(self.vertices)} vertices ({len(self.flexible)} flexible), {len(self.edges)} edges, "
            f"{len(self.generators)} generators, {len(self.cells)} cells"
        )


def reversible_pair(edge_id: str, src: str, tgt: str) -> tuple[Edge, Edge]:
    """A natural-interval segment: flexible edge plus its flexible inverse."""
    inv = inverse_id(edge_id)
    return Edge(edge_id, src, tgt, True, inv), Edge(inv, tgt, src, True, edge_id)
