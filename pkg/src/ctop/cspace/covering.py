"""Coverings of c-graphs and hom-set computation by path lifting.

Arrows x -> y of the base correspond to arrows of the total space from a
fixed point over x to some point over y, found by lifting generator words.
When the total space has at most one arrow between any two points (a chain,
say) a class is determined by its endpoint alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from ..fpcat import DEFAULT_BOUND, HomClass, HomSetResult, Word, is_complete, rewriting_system
from .cgraph import CGraph, CGraphError, Generator
from .pi1 import fundamental_presentation
from .registry import circle, line


class CoveringError(CGraphError):
    """The projection is not a covering (lifting fails or is ambiguous)."""


@dataclass(frozen=True)
class CoveringMap:
    total: CGraph
    base: CGraph
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    # total vertices where a finite window of an infinite cover ends; lifts may stop there
    boundary: frozenset[str] = field(default_factory=frozenset)

    def project(self, w: Word) -> tuple[str, ...]:
        return tuple(self.edge_map[a] for a in w.arrows)

    def validate(self) -> None:
        t, b = self.total, self.base
        for v in t.vertices:
            if self.vertex_map.get(v) not in b.vertices:
                raise CoveringError(f"vertex_map: {v!r} has no image in the base")
            if (v in t.flexible) != (self.vertex_map[v] in b.flexible):
                raise CoveringError(f"vertex_map: {v!r} does not preserve flexibility")
        for e in t.edges:
            img = b.edge_by_id.get(self.edge_map.get(e.id, ""))
            if img is None:
                raise CoveringError(f"edge_map: {e.id!r} has no image in the base")
            if (self.vertex_map[e.src], self.vertex_map[e.tgt]) != (img.src, img.tgt):
                raise CoveringError(f"edge_map: {e.id!r} does not commute with endpoints")
        base_paths = {g.path.arrows for g in b.controlled}
        for g in t.controlled:
            if self.project(g.path) not in base_paths:
                raise CoveringError(f"generator {g.name!r} does not project to a base generator")
        for v in t.flexible_vertices:
            for g in b.controlled:
                if g.src != self.vertex_map[v]:
                    continue
                n = len(self._lifts(g, v))
                if n > 1 or (n == 0 and v not in self.boundary):
                    raise CoveringError(f"generator {g.name!r} has {n} lifts at {v!r}")

    def _lifts(self, g: Generator, v: str) -> list[Generator]:
        return [h for h in self.total.controlled if h.src == v and self.project(h.path) == g.path.arrows]

    def fibre(self, x: str) -> list[str]:
        return [v for v in self.total.vertices if self.vertex_map[v] == x]


@dataclass(frozen=True)
class LiftResult:
    hom: HomSetResult
    start: str
    # per class, the endpoint of its lift and the number of generators traversed
    endpoints: tuple[str, ...]
    lengths: tuple[int, ...]


def lift_hom(c: CoveringMap, src: str, tgt: str, max_len: int = DEFAULT_BOUND) -> LiftResult:
    """Hom classes src -> tgt of the base, one per reachable fibre endpoint."""
    c.validate()
    base = c.base
    for x in (src, tgt):
        if x not in base.flexible:
            raise CoveringError(f"{x!r} is not a flexible vertex of the base")
    starts = [v for v in c.fibre(src) if v not in c.boundary]
    if not starts:
        raise CoveringError(f"no interior point over {src!r}")
    start = starts[0]
    lift_of = {
        (g.name, v): c._lifts(g, v)[0]
        for v in c.total.flexible_vertices
        for g in base.controlled
        if g.src == c.vertex_map[v] and c._lifts(g, v)
    }
    # lifted words are compared in the total space's fundamental category
    total = fundamental_presentation(c.total)
    exact = is_complete(total)
    reduce = rewriting_system(total).reduce if exact else (lambda w: ())
    truncated = False
    groups: dict[tuple[str, tuple[str, ...]], list[Word]] = {}
    frontier = [(Word(src, src, ()), start, ())]
    q = base.generator_quiver
    for _ in range(max_len + 1):
        nxt = []
        for w, v, lifted in frontier:
            if w.tgt == tgt:
                groups.setdefault((v, reduce(lifted)), []).append(w)
            for a in q.outgoing[w.tgt]:
                h = lift_of.get((a.id, v))
                if h is None:
                    truncated = True
                    continue
                nxt.append((Word(src, a.tgt, w.arrows + (a.id,)), h.tgt, lifted + (h.name,)))
        frontier = nxt
    order = sorted(groups, key=lambda k: groups[k][0].key())
    classes = tuple(HomClass(groups[k][0], tuple(groups[k])) for k in order)
    status = "complete" if exact and not truncated else "bounded-partial"
    hom = HomSetResult(src, tgt, classes, status, max_len)
    return LiftResult(hom, start, tuple(k[0] for k in order), tuple(len(groups[k][0]) for k in order))


def identity_covering(g: CGraph) -> CoveringMap:
    return CoveringMap(g, g, {v: v for v in g.vertices}, {e.id: e.id for e in g.edges})


def chain_over_cycle(n: int, window: int) -> CoveringMap:
    """The integer chain 0..window wound around the n-stop circle."""
    total = line(window)
    base = circle(n)
    vmap = {str(k): f"x{k % n}" for k in range(window + 1)}
    emap = {f"e{k}": ("e" if n == 1 else f"e{k % n}") for k in range(window)}
    return CoveringMap(total, base, vmap, emap, frozenset({str(window)}))


def builtin_covering(name: str, bound: int = DEFAULT_BOUND) -> CoveringMap:
    """``chain_over_cycle(n)``; the window is sized so lifts of length ``bound`` fit."""
    m = re.fullmatch(r"chain_over_cycle(?:\((\d+)\))?", name.strip())
    if not m:
        raise CoveringError(f"unknown builtin covering {name!r}; known: chain_over_cycle(n)")
    n = int(m.group(1) or 1)
    if n < 1:
        raise CoveringError("chain_over_cycle needs n >= 1")
    return chain_over_cycle(n, bound + n)
