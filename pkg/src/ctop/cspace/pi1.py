"""Fundamental-category presentations of c-graphs and the functors between them."""

from __future__ import annotations

from dataclasses import dataclass

from ..fpcat import (
    DEFAULT_BOUND,
    CatFunctor,
    Presentation,
    Relation,
    Word,
    functor_profile,
    is_complete,
    relations_from_image,
    rewriting_system,
)
from .cgraph import CGraph, Edge, Generator
from .ops import dspace_edges, flexible_part, generate_dspace


def default_depth(g: CGraph) -> int:
    """Generator-word length searched for relations: enough to see every cell."""
    longest = max((max(len(c.left), len(c.right)) for c in g.cells), default=0)
    return max(3, longest + 1)


def fundamental_presentation(g: CGraph, depth: int | None = None) -> Presentation:
    """Presentation of the fundamental category.

    Objects are the flexible vertices and there is one generating arrow per
    controlled generator.  Two generator words are identified when their
    edge words agree modulo cells (and cancellation of flexible reverse
    pairs); relations are collected over generator words up to ``depth``.
    """
    depth = default_depth(g) if depth is None else depth
    rs = rewriting_system(g.edge_presentation)
    quiver = g.generator_quiver
    paths = {gen.name: gen.path.arrows for gen in g.controlled}

    def key(w: Word) -> tuple[str, ...]:
        out: tuple[str, ...] = ()
        for name in w.arrows:
            out += paths[name]
        return rs.reduce(out)

    return Presentation(quiver, relations_from_image(quiver, key, depth))


def edge_word_functor(g: CGraph, h: CGraph, pg: Presentation, ph: Presentation) -> CatFunctor:
    """Functor induced by an inclusion of c-graphs sharing edge ids.

    Each generator of ``g`` is sent to the word of ``h``-generators that
    spells the same edge path; the split is found by dynamic programming
    over ``h``'s generator paths and the shortlex-least split is taken.
    """
    by_path: dict[tuple[str, ...], list[Generator]] = {}
    for gen in h.controlled:
        by_path.setdefault(gen.path.arrows, []).append(gen)
    arrow_map = {}
    for gen in g.controlled:
        split = _split(gen.path, by_path, h)
        if split is None:
            raise ValueError(f"generator {gen.name!r} is not a concatenation of target generators")
        arrow_map[gen.name] = split
    return CatFunctor(pg, ph, {x: x for x in pg.objects}, arrow_map)


def _split(path: Word, by_path: dict[tuple[str, ...], list[Generator]], h: CGraph) -> Word | None:
    arrows = path.arrows
    n = len(arrows)
    best: list[tuple[str, ...] | None] = [None] * (n + 1)
    best[0] = ()
    for i in range(n):
        if best[i] is None:
            continue
        for j in range(i + 1, n + 1):
            for gen in by_path.get(arrows[i:j], ()):
                cand = best[i] + (gen.name,)
                if best[j] is None or (len(cand), cand) < (len(best[j]), best[j]):
                    best[j] = cand
    return Word(path.src, path.tgt, best[n]) if best[n] is not None else None


@dataclass(frozen=True)
class InducedFunctors:
    flexible: CatFunctor  # Pi(Fl g) -> Pi(g)
    generated: CatFunctor  # Pi(g) -> Pi(g^)


def induced_functors(g: CGraph) -> InducedFunctors:
    fl, hat = flexible_part(g), generate_dspace(g)
    p_fl, p, p_hat = fundamental_presentation(fl), fundamental_presentation(g), fundamental_presentation(hat)
    return InducedFunctors(edge_word_functor(fl, g, p_fl, p), edge_word_functor(g, hat, p, p_hat))


# -- preflexibility --------------------------------------------------------------------------


@dataclass(frozen=True)
class PreflexResult:
    preflexible: bool
    bound: int
    # edge word (after subdividing rigid reverse pairs) that is not controlled
    witness: Word | None = None
    # True when some walk could be neither confirmed nor refuted within the bound
    undetermined: bool = False

    def __bool__(self) -> bool:
        return self.preflexible


def _subdivided(g: CGraph) -> tuple[CGraph, dict[str, tuple[str, ...]]]:
    """Split each rigid reverse pair at a shared midpoint.

    A path of the generated d-space may turn back in the middle of such a
    segment; the halves make those turns visible at edge level.  Returns
    the new graph (all vertices flexible, every edge flexible, no
    generators) and the image of every original edge.
    """
    used = dspace_edges(g)
    image: dict[str, tuple[str, ...]] = {}
    vertices = list(g.vertices)
    edges: list[Edge] = []
    done: set[str] = set()
    for e in g.edges:
        if e.id not in used or e.id in done:
            continue
        r = g.edge_by_id.get(e.reverse) if e.reverse else None
        if r is None or r.id not in used or (e.flexible and r.flexible):
            image[e.id] = (e.id,)
            edges.append(Edge(e.id, e.src, e.tgt, True))
            continue
        mid = f"mid({e.id})"
        vertices.append(mid)
        e1, e2, r1, r2 = f"{e.id}#1", f"{e.id}#2", f"{r.id}#1", f"{r.id}#2"
        edges += [Edge(e1, e.src, mid, True), Edge(e2, mid, e.tgt, True)]
        edges += [Edge(r1, r.src, mid, True), Edge(r2, mid, r.tgt, True)]
        image[e.id], image[r.id] = (e1, e2), (r1, r2)
        done |= {e.id, r.id}

    def sub(w: Word) -> Word:
        out: tuple[str, ...] = ()
        for a in w.arrows:
            out += image[a]
        return Word(w.src, w.tgt, out)

    cells = [
        Relation(sub(c.left), sub(c.right))
        for c in g.cells
        if set(c.left.arrows) <= used and set(c.right.arrows) <= used
    ]
    for e in g.edges:
        r = g.edge_by_id.get(e.reverse) if e.reverse else None
        if r is not None and e.flexible and r.flexible and e.id in used and r.id in used:
            cells.append(Relation(Word(e.src, e.src, (e.id, r.id)), Word(e.src, e.src, ())))
    out = CGraph(tuple(vertices), frozenset(vertices), tuple(edges), (), tuple(cells))
    return out, image


def preflexible_check(g: CGraph, bound: int = 8) -> PreflexResult:
    """Check that every walk of the generated d-space between flexible vertices is controlled.

    Walks are enumerated up to ``bound`` edges (after subdivision).  A walk
    passes when it splits into generator paths, or failing that when it is
    congruent to a generator concatenation of length at most ``bound + 2``.
    The shortlex-first failing walk is returned as witness.
    """
    sub, image = _subdivided(g)
    pres = sub.edge_presentation
    complete = is_complete(pres)
    rs = rewriting_system(pres)
    gens_from: dict[str, list[tuple[tuple[str, ...], str]]] = {}
    for gen in g.controlled:
        path = tuple(a for e in gen.path.arrows for a in image[e])
        gens_from.setdefault(gen.src, []).append((path, gen.tgt))
    gen_paths = {p for outs in gens_from.values() for p, _ in outs}
    max_gen = max((len(p) for p in gen_paths), default=0)

    def splits(w: tuple[str, ...]) -> bool:
        ok = [True] + [False] * len(w)
        for j in range(1, len(w) + 1):
            ok[j] = any(ok[i] and w[i:j] in gen_paths for i in range(max(0, j - max_gen), j))
        return ok[-1]

    # normal forms of generator concatenations, per endpoint pair
    concat_nf: dict[tuple[str, str], set[tuple[str, ...]]] = {}
    if complete:
        seen: set[Word] = set()
        frontier = [Word(x, x, ()) for x in g.flexible_vertices]
        while frontier:
            nxt = []
            for w in frontier:
                if w in seen:
                    continue
                seen.add(w)
                concat_nf.setdefault((w.src, w.tgt), set()).add(rs.reduce(w.arrows))
                for path, tgt in gens_from.get(w.tgt, ()):
                    if len(w) + len(path) <= bound + 2:
                        nxt.append(Word(w.src, tgt, w.arrows + path))
            frontier = nxt

    undetermined = False
    q = sub.edge_quiver
    frontier = [Word(x, x, ()) for x in g.flexible_vertices]
    for _ in range(bound + 1):
        for w in frontier:
            if w.tgt not in g.flexible or splits(w.arrows):
                continue
            if complete:
                if rs.reduce(w.arrows) in concat_nf.get((w.src, w.tgt), set()):
                    continue
                return PreflexResult(False, bound, w)
            undetermined = True
        frontier = [Word(w.src, a.tgt, w.arrows + (a.id,)) for w in frontier for a in q.outgoing[w.tgt]]
    return PreflexResult(True, bound, None, undetermined)


def hat_is_full_and_faithful(g: CGraph, bound: int = DEFAULT_BOUND) -> bool:
    """Whether Pi(g) -> Pi(g^) is full and faithful on hom-sets within ``bound``."""
    prof = functor_profile(induced_functors(g).generated, bound)
    return prof.full and prof.faithful


__all__ = [
    "InducedFunctors",
    "PreflexResult",
    "default_depth",
    "edge_word_functor",
    "fundamental_presentation",
    "hat_is_full_and_faithful",
    "induced_functors",
    "preflexible_check",
]
