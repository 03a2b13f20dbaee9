"""Constructions on c-graphs: flexible part, generated d-structure, restriction, quotient, product."""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from ..fpcat import Relation, Word
from .cgraph import CGraph, CGraphError, Edge, Generator


def _keep_cells(cells: Iterable[Relation], edges: set[str]) -> tuple[Relation, ...]:
    return tuple(c for c in cells if set(c.left.arrows) <= edges and set(c.right.arrows) <= edges)


def _keep_reverse(edges: Iterable[Edge]) -> tuple[Edge, ...]:
    """Drop reverse links whose partner is gone."""
    edges = tuple(edges)
    ids = {e.id for e in edges}
    return tuple(
        e if e.reverse is None or e.reverse in ids else Edge(e.id, e.src, e.tgt, e.flexible, None) for e in edges
    )


def flexible_part(g: CGraph) -> CGraph:
    """Largest flexible sub-c-graph: flexible vertices, flexible edges, generators made of them."""
    edges = _keep_reverse(e for e in g.edges if e.flexible)
    ids = {e.id for e in edges}
    gens = tuple(gen for gen in g.generators if set(gen.path.arrows) <= ids)
    return CGraph(g.flexible_vertices, g.flexible, edges, gens, _keep_cells(g.cells, ids), g.meta)


def dspace_edges(g: CGraph) -> set[str]:
    """Edges carried into the generated d-structure.

    These are the edges of controlled paths plus every edge on a cell: a
    cell is a 2-dimensional piece swept by controlled paths, so its sides
    are traversable.  Edges on neither carry no controlled motion.
    """
    used = {a for gen in g.controlled for a in gen.path.arrows}
    for c in g.cells:
        used.update(c.left.arrows)
        used.update(c.right.arrows)
    return used


def generate_dspace(g: CGraph) -> CGraph:
    """Every vertex flexible, every edge of :func:`dspace_edges` a flexible one-edge generator.

    Reverse links between kept edges are kept; since both partners are now
    flexible they cancel.
    """
    used = dspace_edges(g)
    edges = _keep_reverse(Edge(e.id, e.src, e.tgt, True, e.reverse) for e in g.edges if e.id in used)
    return CGraph(g.vertices, frozenset(g.vertices), edges, (), _keep_cells(g.cells, used), g.meta)


def restrict(g: CGraph, keep: Callable[[str], bool] | Iterable[str]) -> CGraph:
    """Full sub-c-graph on the vertices accepted by ``keep``."""
    if not callable(keep):
        wanted = set(keep)
        keep = wanted.__contains__
    vertices = tuple(v for v in g.vertices if keep(v))
    vs = set(vertices)
    edges = _keep_reverse(e for e in g.edges if e.src in vs and e.tgt in vs)
    ids = {e.id for e in edges}
    gens = tuple(
        gen for gen in g.generators if set(gen.path.arrows) <= ids and gen.src in vs
    )
    return CGraph(vertices, g.flexible & vs, edges, gens, _keep_cells(g.cells, ids), g.meta)


def quotient(
    g: CGraph,
    collapse: Iterable[str],
    edges: Iterable[str] | None = None,
    point: str = "*",
) -> CGraph:
    """Collapse a vertex set to one flexible vertex.

    ``edges`` lists the edges that become identities; by default these are
    the non-loop edges with both endpoints in the collapsed set.
    """
    coll = set(collapse)
    if not coll:
        raise CGraphError("collapse set is empty")
    if not coll <= set(g.vertices):
        raise CGraphError(f"cannot collapse unknown vertices {sorted(coll - set(g.vertices))}")
    while point in set(g.vertices) - coll:
        point += "'"
    if edges is None:
        dropped = {e.id for e in g.edges if e.src in coll and e.tgt in coll and e.src != e.tgt}
    else:
        dropped = set(edges)
        for eid in dropped:
            e = g.edge_by_id.get(eid)
            if e is None or not (e.src in coll and e.tgt in coll):
                raise CGraphError(f"edge {eid!r} does not lie in the collapsed set")

    def v(x: str) -> str:
        return point if x in coll else x

    def w(word: Word) -> Word:
        return Word(v(word.src), v(word.tgt), tuple(a for a in word.arrows if a not in dropped))

    vertices = tuple(dict.fromkeys(v(x) for x in g.vertices))
    new_edges = _keep_reverse(
        Edge(e.id, v(e.src), v(e.tgt), e.flexible, e.reverse) for e in g.edges if e.id not in dropped
    )
    gens = []
    for gen in g.generators:
        path = w(gen.path)
        if path.arrows:
            gens.append(Generator(gen.name, path))
    cells = []
    for c in g.cells:
        left, right = w(c.left), w(c.right)
        if left != right:
            cells.append(Relation(left, right))
    flexible = frozenset(v(x) for x in g.flexible) | {point}
    return CGraph(vertices, flexible, new_edges, tuple(gens), tuple(dict.fromkeys(cells)), g.meta)


def _tuple_name(parts: Sequence[str]) -> str:
    return "(" + ",".join(parts) + ")"


def product(*factors: CGraph, diagonals: bool = False) -> CGraph:
    """Cartesian product of c-graphs.

    Edges move one coordinate at a time and commute through interchange
    cells.  Generators move one factor along one of its generators; with
    ``diagonals`` they may also move several factors at once, the steps
    being interleaved round-robin.
    """
    if not factors:
        raise CGraphError("product of no factors")
    n = len(factors)
    vertices = tuple(_tuple_name(t) for t in itertools.product(*(f.vertices for f in factors)))
    flexible = frozenset(_tuple_name(t) for t in itertools.product(*(f.flexible_vertices for f in factors)))

    def edge_name(k: int, eid: str, pos: Sequence[str]) -> str:
        return _tuple_name([eid if i == k else pos[i] for i in range(n)])

    edges = []
    for k, f in enumerate(factors):
        others = [fac.vertices for fac in factors]
        for e in f.edges:
            others[k] = (e.src,)
            for pos in itertools.product(*others):
                src = list(pos)
                tgt = list(pos)
                tgt[k] = e.tgt
                flexible_e = e.flexible and all(p in factors[i].flexible for i, p in enumerate(pos) if i != k)
                rev = edge_name(k, e.reverse, pos) if e.reverse else None
                edges.append(Edge(edge_name(k, e.id, pos), _tuple_name(src), _tuple_name(tgt), flexible_e, rev))

    def lift(k: int, word: Word, pos: Sequence[str]) -> Word:
        """Word of factor k run with the other coordinates fixed at ``pos``."""
        cur = list(pos)
        cur[k] = word.src
        start = _tuple_name(cur)
        out = []
        for a in word.arrows:
            out.append(edge_name(k, a, cur))
            cur[k] = factors[k].edge_by_id[a].tgt
        return Word(start, _tuple_name(cur), tuple(out))

    cells = []
    for k, f in enumerate(factors):
        for c in f.cells:
            others = [fac.vertices for fac in factors]
            others[k] = (c.left.src,)
            for pos in itertools.product(*others):
                cells.append(Relation(lift(k, c.left, pos), lift(k, c.right, pos)))
    for k, l in itertools.combinations(range(n), 2):
        for e in factors[k].edges:
            for f_ in factors[l].edges:
                others = [fac.vertices for fac in factors]
                others[k], others[l] = (e.src,), (f_.src,)
                for pos in itertools.product(*others):
                    ew, fw = Word(e.src, e.tgt, (e.id,)), Word(f_.src, f_.tgt, (f_.id,))
                    mid1 = list(pos)
                    mid1[k] = e.tgt
                    mid2 = list(pos)
                    mid2[l] = f_.tgt
                    cells.append(
                        Relation(
                            lift(k, ew, pos).then(lift(l, fw, mid1)),
                            lift(l, fw, pos).then(lift(k, ew, mid2)),
                        )
                    )

    gens = []
    sizes = range(1, n + 1) if diagonals else (1,)
    for size in sizes:
        for moving in itertools.combinations(range(n), size):
            choices = [
                [g.name for g in factors[i].generators] if i in moving else list(factors[i].flexible_vertices)
                for i in range(n)
            ]
            for combo in itertools.product(*choices):
                paths = {i: next(g.path for g in factors[i].generators if g.name == combo[i]) for i in moving}
                cur = list(combo)
                for i in moving:
                    cur[i] = paths[i].src
                start = _tuple_name(cur)
                steps = []
                for j in range(max(len(p) for p in paths.values())):
                    for i in moving:
                        if j < len(paths[i]):
                            a = paths[i].arrows[j]
                            steps.append(edge_name(i, a, cur))
                            cur[i] = factors[i].edge_by_id[a].tgt
                gens.append(Generator(_tuple_name(combo), Word(start, _tuple_name(cur), tuple(steps))))
    meta = {"construction": "product(" + ", ".join(f.metadata.get("name", "?") for f in factors) + ")"}
    return CGraph(vertices, flexible, tuple(edges), tuple(gens), tuple(cells), tuple(sorted(meta.items())))
