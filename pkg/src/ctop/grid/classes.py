"""Dihomotopy classes of lattice paths and the diagnostics built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Literal

import numpy as np

from ..fpcat import Arrow, Presentation, Quiver, Word, relations_from_image
from . import _kernels
from .region import GridError, GridRegion, LatticePath, Vertex


def _span(r: GridRegion, src: Vertex, tgt: Vertex) -> tuple[int, int]:
    for v in (src, tgt):
        if not r.contains(v):
            raise GridError(f"vertex {v} outside the {r.width}x{r.height} grid")
    dx, dy = tgt[0] - src[0], tgt[1] - src[1]
    if dx < 0 or dy < 0:
        raise GridError(f"no monotone path from {src} to {tgt}")
    return dx, dy


def enumerate_paths(r: GridRegion, src: Vertex | None = None, tgt: Vertex | None = None) -> list[LatticePath]:
    """All monotone paths src -> tgt, lexicographic with R < U."""
    src, tgt = src or r.start, tgt or r.end
    dx, dy = _span(r, src, tgt)
    return [LatticePath.from_code(src, int(c), dx + dy) for c in _kernels.enumerate_codes(dx, dy)]


@dataclass(frozen=True)
class PathClass:
    representative: LatticePath
    size: int


@dataclass(frozen=True)
class ClassPartition:
    src: Vertex
    tgt: Vertex
    classes: tuple[PathClass, ...]
    # number of square moves that merged two previously separate groups
    moves: int
    codes: np.ndarray = field(repr=False, compare=False)
    labels: np.ndarray = field(repr=False, compare=False)
    merges: np.ndarray = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def total(self) -> int:
        return int(len(self.codes))

    def class_index(self, p: LatticePath) -> int:
        """Index into ``classes`` of the class containing ``p``."""
        if (p.start, p.end) != (self.src, self.tgt):
            raise GridError(f"path {p.start}->{p.end} is not a path {self.src}->{self.tgt}")
        i = int(np.searchsorted(self.codes, p.code()))
        return int(self._rank[self.labels[i]])

    @cached_property
    def _rank(self) -> dict[int, int]:
        # classes are ordered by representative, i.e. by smallest member index
        firsts: dict[int, int] = {}
        for idx, lab in enumerate(self.labels.tolist()):
            firsts.setdefault(lab, idx)
        order = sorted(firsts, key=firsts.__getitem__)
        return {lab: k for k, lab in enumerate(order)}

    def members(self, k: int) -> list[LatticePath]:
        rank = self._rank
        n = self.tgt[0] - self.src[0] + self.tgt[1] - self.src[1]
        return [
            LatticePath.from_code(self.src, int(c), n)
            for c, lab in zip(self.codes.tolist(), self.labels.tolist())
            if rank[lab] == k
        ]

    def to_dict(self) -> dict:
        return {"classes": [{"representative": c.representative.steps, "size": c.size} for c in self.classes]}


def dihomotopy_classes(
    r: GridRegion, src: Vertex | None = None, tgt: Vertex | None = None, backend: str | None = None
) -> ClassPartition:
    """Paths src -> tgt modulo exchanging RU with UR across a present cell."""
    src, tgt = src or r.start, tgt or r.end
    return _classes_cached(r, src, tgt, backend or _kernels.backend())


@lru_cache(maxsize=4096)
def _classes_cached(r: GridRegion, src: Vertex, tgt: Vertex, backend: str) -> ClassPartition:
    dx, dy = _span(r, src, tgt)
    codes = _kernels.enumerate_codes(dx, dy, backend)
    labels, merges = _kernels.square_classes(codes, dx, dy, r.blocked(src), backend)
    _, first, counts = np.unique(labels, return_index=True, return_counts=True)
    order = np.argsort(first, kind="stable")
    classes = tuple(
        PathClass(LatticePath.from_code(src, int(codes[first[k]]), dx + dy), int(counts[k])) for k in order
    )
    codes.setflags(write=False)
    labels.setflags(write=False)
    return ClassPartition(src, tgt, classes, int(len(merges)), codes, labels, merges)


def replay_merge(r: GridRegion, part: ClassPartition, a: int, b: int) -> bool:
    """True if paths a and b differ by one RU/UR exchange across a present cell."""
    n = part.tgt[0] - part.src[0] + part.tgt[1] - part.src[1]
    pa = LatticePath.from_code(part.src, int(part.codes[a]), n)
    pb = LatticePath.from_code(part.src, int(part.codes[b]), n)
    diff = [i for i in range(n) if pa.steps[i] != pb.steps[i]]
    if len(diff) != 2 or diff[1] != diff[0] + 1:
        return False
    i = diff[0]
    if {pa.steps[i : i + 2], pb.steps[i : i + 2]} != {"RU", "UR"}:
        return False
    x, y = pa.vertices()[i]
    return (x + 1, y + 1) not in r.forbidden


# -- per-vertex diagnostics --------------------------------------------------------------------


@dataclass(frozen=True)
class ClassMatrix:
    region: GridRegion
    into: dict[Vertex, int]  # classes (0,0) -> v
    out_of: dict[Vertex, int]  # classes v -> (w,h)
    splits: tuple[Vertex, ...]  # more classes leave v than leave any successor
    merges: tuple[Vertex, ...]  # more classes reach v than reach any predecessor

    @property
    def branch_vertices(self) -> tuple[Vertex, ...]:
        return tuple(sorted(set(self.splits) | set(self.merges), key=lambda v: (v[1], v[0])))

    def model_objects(self) -> tuple[Vertex, ...]:
        """Branch vertices together with the two corners."""
        vs = set(self.branch_vertices) | {self.region.start, self.region.end}
        return tuple(sorted(vs, key=lambda v: (v[1], v[0])))


def class_matrix(r: GridRegion) -> ClassMatrix:
    into = {v: len(dihomotopy_classes(r, r.start, v)) for v in r.vertices()}
    out_of = {v: len(dihomotopy_classes(r, v, r.end)) for v in r.vertices()}
    splits, merges = [], []
    for x, y in r.vertices():
        succ = [(x + 1, y), (x, y + 1)]
        succ = [s for s in succ if r.contains(s)]
        if succ and out_of[x, y] > max(out_of[s] for s in succ):
            splits.append((x, y))
        pred = [p for p in ((x - 1, y), (x, y - 1)) if r.contains(p)]
        if pred and into[x, y] > max(into[p] for p in pred):
            merges.append((x, y))
    return ClassMatrix(r, into, out_of, tuple(splits), tuple(merges))


# -- diamonds --------------------------------------------------------------------------------


def cell_commutes(
    r: GridRegion,
    first: tuple[LatticePath, LatticePath],
    second: tuple[LatticePath, LatticePath],
) -> bool:
    """Whether the composites ``first[0].first[1]`` and ``second[0].second[1]`` are dihomotopic."""
    a1, a2 = first
    b1, b2 = second
    u, v = a1.then(a2), b1.then(b2)
    if (u.start, u.end) != (v.start, v.end):
        raise GridError(f"diamond sides do not share endpoints: {u.start}->{u.end} vs {v.start}->{v.end}")
    part = dihomotopy_classes(r, u.start, u.end)
    return part.class_index(u) == part.class_index(v)


# -- presentations -----------------------------------------------------------------------------

Semantics = Literal["c", "d-truncated"]


def vertex_name(v: Vertex) -> str:
    return f"({v[0]},{v[1]})"


def model_vertices(r: GridRegion, semantics: Semantics = "c") -> tuple[Vertex, ...]:
    if semantics == "c":
        vs = set(r.flexible)
    elif semantics == "d-truncated":
        vs = set(r.flexible) | set(class_matrix(r).model_objects())
    else:
        raise GridError(f"unknown semantics {semantics!r}; expected 'c' or 'd-truncated'")
    return tuple(sorted(vs, key=lambda v: (v[1], v[0])))


def to_presentation(r: GridRegion, semantics: Semantics = "c", depth: int = 4) -> Presentation:
    """Presentation on the chosen flexible vertices.

    One generator per class between two flexible vertices none of whose
    members passes through a third flexible vertex; generator words are
    identified when their concatenated paths are dihomotopic.
    """
    objs = model_vertices(r, semantics)
    flex = set(objs)
    arrows = []
    path_of: dict[str, LatticePath] = {}
    for s in objs:
        for t in objs:
            if s == t or t[0] < s[0] or t[1] < s[1]:
                continue
            part = dihomotopy_classes(r, s, t)
            for k, cls in enumerate(part.classes):
                if any(set(p.vertices()[1:-1]) & flex for p in part.members(k)):
                    continue
                name = f"[{vertex_name(s)}:{cls.representative.steps}]"
                arrows.append(Arrow(name, vertex_name(s), vertex_name(t)))
                path_of[name] = cls.representative
    quiver = Quiver(tuple(vertex_name(v) for v in objs), tuple(arrows))
    start_of = {vertex_name(v): v for v in objs}

    def key(w: Word) -> tuple[int, int]:
        p = LatticePath(start_of[w.src])
        for a in w.arrows:
            p = p.then(path_of[a])
        part = dihomotopy_classes(r, p.start, p.end)
        return (p.end, part.class_index(p))  # type: ignore[return-value]

    return Presentation(quiver, relations_from_image(quiver, key, depth))
