"""Planar grid regions with forbidden unit cells, and monotone lattice paths."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

Vertex = tuple[int, int]
Cell = tuple[int, int]

DEFAULT_MAX_GRID = 26


class GridError(ValueError):
    pass


def max_grid() -> int:
    """Largest allowed width + height (``CTOP_MAX_GRID`` overrides)."""
    raw = os.environ.get("CTOP_MAX_GRID")
    if raw is None:
        return DEFAULT_MAX_GRID
    try:
        return int(raw)
    except ValueError:
        raise GridError(f"CTOP_MAX_GRID must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class GridRegion:
    """The square [0,w] x [0,h] minus some open unit cells.

    Cell (i, j), 1-based, is the unit square [i-1, i] x [j-1, j].  Paths may
    run along the boundary of a forbidden cell.
    """

    width: int
    height: int
    forbidden: frozenset[Cell] = frozenset()
    flexible: frozenset[Vertex] = field(default=frozenset())
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise GridError("width and height must be >= 0")
        if self.width + self.height > max_grid():
            raise GridError(
                f"grid {self.width}x{self.height} exceeds width + height <= {max_grid()} (set CTOP_MAX_GRID to raise)"
            )
        for c in self.forbidden:
            if not (1 <= c[0] <= self.width and 1 <= c[1] <= self.height):
                raise GridError(f"forbidden cell {c} outside [1..{self.width}]x[1..{self.height}]")
        for v in self.flexible:
            if not self.contains(v):
                raise GridError(f"flexible vertex {v} outside the grid")
        corners = {(0, 0), (self.width, self.height)}
        object.__setattr__(self, "flexible", frozenset(self.flexible) | corners)

    @classmethod
    def build(
        cls,
        width: int,
        height: int,
        forbidden: Iterable[Iterable[int]] = (),
        flexible: Iterable[Iterable[int]] = (),
        name: str = "",
    ) -> GridRegion:
        return cls(
            width,
            height,
            frozenset(tuple(map(int, c)) for c in forbidden),  # type: ignore[misc]
            frozenset(tuple(map(int, v)) for v in flexible),  # type: ignore[misc]
            name,
        )

    @property
    def start(self) -> Vertex:
        return (0, 0)

    @property
    def end(self) -> Vertex:
        return (self.width, self.height)

    def contains(self, v: Vertex) -> bool:
        return 0 <= v[0] <= self.width and 0 <= v[1] <= self.height

    def vertices(self) -> list[Vertex]:
        """All lattice vertices, row by row from the bottom."""
        return [(x, y) for y in range(self.height + 1) for x in range(self.width + 1)]

    def blocked(self, src: Vertex = (0, 0)) -> np.ndarray:
        """Boolean array: ``[x, y]`` is the cell with lower-left corner src + (x, y)."""
        arr = np.zeros((self.width + 1, self.height + 1), dtype=np.bool_)
        for i, j in self.forbidden:
            x, y = i - 1 - src[0], j - 1 - src[1]
            if x >= 0 and y >= 0:
                arr[x, y] = True
        return arr

    def transpose(self) -> GridRegion:
        return GridRegion(
            self.height,
            self.width,
            frozenset((j, i) for i, j in self.forbidden),
            frozenset((y, x) for x, y in self.flexible),
            self.name and self.name + "^T",
        )

    def with_flexible(self, vertices: Iterable[Vertex]) -> GridRegion:
        return GridRegion(self.width, self.height, self.forbidden, frozenset(vertices), self.name)

    def all_flexible(self) -> GridRegion:
        """The same region with every vertex flexible."""
        return self.with_flexible(self.vertices())

    def to_dict(self) -> dict[str, Any]:
        return {
            "width": self.width,
            "height": self.height,
            "forbidden": [list(c) for c in sorted(self.forbidden)],
            "flexible": [list(v) for v in sorted(self.flexible)],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> GridRegion:
        if not isinstance(d, dict):
            raise GridError("grid: expected a JSON object")
        for key in ("width", "height"):
            if key not in d:
                raise GridError(f"grid: missing field {key!r}")
            if not isinstance(d[key], int):
                raise GridError(f"grid: field {key!r} must be an integer")
        for key in ("forbidden", "flexible"):
            for i, item in enumerate(d.get(key, [])):
                if not (isinstance(item, list) and len(item) == 2 and all(isinstance(t, int) for t in item)):
                    raise GridError(f"grid: {key}[{i}] must be a pair of integers")
        return cls.build(d["width"], d["height"], d.get("forbidden", []), d.get("flexible", []), d.get("name", ""))


@dataclass(frozen=True, order=True)
class LatticePath:
    start: Vertex
    steps: str = ""

    def __post_init__(self) -> None:
        if set(self.steps) - {"R", "U"}:
            raise GridError(f"path steps must be R or U, got {self.steps!r}")

    @property
    def end(self) -> Vertex:
        r = self.steps.count("R")
        return (self.start[0] + r, self.start[1] + len(self.steps) - r)

    def vertices(self) -> list[Vertex]:
        x, y = self.start
        out = [(x, y)]
        for s in self.steps:
            x, y = (x + 1, y) if s == "R" else (x, y + 1)
            out.append((x, y))
        return out

    def then(self, other: LatticePath) -> LatticePath:
        if self.end != other.start:
            raise GridError(f"cannot compose: path ends at {self.end}, next starts at {other.start}")
        return LatticePath(self.start, self.steps + other.steps)

    def code(self) -> int:
        out = 0
        for s in self.steps:
            out = (out << 1) | (s == "U")
        return out

    @classmethod
    def from_code(cls, start: Vertex, code: int, n: int) -> LatticePath:
        steps = "".join("U" if (code >> (n - 1 - i)) & 1 else "R" for i in range(n))
        return cls(start, steps)

    def __str__(self) -> str:
        return self.steps or "(empty)"


BUILTIN_GRIDS: dict[str, GridRegion] = {
    "annulus": GridRegion.build(3, 3, [(2, 2)], name="annulus"),
    "Y": GridRegion.build(5, 5, [(2, 4), (4, 2)], name="Y"),
    "Z": GridRegion.build(5, 5, [(2, 2), (4, 4)], name="Z"),
}


def builtin_grid(name: str) -> GridRegion:
    try:
        return BUILTIN_GRIDS[name]
    except KeyError:
        raise GridError(f"unknown builtin grid {name!r}; known: {', '.join(BUILTIN_GRIDS)}") from None
