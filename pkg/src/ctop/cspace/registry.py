"""Named c-graph models.

Each model uses the coarsest vertex set that still separates its flexible
points and its generators.  Infinite spaces (the real line, the siphon
family) are cut to a finite window recorded in ``metadata``.
"""

from __future__ import annotations

import re
from typing import Callable

from .cgraph import CGraph, CGraphError, Edge, reversible_pair
from .ops import product, quotient


class UnknownModel(CGraphError):
    pass


def interval() -> CGraph:
    """cI: one rigid generator 0 -> 1, both endpoints flexible."""
    return CGraph.build(["0", "1"], ["0", "1"], [("i", "0", "1")], [["i"]], meta={"name": "cI"})


def interval_j() -> CGraph:
    """cJ: three flexible points, two rigid generators."""
    return CGraph.build(
        ["0", "1", "2"],
        ["0", "1", "2"],
        [("a", "0", "1"), ("b", "1", "2")],
        [["a"], ["b"]],
        meta={"name": "cJ"},
    )


def line(window: int = 8) -> CGraph:
    """cR cut to the integer window 0..window."""
    vs = [str(k) for k in range(window + 1)]
    edges = [(f"e{k}", vs[k], vs[k + 1]) for k in range(window)]
    return CGraph.build(
        vs, vs, edges, [[e[0]] for e in edges], meta={"name": f"cR({window})", "window": f"0..{window}"}
    )


def circle(n: int = 1) -> CGraph:
    """The n-stop circle: n flexible points, one generator per arc."""
    if n < 1:
        raise CGraphError("a circle needs at least one stop")
    vs = [f"x{k}" for k in range(n)]
    if n == 1:
        edges = [("e", "x0", "x0")]
    else:
        edges = [(f"e{k}", vs[k], vs[(k + 1) % n]) for k in range(n)]
    name = "cS1" if n == 1 else f"cnS1({n})"
    return CGraph.build(vs, vs, edges, [[e[0]] for e in edges], meta={"name": name})


def reversible_interval() -> CGraph:
    """cI~: the same segment traversed either way, as two rigid generators."""
    edges = [Edge("i", "0", "1", False, "r"), Edge("r", "1", "0", False, "i")]
    return CGraph.build(["0", "1"], ["0", "1"], edges, [["i"], ["r"]], meta={"name": "cI_rev"})


def delayed_interval(where: str = "minus") -> CGraph:
    """Interval whose single generator has a non-flexible midpoint."""
    return CGraph.build(
        ["0", "m", "1"],
        ["0", "1"],
        [("d0", "0", "m"), ("d1", "m", "1")],
        [("[i]", ["d0", "d1"])],
        meta={"name": f"cI_delayed_{where}"},
    )


def siphon(k: int = 3) -> CGraph:
    """Siphon truncated to k points x1 < ... < xk.

    Every upward segment (xi, xj) is controlled; the only downward path is
    the full descent [r] from xk to x1.
    """
    if k < 2:
        raise CGraphError("a siphon needs at least two points")
    vs = [f"x{i}" for i in range(1, k + 1)]
    edges = []
    for i in range(1, k):
        edges.append(Edge(f"s{i}", vs[i - 1], vs[i], False, f"t{i}"))
        edges.append(Edge(f"t{i}", vs[i], vs[i - 1], False, f"s{i}"))
    gens = [(f"({vs[i]},{vs[j]})", [f"s{m}" for m in range(i + 1, j + 1)]) for i in range(k) for j in range(i + 1, k)]
    gens.append(("[r]", [f"t{m}" for m in range(k - 1, 0, -1)]))
    return CGraph.build(vs, vs, edges, gens, meta={"name": f"siphon({k})", "window": f"{k} points"})


def on_off() -> CGraph:
    """On-off controller: two natural-interval time lines and two switching jumps.

    The state is off before the switching time T2 at which it may be turned
    on, and on after T1 at which it may be turned off.  Time points are
    t0 < T1 < T2 < t3.
    """
    edges = [
        *reversible_pair("p1", "off0", "off1"),
        *reversible_pair("p2", "off1", "off2"),
        *reversible_pair("q1", "on1", "on2"),
        *reversible_pair("q2", "on2", "on3"),
        Edge("on", "off2", "on2"),
        Edge("off", "on1", "off1"),
    ]
    vs = ["off0", "off1", "off2", "on1", "on2", "on3"]
    return CGraph.build(vs, vs, edges, [["on"], ["off"]], meta={"name": "onoff"})


def mixed() -> CGraph:
    """Interval that is flexible near both ends and rigid in between."""
    vs = ["0", "1", "2", "3"]
    edges = [Edge("u", "0", "1", True), Edge("j", "1", "2"), Edge("w", "2", "3", True)]
    return CGraph.build(vs, vs, edges, [["j"]], meta={"name": "mixed_03"})


def _segment() -> CGraph:
    """Single-generator interval with a non-flexible midpoint, the cube factor."""
    return CGraph.build(
        ["0", "1", "2"], ["0", "2"], [("a", "0", "1"), ("b", "1", "2")], [("[i]", ["a", "b"])], meta={"name": "cI"}
    )


def cube(n: int = 2) -> CGraph:
    """n-fold product of single-generator intervals, with diagonal generators."""
    if n < 1:
        raise CGraphError("cube dimension must be >= 1")
    g = product(*[_segment()] * n, diagonals=True)
    return _renamed(g, f"cube({n})")


def boundary(g: CGraph) -> list[str]:
    """Vertices of cube(n) with some coordinate at an end."""
    out = []
    for v in g.vertices:
        coords = v.strip("()").split(",")
        if any(c in ("0", "2") for c in coords):
            out.append(v)
    return out


def sphere(n: int = 2) -> CGraph:
    """cube(n) with its boundary collapsed to a point."""
    c = cube(n)
    return _renamed(quotient(c, boundary(c)), f"sphere({n})")


def torus(n: int = 2) -> CGraph:
    if n < 1:
        raise CGraphError("torus dimension must be >= 1")
    return _renamed(product(*[circle(1)] * n), f"torus({n})")


def _renamed(g: CGraph, name: str) -> CGraph:
    meta = dict(g.meta) | {"name": name}
    return CGraph(g.vertices, g.flexible, g.edges, g.generators, g.cells, tuple(sorted(meta.items())))


_FIXED: dict[str, Callable[[], CGraph]] = {
    "cI": interval,
    "cJ": interval_j,
    "cS1": lambda: circle(1),
    "cI_rev": reversible_interval,
    "cI_delayed_minus": lambda: delayed_interval("minus"),
    "cI_delayed_plus": lambda: delayed_interval("plus"),
    "onoff": on_off,
    "mixed_03": mixed,
}

_PARAM: dict[str, tuple[Callable[[int], CGraph], int]] = {
    "cR": (line, 8),
    "cnS1": (circle, 2),
    "siphon": (siphon, 3),
    "cube": (cube, 2),
    "torus": (torus, 2),
    "sphere": (sphere, 2),
}

NAMES = tuple(_FIXED) + tuple(f"{k}(n)" for k in _PARAM)


def registry(name: str) -> CGraph:
    """Model by name, e.g. ``cJ``, ``cnS1(3)``, ``c3S1``, ``cube(2)``."""
    name = name.strip()
    if name in _FIXED:
        return _FIXED[name]()
    m = re.fullmatch(r"c(\d+)S1", name)
    if m:
        return circle(int(m.group(1)))
    m = re.fullmatch(r"(\w+?)(?:\((\d+)\))?", name)
    if m and m.group(1) in _PARAM:
        fn, default = _PARAM[m.group(1)]
        return fn(int(m.group(2)) if m.group(2) else default)
    raise UnknownModel(f"unknown builtin model {name!r}; known: {', '.join(NAMES)}")


DESCRIPTIONS = {
    "cI": "standard c-interval, one rigid generator 0 -> 1",
    "cJ": "three-point c-interval, two rigid generators",
    "cS1": "one-stop circle",
    "cI_rev": "reversible c-interval, rigid generators i: 0 -> 1 and r: 1 -> 0",
    "cI_delayed_minus": "interval with a delayed start (non-flexible midpoint)",
    "cI_delayed_plus": "interval with a delayed end (non-flexible midpoint)",
    "onoff": "on-off controller: two natural intervals joined by two switching jumps",
    "mixed_03": "interval flexible near its ends, rigid in the middle",
    "cR(n)": "real line cut to the integer window 0..n",
    "cnS1(n)": "n-stop circle (also spelled c<n>S1)",
    "siphon(n)": "siphon truncated to n points",
    "cube(n)": "n-cube of single-generator intervals with diagonal generators",
    "torus(n)": "product of n one-stop circles",
    "sphere(n)": "cube(n) with its boundary collapsed",
}


def registry_entries() -> list[tuple[str, str]]:
    """(name, one-line description) for every model family."""
    return list(DESCRIPTIONS.items())
