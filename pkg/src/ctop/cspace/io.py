"""JSON and DOT serialisation of c-graphs and coverings.

Format::

    {"vertices": [...], "flexible": [...],
     "edges": [{"id", "src", "tgt", "reversible"?, "flexible"?, "reverse"?}],
     "generators": [[edge ids] | {"name", "path": [edge ids]}],
     "cells": [{"left": [...], "right": [...], "base"?}],
     "meta"?: {...}}

``reversible: true`` adds a flexible edge ``<id>^-1`` running backwards and
makes both edges cancel.
"""

from __future__ import annotations

from typing import Any

from .cgraph import CGraph, CGraphError, Edge, default_name, inverse_id
from .covering import CoveringMap


def _field(d: dict[str, Any], key: str, where: str) -> Any:
    if key not in d:
        raise CGraphError(f"{where}: missing field {key!r}")
    return d[key]


def _items(value: Any, where: str, kind: type = list) -> Any:
    if not isinstance(value, kind):
        raise CGraphError(f"{where}: expected a JSON {'array' if kind is list else 'object'}")
    return value


def cgraph_from_dict(d: dict[str, Any]) -> CGraph:
    if not isinstance(d, dict):
        raise CGraphError("c-graph: expected a JSON object")
    vertices = [str(v) for v in _items(_field(d, "vertices", "c-graph"), "vertices")]
    flexible = [str(v) for v in _items(d.get("flexible", []), "flexible")]
    edges: list[Edge] = []
    for i, e in enumerate(_items(d.get("edges", []), "edges")):
        where = f"edges[{i}]"
        _items(e, where, dict)
        eid, src, tgt = (str(_field(e, k, where)) for k in ("id", "src", "tgt"))
        if e.get("reversible"):
            inv = str(e.get("reverse", inverse_id(eid)))
            edges.append(Edge(eid, src, tgt, True, inv))
            if not any(x.get("id") == inv for x in d["edges"]):
                edges.append(Edge(inv, tgt, src, True, eid))
        else:
            rev = e.get("reverse")
            edges.append(Edge(eid, src, tgt, bool(e.get("flexible", False)), str(rev) if rev is not None else None))
    gens = []
    for i, g in enumerate(_items(d.get("generators", []), "generators")):
        if isinstance(g, dict):
            path = [str(a) for a in _items(_field(g, "path", f"generators[{i}]"), f"generators[{i}].path")]
            gens.append((str(g.get("name", default_name(path))), path))
        elif isinstance(g, list):
            gens.append([str(a) for a in g])
        else:
            raise CGraphError(f"generators[{i}]: expected a list of edge ids or an object")
    cells = []
    for i, c in enumerate(_items(d.get("cells", []), "cells")):
        _items(c, f"cells[{i}]", dict)
        left = [str(a) for a in _items(_field(c, "left", f"cells[{i}]"), f"cells[{i}].left")]
        right = [str(a) for a in _items(_field(c, "right", f"cells[{i}]"), f"cells[{i}].right")]
        if "base" in c:
            cells.append((left, right, str(c["base"])))
        elif left or right:
            cells.append((left, right))
        else:
            raise CGraphError(f"cells[{i}]: both sides empty")
    for i, e in enumerate(edges):
        for key, v in (("src", e.src), ("tgt", e.tgt)):
            if v not in vertices:
                raise CGraphError(f"edges[{i}].{key}: unknown vertex {v!r}")
    meta = {str(k): str(v) for k, v in _items(d.get("meta", {}), "meta", dict).items()}
    return CGraph.build(vertices, flexible, edges, gens, cells, meta)


def cgraph_to_dict(g: CGraph) -> dict[str, Any]:
    edges = []
    for e in g.edges:
        d: dict[str, Any] = {"id": e.id, "src": e.src, "tgt": e.tgt}
        if e.flexible:
            d["flexible"] = True
        if e.reverse is not None:
            d["reverse"] = e.reverse
        edges.append(d)
    gens: list[Any] = []
    for gen in g.generators:
        path = list(gen.path.arrows)
        gens.append(path if gen.name == default_name(path) else {"name": gen.name, "path": path})
    cells = []
    for c in g.cells:
        d = {"left": list(c.left.arrows), "right": list(c.right.arrows)}
        if not c.left.arrows or not c.right.arrows:
            d["base"] = c.left.src
        cells.append(d)
    out: dict[str, Any] = {
        "vertices": list(g.vertices),
        "flexible": list(g.flexible_vertices),
        "edges": edges,
        "generators": gens,
        "cells": cells,
    }
    if g.meta:
        out["meta"] = dict(g.meta)
    return out


def covering_from_dict(d: dict[str, Any]) -> CoveringMap:
    total = cgraph_from_dict(_field(d, "total", "covering"))
    base = cgraph_from_dict(_field(d, "base", "covering"))
    return CoveringMap(
        total,
        base,
        {str(k): str(v) for k, v in _field(d, "vertex_map", "covering").items()},
        {str(k): str(v) for k, v in _field(d, "edge_map", "covering").items()},
        frozenset(str(v) for v in d.get("boundary", [])),
    )


def covering_to_dict(c: CoveringMap) -> dict[str, Any]:
    return {
        "total": cgraph_to_dict(c.total),
        "base": cgraph_to_dict(c.base),
        "vertex_map": dict(c.vertex_map),
        "edge_map": dict(c.edge_map),
        "boundary": sorted(c.boundary),
    }


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cgraph_to_dot(g: CGraph, name: str = "cgraph") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for v in g.vertices:
        shape = "circle" if v in g.flexible else "point"
        lines.append(f"  {_q(v)} [shape={shape}];")
    for e in g.edges:
        style = "solid" if e.flexible else "dashed"
        lines.append(f"  {_q(e.src)} -> {_q(e.tgt)} [label={_q(e.id)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
