"""Command-line front end.

Exit status: 0 on success, 1 when the input describes an invalid model or an
operation fails on it, 2 on usage errors (bad flags, unknown builtins,
unreadable or non-JSON files).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .cspace import (
    CGraph,
    CGraphError,
    builtin_covering,
    cgraph_from_dict,
    cgraph_to_dict,
    cgraph_to_dot,
    covering_from_dict,
    flexible_part,
    fundamental_presentation,
    generate_dspace,
    lift_hom,
    preflexible_check,
    registry,
    registry_entries,
)
from .cspace.registry import UnknownModel
from .fpcat import (
    DEFAULT_BOUND,
    Presentation,
    PresentationError,
    describe,
    enumerate_hom,
    iso_check,
    product,
    pushout,
    rewriting_system,
    skeleton,
)
from .fpcat.core import CatFunctor
from .fpcat.io import (
    functor_from_dict,
    functor_to_dict,
    presentation_from_dict,
    presentation_to_dict,
    presentation_to_dot,
    presentation_to_text,
    word_to_dict,
)
from .grid import (
    BUILTIN_GRIDS,
    GridError,
    GridRegion,
    LatticePath,
    builtin_grid,
    cell_commutes,
    class_matrix,
    dihomotopy_classes,
    to_presentation,
)


class UsageError(Exception):
    pass


DOMAIN_ERRORS = (CGraphError, PresentationError, GridError)


# -- input resolution ------------------------------------------------------------------------


def _split_uri(uri: str) -> tuple[str, str]:
    if uri.startswith("builtin:"):
        return "builtin", uri[len("builtin:") :]
    if uri.startswith("file:"):
        return "file", uri[len("file:") :]
    return "file", uri


def _read_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON (line {exc.lineno}: {exc.msg})") from exc


def load_space(uri: str) -> CGraph:
    kind, rest = _split_uri(uri)
    if kind == "builtin":
        try:
            return registry(rest)
        except UnknownModel as exc:
            raise UsageError(str(exc)) from exc
    data = _read_json(rest)
    return cgraph_from_dict(data)


def load_presentation(uri: str) -> tuple[Presentation, str]:
    """A presentation file, or the fundamental category of a c-graph."""
    kind, rest = _split_uri(uri)
    if kind == "file":
        data = _read_json(rest)
        if isinstance(data, dict) and "objects" in data:
            return presentation_from_dict(data), Path(rest).stem
        return fundamental_presentation(cgraph_from_dict(data)), Path(rest).stem
    return fundamental_presentation(load_space(uri)), rest


def load_grid(uri: str) -> GridRegion:
    kind, rest = _split_uri(uri)
    if kind == "builtin":
        try:
            return builtin_grid(rest)
        except GridError as exc:
            raise UsageError(str(exc)) from exc
    return GridRegion.from_dict(_read_json(rest))


def _vertex(text: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected a vertex 'x,y', got {text!r}") from None
    return x, y


def _path(text: str) -> LatticePath:
    if ":" not in text:
        raise UsageError(f"expected a path 'x,y:STEPS', got {text!r}")
    start, steps = text.split(":", 1)
    try:
        return LatticePath(_vertex(start), steps.upper())
    except GridError as exc:
        raise UsageError(str(exc)) from exc


# -- report helpers ----------------------------------------------------------------------------


def _completeness(p: Presentation) -> str:
    if not p.relations:
        return "complete (free)"
    rs = rewriting_system(p)
    state = "complete" if rs.confluent else "bounded-partial"
    return f"{state} ({len(rs.rules)} rewrite rules)"


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _hom_report(p: Presentation, src: str, tgt: str, bound: int) -> tuple[str, dict[str, Any]]:
    res = enumerate_hom(p, src, tgt, bound)
    n = len(res)
    lines = [f"hom({src},{tgt}): {n} class{'es' if n != 1 else ''} (bound {bound}, {res.completeness})"]
    for c in res.classes:
        lines.append(f"  {c.representative}  [{c.size} word{'s' if c.size != 1 else ''}]")
    data = {
        "source": src,
        "target": tgt,
        "bound": bound,
        "completeness": res.completeness,
        "classes": [{"representative": word_to_dict(c.representative), "size": c.size} for c in res.classes],
    }
    return "\n".join(lines) + "\n", data


def _presentation_report(title: str, p: Presentation, bound: int) -> str:
    return f"{title}: {describe(p)}\nbound: {bound}; rewriting: {_completeness(p)}\n" + presentation_to_text(p)


# -- commands ----------------------------------------------------------------------------------


def cmd_pi1(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    p, name = load_presentation(a.space)
    text = _presentation_report(f"pi1 of {name}", p, a.bound)
    data: dict[str, Any] = {"presentation": presentation_to_dict(p), "bound": a.bound}
    dot = presentation_to_dot(p, name)
    if a.skeleton:
        s, _ = skeleton(p, a.bound)
        text += f"skeleton: {describe(s)}\n"
        data["skeleton"] = presentation_to_dict(s)
        dot = presentation_to_dot(s, f"skeleton of {name}")
    return text, data, dot


def cmd_hom(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    p, _ = load_presentation(a.space)
    for x in (a.src, a.tgt):
        if x not in p.objects:
            raise UsageError(f"unknown object {x!r}; objects: {', '.join(p.objects)}")
    text, data = _hom_report(p, a.src, a.tgt, a.bound)
    return text, data, None


def cmd_product(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    p, n1 = load_presentation(a.left)
    q, n2 = load_presentation(a.right)
    pq = product(p, q)
    text = _presentation_report(f"product {n1} x {n2}", pq, a.bound)
    data: dict[str, Any] = {"presentation": presentation_to_dict(pq), "bound": a.bound}
    if a.hom:
        for x in a.hom:
            if x not in pq.objects:
                raise UsageError(f"unknown object {x!r} of the product")
        t, d = _hom_report(pq, a.hom[0], a.hom[1], a.bound)
        text += t
        data["hom"] = d
    return text, data, presentation_to_dot(pq, f"{n1} x {n2}")


def _load_functor(d: Any, where: str, domain: Presentation, codomain: Presentation) -> CatFunctor:
    if not isinstance(d, dict):
        raise CGraphError(f"span: field {where!r} must be an object")
    try:
        return functor_from_dict(d, domain, codomain)
    except KeyError as exc:
        raise PresentationError(f"span: field {where!r} refers to unknown generator or object {exc}") from exc


def _span_part(value: Any, where: str) -> Presentation:
    if isinstance(value, str):
        return load_presentation(value)[0]
    if isinstance(value, dict):
        if "objects" in value:
            return presentation_from_dict(value)
        return fundamental_presentation(cgraph_from_dict(value))
    raise CGraphError(f"span: field {where!r} must be a URI or an object")


def cmd_pushout(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    _, rest = _split_uri(a.span)
    span = _read_json(rest)
    if not isinstance(span, dict):
        raise CGraphError("span: expected a JSON object")
    for key in ("base", "left", "right", "f", "g"):
        if key not in span:
            raise CGraphError(f"span: missing field {key!r}")
    base = _span_part(span["base"], "base")
    left = _span_part(span["left"], "left")
    right = _span_part(span["right"], "right")
    f = _load_functor(span["f"], "f", base, left)
    g = _load_functor(span["g"], "g", base, right)
    po = pushout(f, g)
    text = _presentation_report("pushout", po, a.bound)
    data: dict[str, Any] = {"presentation": presentation_to_dict(po), "bound": a.bound}
    if a.hom:
        t, d = _hom_report(po, a.hom[0], a.hom[1], a.bound)
        text += t
        data["hom"] = d
    return text, data, presentation_to_dot(po, "pushout")


def cmd_iso(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    p, n1 = load_presentation(a.left)
    q, n2 = load_presentation(a.right)
    res = iso_check(p, q, a.bound)
    lines = [f"iso({n1}, {n2}): {res.verdict} (bound {a.bound})"]
    if res.reason:
        lines.append(f"reason: {res.reason}")
    if res.verdict == "isomorphic":
        for x, y in sorted(res.object_map.items()):
            lines.append(f"  {x} |-> {y}")
        for k, w in sorted(res.arrow_map.items()):
            lines.append(f"  {k} |-> {w}")
    data = {
        "verdict": res.verdict,
        "reason": res.reason,
        "bound": a.bound,
        "objects": dict(sorted(res.object_map.items())),
        "arrows": {k: word_to_dict(w) for k, w in sorted(res.arrow_map.items())},
    }
    return "\n".join(lines) + "\n", data, None


def cmd_skeleton(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    p, name = load_presentation(a.space)
    s, F = skeleton(p, a.bound)
    text = _presentation_report(f"skeleton of {name}", s, a.bound)
    text += "retraction:\n" + "".join(f"  {x} |-> {F.object_map[x]}\n" for x in p.objects)
    data = {"skeleton": presentation_to_dict(s), "retraction": functor_to_dict(F), "bound": a.bound}
    return text, data, presentation_to_dot(s, f"skeleton of {name}")


def _space_report(title: str, g: CGraph, bound: int) -> tuple[str, Any, str | None]:
    p = fundamental_presentation(g)
    text = f"{title}: {g.summary()}\n" + _presentation_report("pi1", p, bound)
    return text, cgraph_to_dict(g), cgraph_to_dot(g, title)


def cmd_flexible_part(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    return _space_report("flexible part", flexible_part(load_space(a.space)), a.bound)


def cmd_generate_d(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    return _space_report("generated d-structure", generate_dspace(load_space(a.space)), a.bound)


def cmd_preflexible(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    res = preflexible_check(load_space(a.space), a.bound)
    if res.preflexible:
        text = f"preflexible (walks up to {a.bound} edges checked)\n"
        if res.undetermined:
            text += "note: some walks could not be decided (incomplete rewriting system)\n"
    else:
        text = f"not preflexible: witness {res.witness} ({res.witness.src} -> {res.witness.tgt})\n"
    data = {
        "preflexible": res.preflexible,
        "bound": a.bound,
        "witness": word_to_dict(res.witness) if res.witness else None,
        "undetermined": res.undetermined,
    }
    return text, data, None


def cmd_lift(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    kind, rest = _split_uri(a.covering)
    if kind == "builtin":
        try:
            cov = builtin_covering(rest, a.bound)
        except CGraphError as exc:
            raise UsageError(str(exc)) from exc
    else:
        cov = covering_from_dict(_read_json(rest))
    res = lift_hom(cov, a.src, a.tgt, a.bound)
    n = len(res.hom)
    lines = [
        f"hom({a.src},{a.tgt}) by lifting from {res.start}: {n} class{'es' if n != 1 else ''} "
        f"(bound {a.bound}, {res.hom.completeness})"
    ]
    for c, end, length in zip(res.hom.classes, res.endpoints, res.lengths):
        lines.append(f"  {c.representative}  endpoint {end}, length {length}")
    data = {
        "source": a.src,
        "target": a.tgt,
        "bound": a.bound,
        "completeness": res.hom.completeness,
        "classes": [
            {"representative": word_to_dict(c.representative), "endpoint": e, "length": k}
            for c, e, k in zip(res.hom.classes, res.endpoints, res.lengths)
        ],
    }
    return "\n".join(lines) + "\n", data, None


def cmd_grid_classes(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    r = load_grid(a.grid)
    src = _vertex(a.src) if a.src else r.start
    tgt = _vertex(a.tgt) if a.tgt else r.end
    part = dihomotopy_classes(r, src, tgt)
    n = len(part)
    lines = [f"{n} class{'es' if n != 1 else ''} of paths {src} -> {tgt} ({part.total} paths, {part.moves} merging moves)"]
    for c in part.classes:
        lines.append(f"  {c.representative.steps or '(empty)'}  x{c.size}")
    dot = None
    if a.dot:
        dot = presentation_to_dot(to_presentation(r, a.semantics), r.name or "grid")
    return "\n".join(lines) + "\n", part.to_dict(), dot


def cmd_grid_matrix(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    r = load_grid(a.grid)
    m = class_matrix(r)
    lines = [f"classes into / out of each vertex of the {r.width}x{r.height} grid (row y from the top)"]
    width = max(len(f"{m.into[v]}/{m.out_of[v]}") for v in r.vertices())
    for y in range(r.height, -1, -1):
        row = [f"{m.into[x, y]}/{m.out_of[x, y]}".rjust(width) for x in range(r.width + 1)]
        lines.append(f"  y={y}: " + " ".join(row))
    fmt = lambda vs: ", ".join(f"({x},{y})" for x, y in vs) or "none"  # noqa: E731
    lines.append(f"splits: {fmt(m.splits)}")
    lines.append(f"merges: {fmt(m.merges)}")
    lines.append(f"model objects: {len(m.model_objects())} ({fmt(m.model_objects())})")
    data = {
        "vertices": [
            {"vertex": list(v), "into": m.into[v], "out": m.out_of[v]} for v in r.vertices()
        ],
        "splits": [list(v) for v in m.splits],
        "merges": [list(v) for v in m.merges],
        "model_objects": [list(v) for v in m.model_objects()],
    }
    p = to_presentation(r, "d-truncated")
    return "\n".join(lines) + "\n", data, presentation_to_dot(p, r.name or "grid")


def cmd_grid_cell(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    r = load_grid(a.grid)
    first = (_path(a.first[0]), _path(a.first[1]))
    second = (_path(a.second[0]), _path(a.second[1]))
    ok = cell_commutes(r, first, second)
    u, v = first[0].then(first[1]), second[0].then(second[1])
    text = f"{u.steps} vs {v.steps} from {u.start} to {u.end}: {'commutes' if ok else 'does not commute'}\n"
    return text, {"commutes": ok}, None


def cmd_svk_demo(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    from .svk import svk_interval

    demo = svk_interval(a.bound)
    lines = [
        "cover cI by U = [0,1[ and V = ]0,1]; U and V meet in no flexible point",
        f"pi1(cI) hom(0,1) = {demo.whole} (bound {a.bound}, {demo.whole_completeness})",
        f"pushout pi1(U) <- pi1(U n V) -> pi1(V) hom(0,1) = {demo.glued} (bound {a.bound}, {demo.glued_completeness})",
        f"verdict: {'Seifert–van Kampen fails' if demo.fails else 'Seifert–van Kampen holds'}",
    ]
    data = {
        "whole": demo.whole,
        "pushout": demo.glued,
        "bound": a.bound,
        "fails": demo.fails,
    }
    return "\n".join(lines) + "\n", data, presentation_to_dot(demo.pushout, "pushout")


def cmd_registry_list(a: argparse.Namespace) -> tuple[str, Any, str | None]:
    entries = registry_entries()
    width = max(len(n) for n, _ in entries)
    lines = ["c-graph models (use as builtin:<name>):"]
    lines += [f"  {n.ljust(width)}  {d}" for n, d in entries]
    lines.append("grid regions (use as builtin:<name> with grid-* commands):")
    for name, g in BUILTIN_GRIDS.items():
        cells = ", ".join(f"({i},{j})" for i, j in sorted(g.forbidden))
        lines.append(f"  {name.ljust(width)}  {g.width}x{g.height}, forbidden {cells}")
    lines.append("coverings (use as builtin:<name> with lift):")
    lines.append(f"  {'chain_over_cycle(n)'.ljust(width)}  integer chain wound around the n-stop circle")
    data = {"models": dict(entries), "grids": sorted(BUILTIN_GRIDS), "coverings": ["chain_over_cycle(n)"]}
    return "\n".join(lines) + "\n", data, None


# -- parser ------------------------------------------------------------------------------------


def _bound(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bound must be an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("bound must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=_bound, default=DEFAULT_BOUND, help="word length bound (default %(default)s)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable JSON output")
    fmt.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    common.add_argument("-o", "--output", help="write the report to this file")

    parser = argparse.ArgumentParser(prog="ctop", description="Fundamental categories of controlled spaces.")
    parser.add_argument("--version", action="version", version=f"ctop {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.set_defaults(func=fn)
        return p

    p = add("pi1", cmd_pi1, "presentation of the fundamental category")
    p.add_argument("space")
    p.add_argument("--skeleton", action="store_true", help="also compute a skeleton")

    p = add("hom", cmd_hom, "hom classes between two objects")
    p.add_argument("space")
    p.add_argument("src")
    p.add_argument("tgt")

    p = add("product", cmd_product, "product of two fundamental categories")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--hom", nargs=2, metavar=("SRC", "TGT"))

    p = add("pushout", cmd_pushout, "pushout of a span given as JSON {base, left, right, f, g}")
    p.add_argument("span")
    p.add_argument("--hom", nargs=2, metavar=("SRC", "TGT"))

    p = add("iso", cmd_iso, "decide whether two presented categories are isomorphic")
    p.add_argument("left")
    p.add_argument("right")

    p = add("skeleton", cmd_skeleton, "skeleton and retraction")
    p.add_argument("space")

    p = add("flexible-part", cmd_flexible_part, "largest flexible sub-c-graph")
    p.add_argument("space")

    p = add("generate-d", cmd_generate_d, "generated d-structure")
    p.add_argument("space")

    p = add("preflexible", cmd_preflexible, "check preflexibility, with a witness when it fails")
    p.add_argument("space")

    p = add("lift", cmd_lift, "hom classes of a covering's base by path lifting")
    p.add_argument("covering")
    p.add_argument("src")
    p.add_argument("tgt")

    p = add("grid-classes", cmd_grid_classes, "dihomotopy classes of lattice paths")
    p.add_argument("grid")
    p.add_argument("--from", dest="src", metavar="X,Y")
    p.add_argument("--to", dest="tgt", metavar="X,Y")
    p.add_argument("--semantics", choices=("c", "d-truncated"), default="c", help="presentation used by --dot")

    p = add("grid-matrix", cmd_grid_matrix, "per-vertex class counts and branch vertices")
    p.add_argument("grid")

    p = add("grid-cell", cmd_grid_cell, "does a diamond of paths commute")
    p.add_argument("grid")
    p.add_argument("--first", nargs=2, required=True, metavar=("X,Y:STEPS", "X,Y:STEPS"))
    p.add_argument("--second", nargs=2, required=True, metavar=("X,Y:STEPS", "X,Y:STEPS"))

    add("svk-demo", cmd_svk_demo, "Seifert-van Kampen failure on the c-interval")
    add("registry-list", cmd_registry_list, "list builtin models")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, data, dot = args.func(args)
    except UsageError as exc:
        print(f"ctop {args.command}: error: {exc}", file=stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"ctop {args.command}: invalid model: {exc}", file=stderr)
        return 1
    if args.json:
        out = _dump(data)
    elif args.dot:
        if dot is None:
            print(f"ctop {args.command}: error: --dot is not available for this command", file=stderr)
            return 2
        out = dot
    else:
        out = text
    if args.output:
        Path(args.output).write_text(out)
    else:
        stdout.write(out)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


__all__ = ["build_parser", "load_grid", "load_presentation", "load_space", "main", "run"]
