"""JSON and DOT serialisation of presentations and functors."""

from __future__ import annotations

from typing import Any

from .core import Arrow, CatFunctor, Presentation, PresentationError, Quiver, Relation, Word


def presentation_to_dict(p: Presentation) -> dict[str, Any]:
    rels = []
    for r in p.relations:
        d: dict[str, Any] = {"left": list(r.left.arrows), "right": list(r.right.arrows)}
        if not r.left.arrows:
            d["leftBase"] = r.left.src
        if not r.right.arrows:
            d["rightBase"] = r.right.src
        rels.append(d)
    return {
        "objects": list(p.objects),
        "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in p.arrows],
        "relations": rels,
    }


def presentation_from_dict(d: dict[str, Any]) -> Presentation:
    if not isinstance(d, dict):
        raise PresentationError("presentation: expected a JSON object")
    try:
        objects = tuple(str(x) for x in d["objects"])
        arrows = tuple(Arrow(str(a["id"]), str(a["src"]), str(a["tgt"])) for a in d.get("arrows", []))
    except KeyError as exc:
        raise PresentationError(f"malformed presentation: missing field {exc}") from exc
    except TypeError as exc:
        raise PresentationError(f"malformed presentation: {exc}") from exc
    q = Quiver(objects, arrows)
    rels = []
    for i, r in enumerate(d.get("relations", [])):
        if not isinstance(r, dict):
            raise PresentationError(f"relations[{i}]: expected a JSON object")
        left, right = [str(a) for a in r.get("left", [])], [str(a) for a in r.get("right", [])]
        if left:
            base = q.by_id[left[0]].src if left[0] in q.by_id else None
        elif right:
            base = q.by_id[right[0]].src if right[0] in q.by_id else None
        else:
            base = r.get("leftBase", r.get("rightBase"))
        if base is None:
            raise PresentationError(f"relations[{i}]: cannot determine base object")
        lw = q.word(str(r.get("leftBase", base)), left)
        rw = q.word(str(r.get("rightBase", base)), right)
        rels.append(Relation(lw, rw))
    return Presentation(q, tuple(rels))


def word_to_dict(w: Word) -> dict[str, Any]:
    return {"src": w.src, "tgt": w.tgt, "arrows": list(w.arrows)}


def word_from_dict(d: dict[str, Any]) -> Word:
    return Word(str(d["src"]), str(d["tgt"]), tuple(str(a) for a in d.get("arrows", [])))


def functor_to_dict(F: CatFunctor) -> dict[str, Any]:
    return {
        "objects": dict(F.object_map),
        "arrows": {a: word_to_dict(w) for a, w in F.arrow_map.items()},
    }


def functor_from_dict(d: dict[str, Any], domain: Presentation, codomain: Presentation) -> CatFunctor:
    objects = {str(k): str(v) for k, v in d.get("objects", {}).items()}
    arrows = {}
    for k, v in d.get("arrows", {}).items():
        if isinstance(v, list):
            src = objects[domain.quiver.by_id[k].src]
            arrows[str(k)] = codomain.word(src, [str(a) for a in v])
        else:
            arrows[str(k)] = word_from_dict(v)
    return CatFunctor(domain, codomain, objects, arrows)


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def presentation_to_dot(p: Presentation, name: str = "presentation") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for x in p.objects:
        lines.append(f"  {_q(x)};")
    for a in p.arrows:
        lines.append(f"  {_q(a.src)} -> {_q(a.tgt)} [label={_q(a.id)}];")
    for i, r in enumerate(p.relations):
        lines.append(f"  {_q(f'rel{i}')} [shape=note, label={_q(str(r))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def presentation_to_text(p: Presentation) -> str:
    lines = [f"objects: {', '.join(p.objects) if p.objects else '(none)'}"]
    lines.append(f"generators ({len(p.arrows)}):")
    for a in p.arrows:
        lines.append(f"  {a.id}: {a.src} -> {a.tgt}")
    lines.append(f"relations ({len(p.relations)}):")
    for r in p.relations:
        lines.append(f"  {r}")
    return "\n".join(lines) + "\n"
