"""Constructions on presentations: products, pushouts, functor checks, Tietze moves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable

from scipy.cluster.hierarchy import DisjointSet

from .core import (
    DEFAULT_BOUND,
    Arrow,
    CatFunctor,
    Presentation,
    PresentationError,
    Quiver,
    Relation,
    Word,
)
from .hom import equivalent
from .rewriting import RewritingSystem, knuth_bendix


class FunctorError(PresentationError):
    pass


@dataclass(frozen=True)
class FunctorCheck:
    valid: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def check_functor(F: CatFunctor, bound: int = DEFAULT_BOUND) -> FunctorCheck:
    """Check endpoints and relation preservation (relations checked up to ``bound``)."""
    dom, cod = F.domain, F.codomain
    for x in dom.objects:
        if x not in F.object_map:
            return FunctorCheck(False, f"object {x!r} is not mapped")
        if F.object_map[x] not in cod.objects:
            return FunctorCheck(False, f"object {x!r} maps to unknown object {F.object_map[x]!r}")
    for a in dom.arrows:
        w = F.arrow_map.get(a.id)
        if w is None:
            return FunctorCheck(False, f"arrow {a.id!r} is not mapped")
        try:
            cod.quiver.check_word(w)
        except PresentationError as exc:
            return FunctorCheck(False, f"image of {a.id!r} is not a word: {exc}")
        want = (F.object_map[a.src], F.object_map[a.tgt])
        if (w.src, w.tgt) != want:
            return FunctorCheck(
                False,
                f"endpoint mismatch: {a.id!r}: {a.src}->{a.tgt} maps to {w.src}->{w.tgt}, "
                f"expected {want[0]}->{want[1]}",
            )
    for rel in dom.relations:
        lhs, rhs = F.apply(rel.left), F.apply(rel.right)
        verdict = equivalent(cod, lhs, rhs, max(bound, len(lhs), len(rhs)))
        if verdict is not True:
            how = "not equal" if verdict is False else "not shown equal within bound"
            return FunctorCheck(False, f"relation {rel} maps to {lhs} vs {rhs}: {how}")
    return FunctorCheck(True)


def product(p: Presentation, q: Presentation) -> Presentation:
    """Presentation of the product category p x q."""

    def obj(x: str, y: str) -> str:
        return f"({x},{y})"

    def left(a: str, y: str) -> str:
        return f"({a},1_{y})"

    def right(x: str, b: str) -> str:
        return f"(1_{x},{b})"

    objects = tuple(obj(x, y) for x in p.objects for y in q.objects)
    arrows = [Arrow(left(a.id, y), obj(a.src, y), obj(a.tgt, y)) for a in p.arrows for y in q.objects]
    arrows += [Arrow(right(x, b.id), obj(x, b.src), obj(x, b.tgt)) for x in p.objects for b in q.arrows]

    def lw(w: Word, y: str) -> Word:
        return Word(obj(w.src, y), obj(w.tgt, y), tuple(left(a, y) for a in w.arrows))

    def rw(x: str, w: Word) -> Word:
        return Word(obj(x, w.src), obj(x, w.tgt), tuple(right(x, b) for b in w.arrows))

    rels = [Relation(lw(r.left, y), lw(r.right, y)) for r in p.relations for y in q.objects]
    rels += [Relation(rw(x, r.left), rw(x, r.right)) for x in p.objects for r in q.relations]
    for a in p.arrows:
        for b in q.arrows:
            # (a,1)(1,b) = (1,b)(a,1)
            src, tgt = obj(a.src, b.src), obj(a.tgt, b.tgt)
            rels.append(
                Relation(
                    Word(src, tgt, (left(a.id, b.src), right(a.tgt, b.id))),
                    Word(src, tgt, (right(a.src, b.id), left(a.id, b.tgt))),
                )
            )
    return Presentation(Quiver(objects, tuple(arrows)), tuple(rels))


def _fresh(name: str, used: set[str]) -> str:
    while name in used:
        name += "'"
    used.add(name)
    return name


def pushout_with_injections(f: CatFunctor, g: CatFunctor) -> tuple[Presentation, CatFunctor, CatFunctor]:
    """Pushout of p <-f- base -g-> q, with the two coprojections."""
    if f.domain != g.domain:
        raise FunctorError("pushout legs must share their domain")
    for name, F in (("f", f), ("g", g)):
        chk = check_functor(F)
        if not chk:
            raise FunctorError(f"{name} is not a functor: {chk.reason}")
    base, p, q = f.domain, f.codomain, g.codomain
    tagged = [("p", x) for x in p.objects] + [("q", y) for y in q.objects]
    ds = DisjointSet(tagged)
    for x in base.objects:
        ds.merge(("p", f.object_map[x]), ("q", g.object_map[x]))

    def class_key(members: set[tuple[str, str]]) -> tuple[int, str]:
        ps = sorted(n for side, n in members if side == "p")
        return (0, ps[0]) if ps else (1, min(n for _, n in members))

    used: set[str] = set()
    name_of: dict[tuple[str, str], str] = {}
    for members in sorted(ds.subsets(), key=class_key):
        name = _fresh(class_key(members)[1], used)
        for m in members:
            name_of[m] = name
    objects = tuple(dict.fromkeys(name_of[t] for t in tagged))

    used_arrows: set[str] = set()
    amap = {("p", a.id): _fresh(a.id, used_arrows) for a in p.arrows}
    amap |= {("q", b.id): _fresh(b.id, used_arrows) for b in q.arrows}
    arrows = [Arrow(amap["p", a.id], name_of["p", a.src], name_of["p", a.tgt]) for a in p.arrows]
    arrows += [Arrow(amap["q", b.id], name_of["q", b.src], name_of["q", b.tgt]) for b in q.arrows]
    out_q = Quiver(objects, tuple(arrows))

    def inj(side: str, src: Presentation) -> CatFunctor:
        return CatFunctor(
            src,
            Presentation(out_q),
            {x: name_of[side, x] for x in src.objects},
            {a.id: Word(name_of[side, a.src], name_of[side, a.tgt], (amap[side, a.id],)) for a in src.arrows},
        )

    inl, inr = inj("p", p), inj("q", q)
    rels = [Relation(inl.apply(r.left), inl.apply(r.right)) for r in p.relations]
    rels += [Relation(inr.apply(r.left), inr.apply(r.right)) for r in q.relations]
    for e in base.arrows:
        lhs, rhs = inl.apply(f.arrow_map[e.id]), inr.apply(g.arrow_map[e.id])
        if lhs != rhs:
            rels.append(Relation(lhs, rhs))
    out = Presentation(out_q, tuple(dict.fromkeys(rels)))
    inl = CatFunctor(p, out, inl.object_map, inl.arrow_map)
    inr = CatFunctor(q, out, inr.object_map, inr.arrow_map)
    return out, inl, inr


def pushout(f: CatFunctor, g: CatFunctor) -> Presentation:
    return pushout_with_injections(f, g)[0]


def relations_from_image(
    q: Quiver,
    key: Callable[[Word], Hashable],
    max_len: int,
) -> tuple[Relation, ...]:
    """Relations identifying generator words with equal ``key``.

    ``key`` must be compatible with composition (the image of ``w`` under some
    functor).  Words are visited in shortlex order and a relation is added
    only when the relations found so far do not already identify the word
    with the first word of its key.
    """
    rels: list[Relation] = []
    rules = RewritingSystem((), True)
    seen: dict[tuple[str, str, Hashable], Word] = {}
    # all sources advance together so short relations are known before longer words
    frontier = [Word(x, x, ()) for x in q.objects]
    for _ in range(max_len + 1):
        nxt = []
        for w in frontier:
            if rules.reduce(w.arrows) != w.arrows:
                continue
            rep = seen.setdefault((w.src, w.tgt, key(w)), w)
            if rep is not w and rules.reduce(rep.arrows) != w.arrows:
                rels.append(Relation(w, rep))
                rules = knuth_bendix((r.left.arrows, r.right.arrows) for r in rels)
                continue
            for a in q.outgoing[w.tgt]:
                nxt.append(Word(w.src, a.tgt, w.arrows + (a.id,)))
        frontier = nxt
        if not frontier:
            break
    return tuple(rels)


def substitute(w: Word, subst: dict[str, Word]) -> Word:
    out: tuple[str, ...] = ()
    for aid in w.arrows:
        out += subst[aid].arrows if aid in subst else (aid,)
    return Word(w.src, w.tgt, out)


def tietze_simplify(p: Presentation) -> tuple[Presentation, dict[str, Word]]:
    """Eliminate generators defined by a relation ``g = w`` with ``g`` not in ``w``.

    Returns the simplified presentation and the substitution for every
    eliminated generator (words in the surviving generators).
    """
    rels = list(dict.fromkeys(r for r in p.relations if r.left != r.right))
    arrows = {a.id: a for a in p.arrows}
    subst: dict[str, Word] = {}
    while True:
        pick = None
        for idx, r in enumerate(rels):
            cands = []
            for side, other in ((r.left, r.right), (r.right, r.left)):
                if len(side) == 1 and side.arrows[0] not in other.arrows:
                    cands.append((side.arrows[0], other))
            if cands:
                # keep the smaller id when both sides are single generators
                pick = (idx, max(cands, key=lambda c: c[0]))
                break
        if pick is None:
            break
        idx, (g, w) = pick
        del rels[idx]
        del arrows[g]
        one = {g: w}
        subst = {k: substitute(v, one) for k, v in subst.items()}
        subst[g] = w
        new = []
        for r in rels:
            nr = Relation(substitute(r.left, one), substitute(r.right, one))
            if nr.left != nr.right:
                new.append(nr)
        rels = list(dict.fromkeys(new))
    q = Quiver(p.objects, tuple(a for a in p.arrows if a.id in arrows))
    return Presentation(q, tuple(rels)), subst


@dataclass(frozen=True)
class FunctorProfile:
    """Faithfulness and fullness of a functor observed on hom-sets within a bound."""

    faithful: bool
    full: bool
    bound: int
    # (source word, source word) with equal images, first one found
    collision: tuple[Word, Word] | None = None
    # target class representative not hit by any image, first one found
    missed: Word | None = None


def functor_profile(F: CatFunctor, bound: int = DEFAULT_BOUND) -> FunctorProfile:
    """Compare hom classes of the domain with their images, for all object pairs."""
    from .hom import hom_representatives, normal_form, is_complete

    dom, cod = F.domain, F.codomain

    def key(w: Word) -> Word:
        return normal_form(cod, w) if is_complete(cod) else w

    collision = missed = None
    for x in dom.objects:
        for y in dom.objects:
            src_reps = hom_representatives(dom, x, y, bound)[0]
            images: dict[Word, Word] = {}
            for w in src_reps:
                k = key(F.apply(w))
                if k in images and collision is None:
                    collision = (images[k], w)
                images.setdefault(k, w)
            if missed is None:
                for t in hom_representatives(cod, F.object_map[x], F.object_map[y], bound)[0]:
                    if key(t) not in images:
                        missed = t
                        break
    return FunctorProfile(collision is None, missed is None, bound, collision, missed)
