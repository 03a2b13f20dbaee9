"""Isomorphism search and skeleta of presented categories."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Literal

from .core import DEFAULT_BOUND, Arrow, CatFunctor, Presentation, Quiver, Relation, Word
from .hom import equivalent, hom_representatives, is_complete, is_finite
from .ops import substitute, tietze_simplify
from .rewriting import bounded_closure, rewriting_system

Verdict = Literal["isomorphic", "not-isomorphic", "unknown"]

# generator images are searched among class representatives up to this length
IMAGE_LEN = 4
# candidate generator images tried per iso_check before giving up with "unknown"
SEARCH_BUDGET = 100_000


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class IsoResult:
    verdict: Verdict
    reason: str = ""
    object_map: dict[str, str] = field(default_factory=dict)
    arrow_map: dict[str, Word] = field(default_factory=dict)
    inverse_map: dict[str, Word] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict == "isomorphic"


def _canonical_text(p: Presentation) -> str:
    from .io import presentation_to_dict

    return json.dumps(presentation_to_dict(p), sort_keys=True)


class _HomTable:
    def __init__(self, p: Presentation, bound: int) -> None:
        self.p = p
        self.bound = bound
        self.complete = is_complete(p)
        finite = is_finite(p, bound) if self.complete else None
        self.exhaustive = finite is not None
        self._cache: dict[tuple[str, str], list[Word]] = {}
        self._labels: dict[tuple[str, str], dict[Word, int]] = {}

    def equal(self, u: Word, v: Word) -> bool | None:
        """Like :func:`equivalent`, but without a search beyond the bound.

        Non-complete presentations are decided by the cached bounded
        closure; words longer than the bound give None.
        """
        if (u.src, u.tgt) != (v.src, v.tgt):
            return False
        if u == v:
            return True
        if self.complete:
            rs = rewriting_system(self.p)
            return rs.reduce(u.arrows) == rs.reduce(v.arrows)
        if max(len(u), len(v)) > self.bound:
            return None
        key = (u.src, u.tgt)
        if key not in self._labels:
            closure = bounded_closure(self.p, u.src, u.tgt, self.bound)
            self._labels[key] = {w: i for i, c in enumerate(closure.classes) for w in c}
        labels = self._labels[key]
        return True if labels[u] == labels[v] else None

    def reps(self, x: str, y: str) -> list[Word]:
        key = (x, y)
        if key not in self._cache:
            self._cache[key] = hom_representatives(self.p, x, y, self.bound)[0]
        return self._cache[key]


def _obstruction(tp: _HomTable, tq: _HomTable, sigma: dict[str, str]) -> str | None:
    """A certified reason why no isomorphism extends the object bijection ``sigma``."""
    for x, y in itertools.product(tp.p.objects, repeat=2):
        n_p, n_q = len(tp.reps(x, y)), len(tq.reps(sigma[x], sigma[y]))
        if tp.exhaustive and tq.complete and n_q > n_p:
            return f"hom({x},{y}) has exactly {n_p} arrows, hom({sigma[x]},{sigma[y]}) at least {n_q}"
        if tq.exhaustive and tp.complete and n_p > n_q:
            return f"hom({x},{y}) has at least {n_p} arrows, hom({sigma[x]},{sigma[y]}) exactly {n_q}"
    return None


def _search(p: Presentation, q: Presentation, bound: int) -> IsoResult:
    if len(p.objects) != len(q.objects):
        return IsoResult("not-isomorphic", f"object counts differ: {len(p.objects)} != {len(q.objects)}")
    tp, tq = _HomTable(p, bound), _HomTable(q, bound)
    img_len = min(bound, IMAGE_LEN)
    exhaustive_search = tp.exhaustive and tq.exhaustive and img_len >= bound
    obstructions = []
    budget = [SEARCH_BUDGET]
    exhausted = False
    for perm in itertools.permutations(q.objects):
        sigma = dict(zip(p.objects, perm))
        why = _obstruction(tp, tq, sigma)
        if why is not None:
            obstructions.append(why)
            continue
        inv_sigma = {v: k for k, v in sigma.items()}
        try:
            found = _search_functors(p, q, sigma, inv_sigma, tp, tq, img_len, budget)
        except _BudgetExhausted:
            exhausted = True
            break
        if found is not None:
            F, G = found
            return IsoResult("isomorphic", "", sigma, F, G)
    if len(obstructions) == math.factorial(len(q.objects)):
        return IsoResult("not-isomorphic", obstructions[0] if obstructions else "no objects to match")
    if exhausted:
        return IsoResult("unknown", f"search budget of {SEARCH_BUDGET:,} candidate images exhausted")
    if exhaustive_search:
        return IsoResult("not-isomorphic", "exhaustive search over finite hom-sets found no isomorphism")
    return IsoResult("unknown", f"no isomorphism with generator images of length <= {img_len}")


def _images(table: _HomTable, x: str, y: str, img_len: int) -> list[Word]:
    return [w for w in table.reps(x, y) if len(w) <= img_len]


def _search_functors(
    p: Presentation,
    q: Presentation,
    sigma: dict[str, str],
    inv_sigma: dict[str, str],
    tp: _HomTable,
    tq: _HomTable,
    img_len: int,
    budget: list[int],
) -> tuple[dict[str, Word], dict[str, Word]] | None:
    gens_p = list(p.arrows)
    # relations become checkable once all their generators are assigned
    ready_at: dict[int, list[Relation]] = {}
    for rel in p.relations:
        used = set(rel.left.arrows) | set(rel.right.arrows)
        last = max((i for i, a in enumerate(gens_p) if a.id in used), default=-1)
        ready_at.setdefault(last, []).append(rel)

    def apply(m: dict[str, Word], w: Word, objmap: dict[str, str]) -> Word:
        out = Word(objmap[w.src], objmap[w.src], ())
        for a in w.arrows:
            out = out.then(m[a])
        return out

    for rel in ready_at.get(-1, []):
        if tq.equal(apply({}, rel.left, sigma), apply({}, rel.right, sigma), bound) is not True:
            return None

    def inverse(F: dict[str, Word]) -> dict[str, Word] | None:
        G: dict[str, Word] = {}
        for b in q.arrows:
            src, tgt = inv_sigma[b.src], inv_sigma[b.tgt]
            target = Word(b.src, b.tgt, (b.id,))
            for cand in _images(tp, src, tgt, img_len):
                budget[0] -= 1
                if budget[0] < 0:
                    raise _BudgetExhausted
                if tq.equal(apply(F, cand, sigma), target) is True:
                    G[b.id] = cand
                    break
            else:
                return None
        for rel in q.relations:
            if tp.equal(apply(G, rel.left, inv_sigma), apply(G, rel.right, inv_sigma)) is not True:
                return None
        for a in gens_p:
            back = apply(G, F[a.id], inv_sigma)
            if tp.equal(back, Word(a.src, a.tgt, (a.id,))) is not True:
                return None
        return G

    F: dict[str, Word] = {}

    def rec(i: int) -> dict[str, Word] | None:
        if i == len(gens_p):
            return inverse(F)
        a = gens_p[i]
        wa = Word(a.src, a.tgt, (a.id,))
        # an isomorphism is faithful: certified-distinct arrows keep distinct images
        rivals = [Word(b.src, b.tgt, (b.id,)) for b in gens_p[:i] if (b.src, b.tgt) == (a.src, a.tgt)]
        rivals = [b for b in rivals if tp.equal(wa, b) is False]
        if a.src == a.tgt and tp.equal(wa, Word(a.src, a.src, ())) is False:
            rivals.append(Word(a.src, a.src, ()))
        for cand in _images(tq, sigma[a.src], sigma[a.tgt], img_len):
            budget[0] -= 1
            if budget[0] < 0:
                raise _BudgetExhausted
            if any(tq.equal(cand, apply(F, b, sigma)) is True for b in rivals):
                continue
            F[a.id] = cand
            if all(
                tq.equal(apply(F, r.left, sigma), apply(F, r.right, sigma)) is True
                for r in ready_at.get(i, [])
            ):
                G = rec(i + 1)
                if G is not None:
                    return G
            del F[a.id]
        return None

    G = rec(0)
    return (dict(F), G) if G is not None else None


def iso_check(p: Presentation, q: Presentation, bound: int = DEFAULT_BOUND) -> IsoResult:
    """Search for an isomorphism p -> q.

    Both orders of the arguments run the same search, so the verdict is
    symmetric; the witness is inverted when the arguments were swapped.
    """
    if _canonical_text(p) <= _canonical_text(q):
        return _search(p, q, bound)
    r = _search(q, p, bound)
    if r.verdict != "isomorphic":
        return r
    inv = {v: k for k, v in r.object_map.items()}
    return IsoResult("isomorphic", r.reason, inv, r.inverse_map, r.arrow_map)


# -- skeleton --------------------------------------------------------------------------------


def find_isomorphism(p: Presentation, x: str, y: str, bound: int = DEFAULT_BOUND) -> tuple[Word, Word] | None:
    """Words u: x -> y and v: y -> x with uv = 1_x and vu = 1_y, if any within ``bound``."""
    if x == y:
        return Word(x, x, ()), Word(x, x, ())
    forth = hom_representatives(p, x, y, bound)[0]
    back = hom_representatives(p, y, x, bound)[0]
    for u in forth:
        for v in back:
            if (
                equivalent(p, u.then(v), Word(x, x, ()), bound) is True
                and equivalent(p, v.then(u), Word(y, y, ()), bound) is True
            ):
                return u, v
    return None


def skeleton(p: Presentation, bound: int = DEFAULT_BOUND) -> tuple[Presentation, CatFunctor]:
    """Full subcategory on one object per isomorphism class, with the retraction.

    Each object x gets an isomorphism theta_x into its representative; the
    skeleton is generated by one arrow per generator a: x -> y standing for
    theta_x^-1 . a . theta_y, subject to the images of the relations and to
    theta_x = 1.  Redundant generators are then removed by Tietze moves.
    """
    reps: list[str] = []
    rep_of: dict[str, str] = {}
    theta: dict[str, Word] = {}
    for x in p.objects:
        for r in reps:
            iso = find_isomorphism(p, x, r, bound)
            if iso is not None:
                rep_of[x], theta[x] = r, iso[0]
                break
        else:
            reps.append(x)
            rep_of[x], theta[x] = x, Word(x, x, ())

    def hat(w: Word) -> Word:
        return Word(rep_of[w.src], rep_of[w.tgt], w.arrows)

    quiver = Quiver(
        tuple(reps),
        tuple(Arrow(a.id, rep_of[a.src], rep_of[a.tgt]) for a in p.arrows),
    )
    rels = [Relation(hat(r.left), hat(r.right)) for r in p.relations]
    for x in p.objects:
        if theta[x].arrows:
            rels.append(Relation(hat(theta[x]), Word(rep_of[x], rep_of[x], ())))
    raw = Presentation(quiver, tuple(rels))
    simple, subst = tietze_simplify(raw)
    retraction = CatFunctor(
        p,
        simple,
        dict(rep_of),
        {a.id: substitute(Word(rep_of[a.src], rep_of[a.tgt], (a.id,)), subst) for a in p.arrows},
    )
    return simple, retraction


def describe(p: Presentation) -> str:
    """Short structural description, recognising free categories on cycles."""
    n = len(p.objects)
    if not p.relations and len(p.arrows) == n and n > 0:
        out = {a.src: a for a in p.arrows}
        if len(out) == n and len({a.tgt for a in p.arrows}) == n:
            seen, x = [], p.objects[0]
            while x not in seen:
                seen.append(x)
                x = out[x].tgt
            if len(seen) == n:
                return f"{_objects(n)}, free on {n}-cycle (≅ c{_subscript(n)})"
    if not p.arrows and not p.relations:
        return f"{_objects(n)}, discrete"
    return p.summary()


def _objects(n: int) -> str:
    return f"{n} object" if n == 1 else f"{n} objects"


def _subscript(n: int) -> str:
    return str(n).translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))
