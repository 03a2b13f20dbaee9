"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (the lines are repeated in the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from math import comb
from time import perf_counter

import numpy as np

from ctop.cspace import chain_over_cycle, fundamental_presentation, lift_hom, product as cproduct, registry
from ctop.fpcat import (
    Arrow,
    CatFunctor,
    Presentation,
    Quiver,
    Word,
    check_functor,
    cycle_quiver,
    enumerate_hom,
    equivalent,
    free_category,
    hom_representatives,
    iso_check,
    product,
    pushout_with_injections,
    skeleton,
)
from ctop.grid import (
    GridRegion,
    LatticePath,
    builtin_grid,
    cell_commutes,
    dihomotopy_classes,
    to_presentation,
    vertex_name,
)
from ctop.svk import svk_interval
from oracles import commutative_classes, grid_class_sizes, path_count


@dataclass
class Criterion:
    number: int
    title: str
    limit: float | None = None
    failures: list[str] = field(default_factory=list)
    checks: int = 0
    elapsed: float = 0.0

    def check(self, label: str, ok: bool) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(label)

    @property
    def ok(self) -> bool:
        return not self.failures and (self.limit is None or self.elapsed < self.limit)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        detail = f"{self.checks} checks, {self.elapsed:.2f}s"
        if self.limit is not None:
            detail += f" (limit {self.limit:g}s)"
        if self.failures:
            detail += "; failed: " + "; ".join(self.failures)
        return f"[{status}] criterion {self.number}: {self.title} ({detail})"


RESULTS: dict[int, Criterion] = {}


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    c = Criterion(number, title, limit)
    t0 = perf_counter()
    try:
        yield c
    except Exception as exc:
        c.failures.append(f"raised {exc!r}")
        raise
    finally:
        c.elapsed = perf_counter() - t0
        RESULTS[number] = c
        print(c.line())
    assert c.ok, c.line()


def timed(fn, *args):
    t0 = perf_counter()
    out = fn(*args)
    return out, perf_counter() - t0


def pi1(name: str) -> Presentation:
    return fundamental_presentation(registry(name))


# -- 1 ----------------------------------------------------------------------------------------


def test_criterion_1_registry_fundamental_categories():
    with criterion(1, "registry fundamental categories") as c:

        def hom_count(name, src, tgt):
            return len(enumerate_hom(pi1(name), src, tgt, 12))

        for name, src, tgt in [
            ("cI", "0", "1"),
            ("cJ", "0", "2"),
            ("cI_delayed_minus", "0", "1"),
            ("cI_delayed_plus", "0", "1"),
        ]:
            n, dt = timed(hom_count, name, src, tgt)
            c.check(f"{name} hom({src},{tgt}) = {n}, want 1", n == 1)
            c.check(f"{name} took {dt:.2f}s", dt < 1)

        # A loop turning j times has length 2*j*pi; one generator is one full turn,
        # so the length bound 2k*pi is a bound of k generators.
        def circle_loops(k):
            return enumerate_hom(pi1("cS1"), "x0", "x0", k)

        for k in range(0, 6):
            h, dt = timed(circle_loops, k)
            lengths = [len(w) for w in h.representatives]
            c.check(f"cS1 length bound {2 * k}pi: {len(h)} classes, want {k + 1}", len(h) == k + 1)
            c.check(f"cS1 turn counts {lengths}", lengths == list(range(k + 1)))
            c.check("cS1 result certified", h.completeness == "complete")
            c.check(f"cS1 took {dt:.2f}s", dt < 1)

        for n in (1, 2, 3):
            p, dt = timed(pi1, f"c{n}S1")
            c.check(f"c{n}S1 has {len(p.objects)} objects, {len(p.arrows)} arrows", (len(p.objects), len(p.arrows)) == (n, n))
            c.check(f"c{n}S1 has relations", not p.relations)
            outs = sorted(a.src for a in p.arrows) == sorted(p.objects)
            ins = sorted(a.tgt for a in p.arrows) == sorted(p.objects)
            c.check(f"c{n}S1 is not a single cycle", outs and ins and bool(iso_check(p, free_category(cycle_quiver(n)), 8)))
            c.check(f"c{n}S1 took {dt:.2f}s", dt < 1)

        def reversible():
            p = pi1("cI_rev")
            return p, [enumerate_hom(p, x, x, 8) for x in p.objects]

        (p, loops), dt = timed(reversible)
        c.check("cI_rev is not free on 2 arrows", len(p.arrows) == 2 and not p.relations)
        for h in loops:
            lengths = [len(w) for w in h.representatives]
            c.check(f"cI_rev loop lengths at {h.source}: {lengths}", lengths == [0, 2, 4, 6, 8])
            c.check(f"cI_rev loop classes at {h.source} not singletons", all(k.size == 1 for k in h.classes))
        c.check(f"cI_rev took {dt:.2f}s", dt < 1)

        res, dt = timed(iso_check, pi1("c2S1"), pi1("cI_rev"), 12)
        c.check(f"iso(c2S1, cI_rev) = {res.verdict}", res.verdict == "isomorphic")
        c.check(f"iso took {dt:.2f}s", dt < 1)

        def onoff_skeleton():
            sk, _ = skeleton(pi1("onoff"), 12)
            return sk, iso_check(sk, free_category(cycle_quiver(2)), 12)

        (sk, res), dt = timed(onoff_skeleton)
        c.check(f"onoff skeleton has {len(sk.objects)} objects", len(sk.objects) == 2)
        c.check(f"onoff skeleton vs c2: {res.verdict}", res.verdict == "isomorphic")
        c.check(f"onoff skeleton took {dt:.2f}s", dt < 1)


# -- 2 ----------------------------------------------------------------------------------------


def test_criterion_2_products():
    with criterion(2, "product hom counts and torus loops", limit=10) as c:
        factors = {name: pi1(name) for name in ("cI", "cJ")}
        bound = 8
        for a, b in [("cI", "cJ"), ("cI", "cI"), ("cJ", "cJ")]:
            p, q = factors[a], factors[b]
            for prod_p, how in ((product(p, q), "presentation"), (fundamental_presentation(cproduct(registry(a), registry(b))), "c-graph")):
                for (x, y), (x2, y2) in itertools.product(itertools.product(p.objects, q.objects), repeat=2):
                    left = enumerate_hom(p, x, x2, bound)
                    right = enumerate_hom(q, y, y2, bound)
                    both = enumerate_hom(prod_p, f"({x},{y})", f"({x2},{y2})", bound)
                    want = len(left) * len(right)
                    c.check(
                        f"{a}x{b} ({how}) hom(({x},{y}),({x2},{y2})) = {len(both)}, want {want}",
                        len(both) == want and both.completeness == "complete",
                    )

        torus = pi1("torus(2)")
        base = torus.objects[0]
        for k in range(0, bound // 2 + 1):
            h = enumerate_hom(torus, base, base, 2 * k)
            formula = sum(1 for i in range(2 * k + 1) for j in range(2 * k + 1) if i + j <= 2 * k)
            oracle = commutative_classes(2, 2 * k)
            c.check(f"torus(2) bound {2 * k}: {len(h)} classes, want {formula}", len(h) == formula == oracle)


# -- 3 ----------------------------------------------------------------------------------------


def test_criterion_3_spheres():
    with criterion(3, "collapsed cube boundaries") as c:
        s1 = pi1("sphere(1)")
        counts = [len(enumerate_hom(s1, "*", "*", b)) for b in (0, 2, 4, 6, 8)]
        c.check(f"sphere(1) loop classes {counts}, want [1, 3, 5, 7, 9]", counts == [1, 3, 5, 7, 9])
        for n in (2, 3):
            p = pi1(f"sphere({n})")
            h = enumerate_hom(p, "*", "*", 8)
            words = [w for w in p.quiver.words_from("*", 8) if w.tgt == "*"]
            c.check(f"sphere({n}) has {len(h)} loop classes at bound 8", len(h) == 1)
            c.check(f"sphere({n}) class misses loop words", len(h) == 1 and h.classes[0].size == len(words))
            c.check(f"sphere({n}) representative is not the identity", h.representatives[0].is_identity)
            c.check(f"sphere({n}) result uncertified", h.completeness == "complete")


# -- 4 ----------------------------------------------------------------------------------------


def test_criterion_4_obstruction_grids():
    with criterion(4, "obstruction grid classes and cells", limit=5) as c:
        for name, want in (("annulus", 2), ("Y", 3), ("Z", 4)):
            r = builtin_grid(name)
            part = dihomotopy_classes(r)
            c.check(f"{name}: {len(part)} classes, want {want}", len(part) == want)
            c.check(f"{name}: {part.total} paths", part.total == comb(r.width + r.height, r.width) <= 252)
        annulus = builtin_grid("annulus")
        first = (LatticePath((1, 1), "R"), LatticePath((2, 1), "U"))
        second = (LatticePath((1, 1), "U"), LatticePath((1, 2), "R"))
        c.check("annulus cell around the hole commutes", not cell_commutes(annulus, first, second))
        y = builtin_grid("Y")
        first = (LatticePath((1, 1), "UU"), LatticePath((1, 3), "RURR"))
        second = (LatticePath((1, 1), "RR"), LatticePath((3, 1), "URUU"))
        c.check("Y central cell does not commute", cell_commutes(y, first, second))


# -- 5 ----------------------------------------------------------------------------------------


def test_criterion_5_corner_agreement():
    with criterion(5, "corners-only vs all-vertices class counts") as c:
        for name in ("annulus", "Y", "Z"):
            r = builtin_grid(name)
            src, tgt = vertex_name(r.start), vertex_name(r.end)
            bound = r.width + r.height
            corners = enumerate_hom(to_presentation(r, "c"), src, tgt, bound)
            every = enumerate_hom(to_presentation(r.all_flexible(), "c"), src, tgt, bound)
            c.check(f"{name}: corners {len(corners)} vs all vertices {len(every)}", len(corners) == len(every))
            c.check(f"{name}: counts uncertified", corners.completeness == every.completeness == "complete")


# -- 6 ----------------------------------------------------------------------------------------


def test_criterion_6_gluing_failure():
    with criterion(6, "open-cover gluing mismatch on cI") as c:
        demo = svk_interval(12)
        c.check(f"pi1(cI) hom(0,1) = {demo.whole}, want 1", demo.whole == 1)
        c.check(f"pushout hom(0,1) = {demo.glued}, want 0", demo.glued == 0)
        c.check("results uncertified", demo.whole_completeness == demo.glued_completeness == "complete")
        c.check("mismatch not reported", demo.fails)


# -- 7 ----------------------------------------------------------------------------------------


def _random_quiver(rng: np.random.Generator) -> tuple[int, list[tuple[int, int]]]:
    n = int(rng.integers(1, 7))
    m = int(rng.integers(0, 9))
    return n, [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(m)]


def free_hom_matches_path_count(rng: np.random.Generator) -> list[str]:
    n, arrows = _random_quiver(rng)
    q = Quiver(tuple(f"v{i}" for i in range(n)), tuple(Arrow(f"a{k}", f"v{s}", f"v{t}") for k, (s, t) in enumerate(arrows)))
    p = free_category(q)
    src, tgt, bound = int(rng.integers(n)), int(rng.integers(n)), int(rng.integers(0, 7))
    h = enumerate_hom(p, f"v{src}", f"v{tgt}", bound)
    want = path_count(n, arrows, src, tgt, bound)
    bad = []
    if len(h) != want:
        bad.append(f"quiver {arrows} hom(v{src},v{tgt}) bound {bound}: {len(h)} vs {want}")
    if any(k.size != 1 for k in h.classes) or h.completeness != "complete":
        bad.append(f"quiver {arrows}: free classes not singletons")
    return bad


def _random_dag(rng: np.random.Generator, names: list[str], start: int, count: int, prefix: str) -> list[Arrow]:
    out = []
    for k in range(count):
        s, t = sorted(rng.choice(len(names), size=2, replace=len(names) < 2))
        if s == t:
            continue
        out.append(Arrow(f"{prefix}{start + k}", names[s], names[t]))
    return out


def pushout_universal_property(rng: np.random.Generator) -> list[str]:
    """Glue two free categories on DAGs along a shared sub-DAG.

    The pushout must be the free category on the union DAG: its hom counts
    match the path-count oracle, and the cocone into that free category has
    exactly one mediating functor (as does the cocone into the terminal
    category).
    """
    nb = int(rng.integers(0, 4))
    base_objs = [f"b{i}" for i in range(nb)]
    p_objs = base_objs + [f"p{i}" for i in range(int(rng.integers(1, 4)))]
    q_objs = base_objs + [f"q{i}" for i in range(int(rng.integers(1, 4)))]
    order = {x: i for i, x in enumerate(dict.fromkeys(p_objs + q_objs))}
    p_objs.sort(key=order.get)
    q_objs.sort(key=order.get)
    base_arrows = _random_dag(rng, base_objs, 0, int(rng.integers(0, 4)), "c") if nb > 1 else []
    p_arrows = base_arrows + (_random_dag(rng, p_objs, 0, int(rng.integers(1, 7)), "f") if len(p_objs) > 1 else [])
    q_arrows = base_arrows + (_random_dag(rng, q_objs, 0, int(rng.integers(1, 7)), "g") if len(q_objs) > 1 else [])
    base = free_category(Quiver(tuple(base_objs), tuple(base_arrows)))
    p = free_category(Quiver(tuple(p_objs), tuple(p_arrows)))
    q = free_category(Quiver(tuple(q_objs), tuple(q_arrows)))

    def inclusion(sub: Presentation, whole: Presentation) -> CatFunctor:
        return CatFunctor(sub, whole, {x: x for x in sub.objects}, {a.id: Word(a.src, a.tgt, (a.id,)) for a in sub.arrows})

    out, inl, inr = pushout_with_injections(inclusion(base, p), inclusion(base, q))

    union_objs = list(order)
    union_arrows = list(dict.fromkeys(p_arrows + q_arrows))
    glued = free_category(Quiver(tuple(union_objs), tuple(union_arrows)))
    h, k = inclusion(p, glued), inclusion(q, glued)
    bad = []

    # out's objects are renamed; recover the union name through the coprojections
    name = {inl.object_map[x]: x for x in p.objects} | {inr.object_map[y]: y for y in q.objects}
    if sorted(name) != sorted(out.objects) or sorted(name.values()) != sorted(union_objs):
        return [f"pushout objects {out.objects} do not match the union {union_objs}"]
    bound = len(union_objs)
    idx = {x: i for i, x in enumerate(union_objs)}
    pairs = [(s, t) for s, t in ((idx[a.src], idx[a.tgt]) for a in union_arrows)]
    for x, y in itertools.product(out.objects, repeat=2):
        got = len(hom_representatives(out, x, y, bound)[0])
        want = path_count(len(union_objs), pairs, idx[name[x]], idx[name[y]], bound)
        if got != want:
            bad.append(f"hom({x},{y}) = {got}, union DAG has {want} paths")

    # every generator of the pushout is a coprojection of a generator, so a
    # mediating functor is pinned down on generators: search all candidate
    # images of each generator and count those compatible with the cocone
    sources: dict[str, list[Word]] = {}
    for F, leg in ((inl, h), (inr, k)):
        for a in F.domain.arrows:
            (gen,) = F.arrow_map[a.id].arrows
            sources.setdefault(gen, []).append(leg.arrow_map[a.id])
    if set(sources) != {a.id for a in out.arrows}:
        bad.append("pushout has generators outside the coprojection images")
    arrow_map = {}
    for a in out.arrows:
        src, tgt = name[a.src], name[a.tgt]
        candidates = hom_representatives(glued, src, tgt, bound)[0]
        fits = [w for w in candidates if all(equivalent(glued, w, img, bound) for img in sources.get(a.id, []))]
        if len(fits) != 1:
            bad.append(f"generator {a.id}: {len(fits)} mediating images")
            continue
        arrow_map[a.id] = fits[0]
    if bad:
        return bad
    u = CatFunctor(out, glued, name, arrow_map)
    chk = check_functor(u, bound)
    if not chk:
        bad.append(f"mediating functor invalid: {chk.reason}")
    for F, leg in ((inl, h), (inr, k)):
        for a in F.domain.arrows:
            if u.apply(F.arrow_map[a.id]) != leg.arrow_map[a.id]:
                bad.append(f"mediating functor does not commute on {a.id}")

    point = free_category(Quiver(("pt",), ()))
    to_point = CatFunctor(out, point, {x: "pt" for x in out.objects}, {a.id: Word("pt", "pt", ()) for a in out.arrows})
    if not check_functor(to_point, bound):
        bad.append("functor to the terminal category invalid")
    return bad


def grid_symmetry_and_conservation(rng: np.random.Generator) -> list[str]:
    total = int(rng.integers(0, 13))
    w = int(rng.integers(0, total + 1))
    h = total - w
    cells = [(i, j) for i in range(1, w + 1) for j in range(1, h + 1)]
    forbidden = {cell for cell in cells if rng.random() < 0.25}
    r = GridRegion.build(w, h, forbidden)
    part = dihomotopy_classes(r)
    trans = dihomotopy_classes(r.transpose())
    sizes = [k.size for k in part.classes]
    oracle = grid_class_sizes(forbidden, r.start, r.end)
    bad = []
    if sizes != oracle:
        bad.append(f"{w}x{h} {sorted(forbidden)}: sizes {sizes} vs oracle {oracle}")
    if sorted(sizes) != sorted(k.size for k in trans.classes):
        bad.append(f"{w}x{h} {sorted(forbidden)}: transpose changes class sizes")
    if not (sum(sizes) == part.total == comb(w + h, w)):
        bad.append(f"{w}x{h}: class sizes sum to {sum(sizes)}, {comb(w + h, w)} paths")
    return bad


def covering_bijection(n: int, bound: int = 10) -> list[str]:
    cov = chain_over_cycle(n, bound + n)
    base = fundamental_presentation(cov.base)
    bad = []
    for src, tgt in itertools.product(cov.base.flexible_vertices, repeat=2):
        lifted = lift_hom(cov, src, tgt, bound)
        direct = enumerate_hom(base, src, tgt, bound)
        if len(lifted.hom) != len(direct):
            bad.append(f"n={n} {src}->{tgt}: {len(lifted.hom)} lifted classes vs {len(direct)}")
        if len(set(lifted.endpoints)) != len(lifted.endpoints):
            bad.append(f"n={n} {src}->{tgt}: repeated endpoints")
        for cls, length in zip(lifted.hom.classes, lifted.lengths):
            if {len(w) for w in cls.members} != {length}:
                bad.append(f"n={n} {src}->{tgt}: length is not a class invariant")
        if [len(w) for w in direct.representatives] != sorted(lifted.lengths):
            bad.append(f"n={n} {src}->{tgt}: lengths differ from direct enumeration")
    return bad


def test_criterion_7_property_suites():
    with criterion(7, "randomised property suites", limit=60) as c:
        rng = np.random.default_rng(20240607)
        for i in range(100):
            for msg in free_hom_matches_path_count(rng):
                c.check(f"free hom #{i}: {msg}", False)
            c.checks += 1
        for i in range(20):
            for msg in pushout_universal_property(rng):
                c.check(f"pushout #{i}: {msg}", False)
            c.checks += 1
        for i in range(50):
            for msg in grid_symmetry_and_conservation(rng):
                c.check(f"grid #{i}: {msg}", False)
            c.checks += 1
        for n in (1, 2, 3, 5):
            for msg in covering_bijection(n):
                c.check(f"covering: {msg}", False)
            c.checks += 1


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
