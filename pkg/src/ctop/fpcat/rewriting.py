"""Word problem kernel: shortlex Knuth-Bendix completion and bounded congruence closure.

Relations are oriented so that the shortlex-larger side rewrites to the
smaller one.  Completion runs under explicit limits; when it stops with no
unresolved critical pair the system is confluent and terminating, and
normal forms decide equality.  Otherwise callers fall back to the bounded
union-find closure in :func:`bounded_closure`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from scipy.cluster.hierarchy import DisjointSet

from .core import Presentation, Relation, Word

Letters = tuple[str, ...]
Rule = tuple[Letters, Letters]

MAX_RULES = 400
MAX_ROUNDS = 40
# a completion that needs left sides longer than this (or twice the longest
# relation side) is treated as not finishing
MAX_RULE_LEN = 16


def shortlex_key(w: Letters) -> tuple[int, Letters]:
    return (len(w), w)


def orient(a: Letters, b: Letters) -> Rule:
    return (a, b) if shortlex_key(a) > shortlex_key(b) else (b, a)


class RewritingSystem:
    def __init__(self, rules: Iterable[Rule] = (), confluent: bool = False) -> None:
        self.confluent = confluent
        self._lhs: dict[Letters, Letters] = {}
        self._suffix_lens: list[int] = []
        for rule in sorted(set(rules), key=lambda r: (shortlex_key(r[0]), r[1])):
            self.add(rule)

    @property
    def rules(self) -> tuple[Rule, ...]:
        return tuple(self._lhs.items())

    def add(self, rule: Rule) -> None:
        lhs, rhs = rule
        self._lhs[lhs] = rhs
        if len(lhs) not in self._suffix_lens:
            self._suffix_lens.append(len(lhs))
            self._suffix_lens.sort()

    def __len__(self) -> int:
        return len(self._lhs)

    def __repr__(self) -> str:
        return f"RewritingSystem({len(self)} rules, confluent={self.confluent})"

    def reduce(self, w: Letters) -> Letters:
        # the output stack is always irreducible, so only its suffixes need checking
        if not self._lhs:
            return w
        out: list[str] = []
        todo = list(reversed(w))
        while todo:
            out.append(todo.pop())
            n = len(out)
            for k in self._suffix_lens:
                if k > n:
                    break
                rhs = self._lhs.get(tuple(out[n - k :]))
                if rhs is not None:
                    del out[n - k :]
                    todo.extend(reversed(rhs))
                    break
        return tuple(out)

    def normal_form(self, w: Word) -> Word:
        return Word(w.src, w.tgt, self.reduce(w.arrows))

    def ends_with_redex(self, w: Letters) -> bool:
        """True if some left-hand side is a suffix of ``w``."""
        n = len(w)
        for k in self._suffix_lens:
            if k > n:
                break
            if w[n - k :] in self._lhs:
                return True
        return False


def _critical_pairs(r1: Rule, r2: Rule) -> Iterator[tuple[Letters, Letters]]:
    (l1, s1), (l2, s2) = r1, r2
    # proper overlaps: suffix of l1 == prefix of l2
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield s1 + l2[k:], l1[:-k] + s2
    # l2 occurring strictly inside l1
    if r1 != r2 and len(l2) <= len(l1):
        for i in range(len(l1) - len(l2) + 1):
            if l1[i : i + len(l2)] == l2:
                yield s1, l1[:i] + s2 + l1[i + len(l2) :]


def _interreduce(rules: list[Rule]) -> tuple[list[Rule], list[tuple[Letters, Letters]]]:
    """Drop rules whose left side contains a smaller left side; normalise right sides.

    A left side can only contain left sides that are shortlex-smaller, so one
    pass in shortlex order suffices.  Dropped rules come back as pairs to
    re-orient.
    """
    kept = RewritingSystem()
    dropped = []
    for l, r in sorted(set(rules), key=lambda rule: (shortlex_key(rule[0]), rule[1])):
        if l in kept._lhs or kept.reduce(l) != l:
            dropped.append((l, r))
        else:
            kept.add((l, r))
    final = kept.rules
    out = [(l, kept.reduce(r)) for l, r in final]
    return out, dropped


def knuth_bendix(
    pairs: Iterable[tuple[Letters, Letters]],
    max_rules: int = MAX_RULES,
    max_rounds: int = MAX_ROUNDS,
    max_rule_len: int = MAX_RULE_LEN,
) -> RewritingSystem:
    """Shortlex completion of ``pairs`` within the given limits."""
    pending = deque(pairs)
    longest = max((len(w) for pair in pending for w in pair), default=0)
    max_rule_len = max(max_rule_len, 2 * longest)
    rules: list[Rule] = []
    for _ in range(max_rounds):
        rs = RewritingSystem(rules)
        while pending:
            a, b = pending.popleft()
            a, b = rs.reduce(a), rs.reduce(b)
            if a == b:
                continue
            rule = orient(a, b)
            rules.append(rule)
            rs.add(rule)
            if len(rules) > max_rules or len(rule[0]) > max_rule_len:
                return RewritingSystem(rules, False)
        rules, dropped = _interreduce(rules)
        pending.extend(dropped)
        rs = RewritingSystem(rules)
        for r1 in rules:
            for r2 in rules:
                for a, b in _critical_pairs(r1, r2):
                    if rs.reduce(a) != rs.reduce(b):
                        pending.append((a, b))
        if not pending:
            return RewritingSystem(rules, True)
    return RewritingSystem(rules, False)


@lru_cache(maxsize=512)
def rewriting_system(p: Presentation) -> RewritingSystem:
    """Completed rewriting system of ``p`` (cached per presentation)."""
    return knuth_bendix((r.left.arrows, r.right.arrows) for r in p.relations)


# -- chains of relation applications ---------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """Replace ``relation.left`` by ``relation.right`` (or the reverse) at ``position``."""

    position: int
    relation: int
    forward: bool = True


def _objects_along(p: Presentation, w: Word) -> list[str]:
    objs = [w.src]
    for aid in w.arrows:
        objs.append(p.quiver.by_id[aid].tgt)
    return objs


def apply_step(p: Presentation, w: Word, step: Step) -> Word:
    """Apply one relation in context, raising ``ValueError`` if it does not match."""
    rel: Relation = p.relations[step.relation]
    old, new = (rel.left, rel.right) if step.forward else (rel.right, rel.left)
    i = step.position
    if w.arrows[i : i + len(old)] != old.arrows:
        raise ValueError(f"{old} does not occur at position {i} of {w}")
    if not old.arrows and _objects_along(p, w)[i] != old.src:
        raise ValueError(f"identity at {old.src} does not sit at position {i} of {w}")
    return Word(w.src, w.tgt, w.arrows[:i] + new.arrows + w.arrows[i + len(old) :])


def neighbours(p: Presentation, w: Word, max_len: int) -> Iterator[tuple[Step, Word]]:
    """Words one relation application away from ``w`` with length <= ``max_len``."""
    objs = None
    for ri, rel in enumerate(p.relations):
        for forward, (old, new) in ((True, (rel.left, rel.right)), (False, (rel.right, rel.left))):
            if len(w) - len(old) + len(new) > max_len:
                continue
            k = len(old)
            if k == 0:
                if objs is None:
                    objs = _objects_along(p, w)
                positions = [i for i, x in enumerate(objs) if x == old.src]
            else:
                positions = [i for i in range(len(w) - k + 1) if w.arrows[i : i + k] == old.arrows]
            for i in positions:
                step = Step(i, ri, forward)
                yield step, Word(w.src, w.tgt, w.arrows[:i] + new.arrows + w.arrows[i + k :])


def congruence_chain(p: Presentation, u: Word, v: Word, max_len: int) -> list[Step] | None:
    """Shortest chain of relation applications from ``u`` to ``v`` through words of length <= max_len."""
    if (u.src, u.tgt) != (v.src, v.tgt):
        return None
    max_len = max(max_len, len(u), len(v))
    prev: dict[Word, tuple[Word, Step] | None] = {u: None}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            chain: list[Step] = []
            while prev[w] is not None:
                w, step = prev[w]  # type: ignore[misc]
                chain.append(step)
            return chain[::-1]
        for step, nxt in neighbours(p, w, max_len):
            if nxt not in prev:
                prev[nxt] = (w, step)
                queue.append(nxt)
    return None


def replay_chain(p: Presentation, u: Word, chain: Iterable[Step]) -> Word:
    for step in chain:
        u = apply_step(p, u, step)
    return u


# -- bounded congruence closure --------------------------------------------------------------


@dataclass
class Closure:
    words: list[Word]
    classes: list[list[Word]]
    edges: list[tuple[Word, Step, Word]]


def bounded_closure(p: Presentation, src: str, tgt: str, max_len: int) -> Closure:
    """Union-find over all words src->tgt of length <= max_len, merged by single relation steps."""
    words = [w for w in p.quiver.words_from(src, max_len) if w.tgt == tgt]
    ds = DisjointSet(words)
    edges = []
    for w in words:
        for step, nxt in neighbours(p, w, max_len):
            # each undirected move is seen from both ends; keep the shortlex-smaller source
            if w.key() <= nxt.key() and not ds.connected(w, nxt):
                ds.merge(w, nxt)
                edges.append((w, step, nxt))
    classes = [sorted(s, key=Word.key) for s in ds.subsets()]
    classes.sort(key=lambda c: c[0].key())
    return Closure(words, classes, edges)
