"""Pure-difference binomial arithmetic: completion, membership, elimination.

A congruence on N^n generated by pairs (u, v) corresponds to the ideal
generated by the differences x^u - x^v.  Completion of the oriented pair set
into a reduced basis turns congruence membership into normal-form equality.
All S-pairs and reductions of pure differences stay pure differences, so the
whole calculus works on exponent vectors; coefficients never appear.

Normal forms batch rule applications (a rule that applies k times in a row is
applied in one step), which keeps rewriting cheap even when exponents carry
large multiplicities.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
Pair = tuple[Vector, Vector]


@dataclass(frozen=True)
class MonomialOrder:
    """Total degree-compatible order on exponent vectors, optionally blocked.

    `blocks` lists index groups compared first to last, each by graded
    lexicographic comparison.  A leading block makes the order eliminate the
    variables of that block.
    """

    blocks: tuple[tuple[int, ...], ...]

    def key(self, u: Vector):
        return tuple(
            (sum(u[i] for i in block), tuple(u[i] for i in block)) for block in self.blocks
        )

    def greater(self, u: Vector, v: Vector) -> bool:
        return self.key(u) > self.key(v)


def grlex(n: int) -> MonomialOrder:
    return MonomialOrder((tuple(range(n)),))


def elimination_order(n: int, eliminate: Sequence[int]) -> MonomialOrder:
    first = tuple(sorted(eliminate))
    rest = tuple(i for i in range(n) if i not in set(first))
    return MonomialOrder((first, rest))


@dataclass(frozen=True, order=True)
class Binomial:
    """x^lead - x^trail with lead strictly greater in the governing order."""

    lead: Vector
    trail: Vector


def oriented(u: Vector, v: Vector, order: MonomialOrder) -> Optional[Binomial]:
    if u == v:
        return None
    return Binomial(u, v) if order.greater(u, v) else Binomial(v, u)


def _applications(u: Vector, rule: Binomial) -> int:
    """How many times the rule applies to u in a row (0 if not at all)."""
    if any(ui < li for ui, li in zip(u, rule.lead)):
        return 0
    best = None
    for ui, li, ti in zip(u, rule.lead, rule.trail):
        if li > ti:
            room = 1 + (ui - li) // (li - ti)
            best = room if best is None else min(best, room)
    assert best is not None, "rule trail dominates its lead"
    return best


def normal_form(u: Vector, rules: Sequence[Binomial]) -> Vector:
    changed = True
    while changed:
        changed = False
        for rule in rules:
            k = _applications(u, rule)
            if k:
                u = tuple(ui + k * (ti - li) for ui, li, ti in zip(u, rule.lead, rule.trail))
                changed = True
    return u


def _s_pair(f: Binomial, g: Binomial) -> Pair:
    lcm = tuple(max(a, b) for a, b in zip(f.lead, g.lead))
    left = tuple(l - a + b for l, a, b in zip(lcm, f.lead, f.trail))
    right = tuple(l - a + b for l, a, b in zip(lcm, g.lead, g.trail))
    return left, right


def _coprime_leads(f: Binomial, g: Binomial) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(f.lead, g.lead))


def _reduce_tails(basis: list[Binomial]) -> list[Binomial]:
    current = sorted(basis)
    while True:
        updated = []
        changed = False
        for f in current:
            others = [g for g in current if g != f]
            trail = normal_form(f.trail, others)
            if trail != f.trail:
                changed = True
            updated.append(Binomial(f.lead, trail))
        current = sorted(set(updated))
        if not changed:
            return current


@lru_cache(maxsize=50_000)
def _groebner_cached(pairs: tuple[Pair, ...], order: MonomialOrder) -> tuple[Binomial, ...]:
    basis: list[Binomial] = []
    for u, v in pairs:
        b = oriented(u, v, order)
        if b is not None and b not in basis:
            basis.append(b)
    queue = deque((i, j) for i in range(len(basis)) for j in range(i + 1, len(basis)))
    while queue:
        i, j = queue.popleft()
        f, g = basis[i], basis[j]
        if _coprime_leads(f, g):
            continue
        left, right = _s_pair(f, g)
        nl = normal_form(left, basis)
        nr = normal_form(right, basis)
        if nl == nr:
            continue
        h = oriented(nl, nr, order)
        basis.append(h)
        queue.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return tuple(_reduce_tails(_strip_redundant(basis)))


def _strip_redundant(basis: list[Binomial]) -> list[Binomial]:
    """Drop members whose lead is divisible by another surviving lead."""
    survivors = list(dict.fromkeys(sorted(basis)))
    result: list[Binomial] = []
    for idx, f in enumerate(survivors):
        others = result + survivors[idx + 1 :]
        if any(all(gi <= fi for gi, fi in zip(g.lead, f.lead)) for g in others):
            continue
        result.append(f)
    return result


def groebner(pairs: Iterable[Pair], order: MonomialOrder) -> tuple[Binomial, ...]:
    """The reduced completion of the oriented pairs under the order."""
    frozen = tuple(sorted({(tuple(u), tuple(v)) for u, v in pairs}))
    return _groebner_cached(frozen, order)


def congruence_member(pairs: Iterable[Pair], s: Vector, t: Vector, order: Optional[MonomialOrder] = None) -> bool:
    """Does the congruence generated by the pairs relate s and t?"""
    s, t = tuple(s), tuple(t)
    if len(s) != len(t):
        raise ValueError("vectors of different arity")
    if order is None:
        order = grlex(len(s))
    gb = groebner(pairs, order)
    return normal_form(s, gb) == normal_form(t, gb)


def canonical_basis(pairs: Iterable[Pair], n: int) -> tuple[Pair, ...]:
    """Canonical generating pairs: the reduced completion under graded order."""
    gb = groebner(pairs, grlex(n))
    return tuple((b.lead, b.trail) for b in gb)


def eliminate(pairs: Iterable[Pair], n: int, drop: Sequence[int]) -> tuple[Pair, ...]:
    """Generating pairs of the congruence restricted to the kept coordinates.

    Completion under a block order that ranks the dropped variables first
    makes the drop-free members generate everything provable without touching
    the dropped coordinates.  Outputs keep the full arity (dropped entries
    are zero).
    """
    drop_set = set(drop)
    gb = groebner(pairs, elimination_order(n, tuple(drop_set)))
    kept = []
    for b in gb:
        if all(b.lead[i] == 0 and b.trail[i] == 0 for i in drop_set):
            kept.append((b.lead, b.trail))
    return tuple(sorted(kept))


def project_coords(pairs: Iterable[Pair], keep: Sequence[int]) -> tuple[Pair, ...]:
    keep = tuple(keep)
    return tuple(
        sorted(
            (tuple(u[i] for i in keep), tuple(v[i] for i in keep))
            for u, v in pairs
        )
    )


def quotient_by_monomial(pairs: Iterable[Pair], n: int, b: Vector) -> tuple[Pair, ...]:
    """Pairs generating {(u, v) : u + b related to v + b}: the quotient by x^b.

    Tag-variable construction: scale every generator by the tag, add
    x^b - x^b*t, eliminate the tag, and the tag-free part is exactly the part
    of the original ideal divisible by x^b; stripping b off re-bases it.
    """
    b = tuple(b)
    if len(b) != n:
        raise ValueError("monomial arity mismatch")
    tagged = [(u + (1,), v + (1,)) for u, v in pairs]
    tagged.append((b + (0,), b + (1,)))
    order = elimination_order(n + 1, (n,))
    gb = groebner(tagged, order)
    out = []
    for f in gb:
        if f.lead[n] or f.trail[n]:
            continue
        lead, trail = f.lead[:n], f.trail[:n]
        assert all(x >= y for x, y in zip(lead, b)) and all(
            x >= y for x, y in zip(trail, b)
        ), "tag-free element not divisible by the quotient monomial"
        out.append((tuple(x - y for x, y in zip(lead, b)), tuple(x - y for x, y in zip(trail, b))))
    return canonical_basis(out, n)
