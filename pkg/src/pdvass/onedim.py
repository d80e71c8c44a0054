"""Decision procedures for bidirected machines with a single counter.

Reachability between empty-stack zero-counter configurations factors into
three independently decidable questions: coverability in both directions and
reachability when the counter may go negative.  Coverability is decided by
saturating path summaries over a hierarchy of layered graphs G_0, G_1, ...
where level k captures runs of stack height at most k; gadget edges replay
the previous level's summaries one layer up.  Integer-relaxed reachability is
decided by a fixpoint over cosets of subgroups of the integers: bidirected
path weights between two states always form a full coset, so a small lattice
suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .graphsum import (
    NEG_INF,
    OMEGA,
    SummaryValue,
    UNREACHABLE,
    WeightedGraph,
    prepare,
    summaries_from,
)
from .model import Machine, bidirected_closure, check_bidirected, is_separated, separate_counter_stack

LEVEL_CAP = 2 ** 16

BOTTOM_LAYER = ""


class SaturationCapExceeded(RuntimeError):
    """Raised when summary saturation does not converge within the level cap."""


@dataclass(frozen=True)
class SummaryTable:
    """Converged or per-level summaries: gamma over state pairs, delta per state."""

    level: int
    gamma: dict
    delta: dict

    def same_values(self, other: "SummaryTable") -> bool:
        return self.gamma == other.gamma and self.delta == other.delta


def state_node(p: str, layer: str) -> tuple:
    return ("s", p, layer)


def summary_leq(x: SummaryValue, y: SummaryValue) -> bool:
    """Pointwise order on summaries: y dominates x (deeper levels only grow)."""
    if x == UNREACHABLE:
        return True
    if y == UNREACHABLE:
        return False
    if x.a != y.a:
        return x.a < y.a
    return x.b <= y.b


def table_leq(lo: SummaryTable, hi: SummaryTable) -> bool:
    return all(summary_leq(lo.gamma[k], hi.gamma[k]) for k in lo.gamma) and all(
        lo.delta[p] <= hi.delta[p] for p in lo.delta
    )


def _check_one_dim(m: Machine) -> None:
    if m.dimension != 1:
        raise ValueError("layered summaries require exactly one counter")
    if not check_bidirected(m):
        raise ValueError("layered summaries require a bidirected machine")


def build_layer_graph(m: Machine, prev: Optional[SummaryTable]) -> WeightedGraph:
    """Construct G_0 (prev=None) or G_k from the level k-1 summary table.

    Layers are indexed by stack-top symbol, with the empty string for the
    bare-stack layer.  Every layer carries the internal transitions and, for
    k >= 1, a pump gadget per state with finite delta (a two-edge loop of
    total weight +1 dipping to delta) and a summary gadget per finite gamma
    pair (edges a then -a+b', so traversal replays the best excursion).
    Push and pop transitions connect the bare layer with the symbol layers.
    """
    _check_one_dim(m)
    if not is_separated(m):
        raise ValueError("layer graphs require a counter/stack separated machine")
    layers = [BOTTOM_LAYER] if prev is None else [BOTTOM_LAYER, *m.alphabet]
    nodes = [state_node(p, layer) for p in m.states for layer in layers]
    edges = []
    for t in m.transitions:
        if t.op.kind == "internal":
            for layer in layers:
                edges.append((state_node(t.source, layer), t.effect[0], state_node(t.target, layer)))
        elif prev is not None:
            if t.op.kind == "push":
                edges.append((state_node(t.source, BOTTOM_LAYER), 0, state_node(t.target, t.op.symbol)))
            else:
                edges.append((state_node(t.source, t.op.symbol), 0, state_node(t.target, BOTTOM_LAYER)))
    if prev is not None:
        for layer in layers:
            for p in m.states:
                c = prev.delta[p]
                if c == NEG_INF:
                    continue
                node = ("d", p, layer)
                nodes.append(node)
                edges.append((state_node(p, layer), c, node))
                edges.append((node, -c + 1, state_node(p, layer)))
            for (p, q), value in prev.gamma.items():
                if not value.finite:
                    continue
                b_prime = 0 if value.b == OMEGA else value.b
                node = ("g", p, q, layer)
                nodes.append(node)
                edges.append((state_node(p, layer), value.a, node))
                edges.append((node, -value.a + b_prime, state_node(q, layer)))
    return WeightedGraph.make(nodes, edges)


def extract_table(m: Machine, g: WeightedGraph, level: int) -> SummaryTable:
    bundle = prepare(g)
    gamma: dict = {}
    delta: dict = {}
    for p in m.states:
        row, d = summaries_from(bundle, state_node(p, BOTTOM_LAYER))
        delta[p] = d
        for q in m.states:
            gamma[(p, q)] = row[state_node(q, BOTTOM_LAYER)]
    return SummaryTable(level, gamma, delta)


def summary_chain(m: Machine, cap: int = LEVEL_CAP) -> list[SummaryTable]:
    """Tables for levels 0, 1, ... up to and including the first repeat."""
    _check_one_dim(m)
    if not is_separated(m):
        raise ValueError("summary saturation requires a separated machine")
    tables = [extract_table(m, build_layer_graph(m, None), 0)]
    for k in range(1, cap + 1):
        table = extract_table(m, build_layer_graph(m, tables[-1]), k)
        tables.append(table)
        if table.same_values(tables[-2]):
            return tables
    raise SaturationCapExceeded(f"summaries did not converge within {cap} levels")


def saturate_summaries(m: Machine, cap: int = LEVEL_CAP) -> SummaryTable:
    """Converged summary table; its level is the first fixpoint level."""
    return summary_chain(m, cap)[-1]


def cover(m: Machine, source: str, target: str, cap: int = LEVEL_CAP) -> bool:
    """Can (source, 0, empty) reach (target, j, empty) for some j >= 0?

    Requires a bidirected, separated one-counter machine.  Holds exactly when
    the converged summary for the pair has its minimum prefix sum at zero.
    """
    table = saturate_summaries(m, cap)
    return table.gamma[(source, target)].a == 0


# ---------------------------------------------------------------------------
# Integer-relaxed reachability via cosets of subgroups of Z.

Coset = Optional[tuple]  # None = empty, else (r, g): the set r + g*Z, 0 <= r < g or g == 0


def _normal(r: int, g: int) -> tuple:
    g = abs(g)
    return (r % g if g else r, g)


def coset_join(c1: Coset, c2: Coset) -> Coset:
    """Smallest coset containing both arguments."""
    if c1 is None:
        return c2
    if c2 is None:
        return c1
    r1, g1 = c1
    r2, g2 = c2
    g = math.gcd(g1, math.gcd(g2, abs(r1 - r2)))
    return _normal(r1, g)


def coset_add(c1: Coset, c2: Coset) -> Coset:
    if c1 is None or c2 is None:
        return None
    r1, g1 = c1
    r2, g2 = c2
    return _normal(r1 + r2, math.gcd(g1, g2))


def coset_shift(c: Coset, k: int) -> Coset:
    if c is None:
        return None
    return _normal(c[0] + k, c[1])


def coset_member(c: Coset, x: int) -> bool:
    if c is None:
        return False
    r, g = c
    return x == r if g == 0 else (x - r) % g == 0


def zreach_cosets(m: Machine) -> dict:
    """Fixpoint table of weight cosets of balanced-stack integer runs.

    Entry (p, q) is the set of counter effects of runs from (p, empty stack)
    to (q, empty stack) when counters may go negative.  Bidirectedness makes
    each such set a coset (w1 - w2 + w3 stays achievable), so joining
    singleton seeds under concatenation and push/pop wrapping converges.
    """
    if not check_bidirected(m):
        raise ValueError("coset reachability requires a bidirected machine")
    if m.dimension != 1:
        raise ValueError("coset reachability requires exactly one counter")
    table: dict = {}
    for p in m.states:
        table[(p, p)] = (0, 0)
    internal = [t for t in m.transitions if t.op.kind == "internal"]
    pushes = [t for t in m.transitions if t.op.kind == "push"]
    pops = [t for t in m.transitions if t.op.kind == "pop"]
    for t in internal:
        key = (t.source, t.target)
        table[key] = coset_join(table.get(key), (t.effect[0], 0))
    changed = True
    while changed:
        changed = False

        def absorb(key, coset):
            nonlocal changed
            if coset is None:
                return
            joined = coset_join(table.get(key), coset)
            if joined != table.get(key):
                table[key] = joined
                changed = True

        for (p, q), c1 in list(table.items()):
            for (q2, r), c2 in list(table.items()):
                if q == q2:
                    absorb((p, r), coset_add(c1, c2))
        for t1 in pushes:
            for t2 in pops:
                if t1.op.symbol != t2.op.symbol:
                    continue
                inner = table.get((t1.target, t2.source))
                if inner is not None:
                    absorb((t1.source, t2.target), coset_shift(inner, t1.effect[0] + t2.effect[0]))
    return table


def zreach(m: Machine, source: str, target: str) -> bool:
    """Is (target, 0, empty) reachable from (source, 0, empty) over Z counters?"""
    return coset_member(zreach_cosets(m).get((source, target)), 0)


def reach1d_conjuncts(m: Machine, source: str, target: str, cap: int = LEVEL_CAP) -> tuple[bool, bool, bool]:
    """The three independent conditions whose conjunction decides reachability."""
    if m.dimension != 1:
        raise ValueError("reach1d requires exactly one counter")
    if not check_bidirected(m):
        raise ValueError("reach1d requires a bidirected machine")
    sep = separate_counter_stack(m)
    return (
        cover(sep, source, target, cap),
        cover(sep, target, source, cap),
        zreach(m, source, target),
    )


def reach1d(m: Machine, source: str, target: str, cap: int = LEVEL_CAP) -> bool:
    """Decide (source, 0, empty) ->* (target, 0, empty) for bidirected 1-counter machines."""
    forward, backward, balanced = reach1d_conjuncts(m, source, target, cap)
    return forward and backward and balanced
