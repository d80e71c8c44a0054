"""Path summaries over weighted digraphs whose components are strongly connected.

For a fixed source u the summary of a node v is the pair (a, b): a is the
best (maximum) over all u -> v paths of the minimum prefix sum along the path
(the empty prefix counts, so a <= 0), and b is the supremum of final path
weights among paths attaining that minimum, with OMEGA when unbounded.  The
companion value delta(u) is the best minimum prefix sum over positive-weight
cycles through u.

The computation follows a two-phase scheme: first strip positive cycles by
repeatedly locating one via maximizing Bellman-Ford and deleting the outgoing
edges of a critical node on it (a node from which the cycle never dips below
its starting counter); then relax Pareto frontiers of (min, weight) pairs in
the stripped graph and reassemble (a, b) from the frontier and the critical
nodes that remain reachable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

NEG_INF = float("-inf")
OMEGA = float("inf")

Node = Hashable
Edge = tuple  # (source, weight, target)
Pair = tuple  # (min prefix sum, weight)

BOTTOM = (NEG_INF, NEG_INF)


@dataclass(frozen=True)
class SummaryValue:
    """Pair (a, b) as above; a = -inf iff the node is unreachable (b follows)."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if self.a == NEG_INF:
            if self.b != NEG_INF:
                raise ValueError("unreachable summaries must be (-inf, -inf)")
        else:
            if self.a > 0:
                raise ValueError("minimum prefix sum cannot exceed 0")
            if self.b != OMEGA and self.b < self.a:
                raise ValueError("final weight cannot undercut the minimum")

    @property
    def finite(self) -> bool:
        return self.a != NEG_INF


UNREACHABLE = SummaryValue(NEG_INF, NEG_INF)


@dataclass(frozen=True)
class WeightedGraph:
    nodes: tuple
    edges: tuple

    @staticmethod
    def make(nodes: Iterable[Node], edges: Iterable[Edge]) -> "WeightedGraph":
        g = WeightedGraph(tuple(sorted(set(nodes))), tuple(sorted(set(edges))))
        node_set = set(g.nodes)
        for u, w, v in g.edges:
            if u not in node_set or v not in node_set:
                raise ValueError(f"edge ({u}, {w}, {v}) references unknown node")
            if not isinstance(w, int):
                raise ValueError("edge weights must be integers")
        return g

    def out_edges(self) -> dict:
        out: dict = {v: [] for v in self.nodes}
        for u, w, v in self.edges:
            out[u].append((w, v))
        return out


def extend(pair: Pair, c: int) -> Pair:
    """Append an edge of weight c to a path with summary pair (m, w)."""
    if pair[0] == NEG_INF:
        return BOTTOM
    w = pair[1] + c
    return (min(pair[0], w), w)


def weak_components(g: WeightedGraph) -> dict:
    """Map each node to a frozenset, its undirected connected component."""
    adj: dict = {v: set() for v in g.nodes}
    for u, _, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    comp: dict = {}
    for start in g.nodes:
        if start in comp:
            continue
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        frozen = frozenset(seen)
        for x in seen:
            comp[x] = frozen
    return comp


def _reachable(adjacency: dict, start: Node) -> set:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def components_strongly_connected(g: WeightedGraph) -> bool:
    """True when every weakly connected component is strongly connected."""
    fwd: dict = {v: [] for v in g.nodes}
    rev: dict = {v: [] for v in g.nodes}
    for u, _, v in g.edges:
        fwd[u].append(v)
        rev[v].append(u)
    comp = weak_components(g)
    checked = set()
    for v in g.nodes:
        c = comp[v]
        if c in checked:
            continue
        checked.add(c)
        if not (c <= _reachable(fwd, v) and c <= _reachable(rev, v)):
            return False
    return True


def _trace_pred_cycle(pred: dict, start: Node, n: int) -> Optional[list]:
    """Walk predecessor pointers from `start`; return a cycle in forward order."""
    order = {start: 0}
    walk = [start]
    cur = start
    while True:
        if pred.get(cur) is None:
            return None
        cur = pred[cur][0]
        if cur in order:
            chain = walk[order[cur]:]
            chain.reverse()
            return chain
        order[cur] = len(walk)
        walk.append(cur)
        if len(walk) > 2 * n + 2:
            return None


def _find_positive_cycle(nodes: tuple, edges: list) -> Optional[tuple]:
    """Maximizing Bellman-Ford; returns (cycle nodes, cycle weights) or None.

    All distances start at 0 (an implicit zero super-source), so any strict
    improvement still possible after n full rounds exposes a positive cycle
    through the predecessor graph.
    """
    n = len(nodes)
    dist = {v: 0 for v in nodes}
    pred: dict = {v: None for v in nodes}
    out: dict = {v: [] for v in nodes}
    for u, w, v in edges:
        out[u].append((w, v))
    active = set(nodes)
    for _ in range(n):
        if not active:
            return None
        next_active = set()
        for u in sorted(active):
            du = dist[u]
            for w, v in out[u]:
                if du + w > dist[v]:
                    dist[v] = du + w
                    pred[v] = (u, w)
                    next_active.add(v)
        active = next_active
    if not active:
        return None
    # still improving: chase a predecessor cycle from any active node
    for v in sorted(active):
        chain = _trace_pred_cycle(pred, v, n)
        if chain is None:
            continue
        weights = []
        for i, node in enumerate(chain):
            succ = chain[(i + 1) % len(chain)]
            weights.append(pred[succ][1])
        if sum(weights) > 0:
            return chain, weights
    raise RuntimeError("positive cycle detected but could not be traced")


def _critical_index(weights: list) -> int:
    """First rotation start whose prefix sums never dip below the start."""
    best = 0
    best_sum = 0
    prefix = 0
    for i, w in enumerate(weights):
        prefix += w
        if i + 1 < len(weights) and prefix < best_sum:
            best_sum = prefix
            best = i + 1
    return best


def strip_positive_cycles(g: WeightedGraph) -> tuple[WeightedGraph, frozenset]:
    """Delete outgoing edges of critical nodes until no positive cycle remains.

    Returns the stripped graph and the set X of critical nodes.  Each deleted
    node was critical on some positive cycle of the graph current at deletion
    time (hence of g itself).
    """
    edges = list(g.edges)
    critical: set = set()
    while True:
        found = _find_positive_cycle(g.nodes, edges)
        if found is None:
            break
        chain, weights = found
        node = chain[_critical_index(weights)]
        assert node not in critical
        critical.add(node)
        edges = [e for e in edges if e[0] != node]
    return WeightedGraph(g.nodes, tuple(sorted(edges))), frozenset(critical)


def _insert_pair(frontier: list, cand: Pair) -> bool:
    """Antichain insert under the componentwise order; True if it changed."""
    for p in frontier:
        if p[0] >= cand[0] and p[1] >= cand[1]:
            return False
    frontier[:] = [p for p in frontier if not (cand[0] >= p[0] and cand[1] >= p[1])]
    frontier.append(cand)
    return True


def relax_frontiers(g: WeightedGraph, source: Node) -> dict:
    """Pareto frontiers of (min prefix sum, weight) pairs over paths from source.

    Requires a graph without positive cycles; n - 1 sparse relaxation rounds
    then cover all simple paths, and every stored pair is realised by an
    actual path, so the result is exactly the simple-path optima.
    """
    frontier: dict = {v: [] for v in g.nodes}
    frontier[source] = [(0, 0)]
    out = g.out_edges()
    active = {source}
    for _ in range(max(len(g.nodes) - 1, 1)):
        if not active:
            break
        next_active = set()
        for u in sorted(active):
            for w, v in out[u]:
                for pair in list(frontier[u]):
                    if _insert_pair(frontier[v], extend(pair, w)):
                        next_active.add(v)
        active = next_active
    return {v: frozenset(pairs) for v, pairs in frontier.items()}


@dataclass(frozen=True)
class SummaryBundle:
    """Stripped graph, critical nodes and weak components, shared per graph."""

    graph: WeightedGraph
    stripped: WeightedGraph
    critical: frozenset
    component: dict


def prepare(g: WeightedGraph) -> SummaryBundle:
    if not components_strongly_connected(g):
        raise ValueError("every weakly connected component must be strongly connected")
    stripped, critical = strip_positive_cycles(g)
    return SummaryBundle(g, stripped, critical, weak_components(g))


def summaries_from(bundle: SummaryBundle, source: Node) -> tuple[dict, float]:
    """Summary row gamma(source, .) and delta(source) from a prepared bundle."""
    frontier = relax_frontiers(bundle.stripped, source)
    delta = NEG_INF
    for x in bundle.critical:
        for m, _ in frontier[x]:
            if m > delta:
                delta = m
    comp = bundle.component[source]
    gamma: dict = {}
    for v in bundle.graph.nodes:
        if v not in comp:
            gamma[v] = UNREACHABLE
            continue
        pairs = frontier[v]
        best = max(pairs) if pairs else BOTTOM
        if best[0] <= delta and delta > NEG_INF:
            gamma[v] = SummaryValue(delta, OMEGA)
        elif best[0] > NEG_INF:
            gamma[v] = SummaryValue(best[0], best[1])
        else:
            gamma[v] = UNREACHABLE
    return gamma, delta


def summaries(g: WeightedGraph, source: Node) -> tuple[dict, float]:
    """One-shot variant of `summaries_from` for a single source."""
    return summaries_from(prepare(g), source)
