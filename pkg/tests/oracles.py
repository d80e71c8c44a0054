"""Independent reference computations used to validate the implementation.

Everything here is deliberately written against different algorithmic ideas
than the package itself: exhaustive state-space enumeration, brute-force path
and cycle listing, and bounded rewriting closures.  Slow but obviously
correct at test scale.
"""

from __future__ import annotations

from collections import deque

from pdvass.graphsum import NEG_INF, OMEGA, WeightedGraph

TOP = "top"


def dp_summary(g: WeightedGraph, source, m_floor: int = -25, w_cap: int = 16):
    """Exhaustive (node, min, weight) reachability with saturation at w_cap.

    Weights beyond w_cap are collapsed to a saturated marker: any path that
    runs past the cap must have traversed a positive-weight cycle (the cap
    exceeds every simple-path weight), so its weight is pumpable at unchanged
    minimum.  Returns (gamma, delta) with gamma mapping nodes to (a, b).
    """
    max_abs = max((abs(w) for _, w, _ in g.edges), default=0)
    assert w_cap > (len(g.nodes) - 1) * max_abs, "weight cap must clear simple paths"
    assert m_floor < -(len(g.nodes) - 1) * max_abs, "min floor must clear simple paths"
    out = {v: [] for v in g.nodes}
    for u, w, v in g.edges:
        out[u].append((w, v))
    start = (source, 0, 0)
    seen = {start}
    queue = deque([start])
    while queue:
        node, m, w = queue.popleft()
        for c, v in out[node]:
            if w == TOP:
                state = (v, m, TOP)
            else:
                val = w + c
                if val > w_cap:
                    state = (v, m, TOP)
                else:
                    m2 = min(m, val)
                    if m2 < m_floor:
                        continue
                    state = (v, m2, val)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    per_node: dict = {v: [] for v in g.nodes}
    for node, m, w in seen:
        per_node[node].append((m, w))
    gamma = {}
    for v in g.nodes:
        pairs = per_node[v]
        if not pairs:
            gamma[v] = (NEG_INF, NEG_INF)
            continue
        a = max(m for m, _ in pairs)
        at_a = [w for m, w in pairs if m == a]
        b = OMEGA if TOP in at_a else max(at_a)
        gamma[v] = (a, b)
    delta = NEG_INF
    for m, w in per_node[source]:
        if w == TOP or (w != TOP and w > 0):
            delta = max(delta, m)
    return gamma, delta


def simple_paths_pairs(g: WeightedGraph, source):
    """Pareto-maximal (min prefix sum, weight) pairs over simple paths."""
    out = {v: [] for v in g.nodes}
    for u, w, v in g.edges:
        out[u].append((w, v))
    found: dict = {v: set() for v in g.nodes}
    found[source].add((0, 0))

    def walk(node, visited, m, w):
        for c, v in out[node]:
            if v in visited:
                continue
            w2 = w + c
            found[v].add((min(m, w2), w2))
            walk(v, visited | {v}, min(m, w2), w2)

    walk(source, {source}, 0, 0)
    return {v: pareto(found[v]) for v in g.nodes}


def pareto(pairs) -> frozenset:
    keep = []
    for p in pairs:
        if any(q != p and q[0] >= p[0] and q[1] >= p[1] for q in pairs):
            continue
        keep.append(p)
    return frozenset(keep)


def simple_cycles(g: WeightedGraph):
    """All simple cycles as (node list, weight list), one rotation each."""
    out = {v: [] for v in g.nodes}
    for u, w, v in g.edges:
        out[u].append((w, v))
    order = {v: i for i, v in enumerate(g.nodes)}
    cycles = []

    def walk(root, node, path_nodes, path_weights):
        for c, v in out[node]:
            if v == root:
                cycles.append((list(path_nodes), path_weights + [c]))
            elif v not in path_nodes and order[v] > order[root]:
                walk(root, v, path_nodes + [v], path_weights + [c])

    for root in g.nodes:
        walk(root, root, [root], [])
    return cycles


def rewriting_closure(pairs, dim: int, norm_cap: int):
    """Equivalence classes of vectors of max-norm <= norm_cap under the pairs.

    Applies every generator in both directions wherever it fits, staying
    inside the norm box; classic congruence-closure by union-find.
    """
    import itertools

    vectors = [tuple(v) for v in itertools.product(range(norm_cap + 1), repeat=dim)]
    parent = {v: v for v in vectors}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    moves = []
    for u, w in pairs:
        moves.append((tuple(u), tuple(w)))
        moves.append((tuple(w), tuple(u)))
    for v in vectors:
        for u, w in moves:
            if all(a >= b for a, b in zip(v, u)):
                v2 = tuple(a - b + c for a, b, c in zip(v, u, w))
                if all(0 <= x <= norm_cap for x in v2):
                    union(v, v2)
    return find
