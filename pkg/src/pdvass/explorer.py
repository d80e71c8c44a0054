"""Bounded breadth-first exploration of machine configuration spaces.

The explorer is the ground-truth oracle used throughout the test suite: it
enumerates configurations within explicit counter, stack and node bounds and
returns either a shortest witness run or the statistics of an exhausted
search.  Exploration order is canonical (sorted transitions, FIFO frontier),
so results are deterministic for a given machine and bounds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .model import Configuration, Machine, Transition, Vector

NAT = "nat"
INT = "int"


@dataclass(frozen=True)
class Bounds:
    counter_max: int = 32
    stack_max: int = 16
    node_max: int = 200_000
    mode: str = NAT

    def __post_init__(self) -> None:
        if self.mode not in (NAT, INT):
            raise ValueError(f"unknown mode {self.mode!r}")

    def doubled(self) -> "Bounds":
        return Bounds(self.counter_max * 2, self.stack_max * 2, self.node_max * 2, self.mode)


@dataclass(frozen=True)
class Target:
    """Conjunction of constraints on a configuration; None means unconstrained."""

    state: Optional[str] = None
    counter_eq: Optional[Vector] = None
    counter_geq: Optional[Vector] = None
    stack_empty: Optional[bool] = None

    def matches(self, c: Configuration) -> bool:
        if self.state is not None and c.state != self.state:
            return False
        if self.counter_eq is not None and c.counters != self.counter_eq:
            return False
        if self.counter_geq is not None and not all(
            a >= b for a, b in zip(c.counters, self.counter_geq)
        ):
            return False
        if self.stack_empty is not None and (len(c.stack) == 0) != self.stack_empty:
            return False
        return True


@dataclass(frozen=True)
class ExploreStats:
    visited: int
    depth: int
    truncated: bool


@dataclass(frozen=True)
class Reached:
    witness: tuple[Transition, ...]


@dataclass(frozen=True)
class ExhaustedWithinBounds:
    stats: ExploreStats


Verdict = Union[Reached, ExhaustedWithinBounds]


def apply_transition(
    c: Configuration, t: Transition, bounds: Bounds
) -> Optional[Configuration]:
    """Successor of `c` under `t`, or None if disabled or out of bounds."""
    if c.state != t.source:
        return None
    counters = tuple(a + b for a, b in zip(c.counters, t.effect))
    if bounds.mode == NAT:
        if any(x < 0 or x > bounds.counter_max for x in counters):
            return None
    else:
        if any(abs(x) > bounds.counter_max for x in counters):
            return None
    if t.op.kind == "push":
        if len(c.stack) >= bounds.stack_max:
            return None
        stack = c.stack + (t.op.symbol,)
    elif t.op.kind == "pop":
        if not c.stack or c.stack[-1] != t.op.symbol:
            return None
        stack = c.stack[:-1]
    else:
        stack = c.stack
    return Configuration(t.target, counters, stack)


def bounded_reach(
    m: Machine, start: Configuration, target: Target, bounds: Bounds
) -> Verdict:
    """Breadth-first search for a target configuration; shortest witness wins."""
    if target.matches(start):
        return Reached(())
    seen = {start}
    queue = deque([(start, 0)])
    parent: dict[Configuration, tuple[Configuration, Transition]] = {}
    by_source: dict[str, list[Transition]] = {}
    for t in m.transitions:
        by_source.setdefault(t.source, []).append(t)
    depth_seen = 0
    truncated = False
    while queue:
        config, depth = queue.popleft()
        depth_seen = max(depth_seen, depth)
        for t in by_source.get(config.state, ()):
            succ = apply_transition(config, t, bounds)
            if succ is None or succ in seen:
                continue
            parent[succ] = (config, t)
            if target.matches(succ):
                witness = []
                node = succ
                while node in parent:
                    node, step = parent[node]
                    witness.append(step)
                witness.reverse()
                return Reached(tuple(witness))
            seen.add(succ)
            if len(seen) > bounds.node_max:
                truncated = True
                queue.clear()
                break
            queue.append((succ, depth + 1))
    return ExhaustedWithinBounds(ExploreStats(len(seen), depth_seen, truncated))


def replay(
    m: Machine, start: Configuration, witness: tuple[Transition, ...], mode: str = NAT
) -> Configuration:
    """Validate a run transition by transition; raises on any illegal step."""
    transition_set = set(m.transitions)
    c = start
    for i, t in enumerate(witness):
        if t not in transition_set:
            raise ValueError(f"step {i}: transition {t} not in machine")
        if c.state != t.source:
            raise ValueError(f"step {i}: expected state {t.source}, at {c.state}")
        counters = tuple(a + b for a, b in zip(c.counters, t.effect))
        if mode == NAT and any(x < 0 for x in counters):
            raise ValueError(f"step {i}: counter dips below zero")
        if t.op.kind == "push":
            stack = c.stack + (t.op.symbol,)
        elif t.op.kind == "pop":
            if not c.stack or c.stack[-1] != t.op.symbol:
                raise ValueError(f"step {i}: cannot pop {t.op.symbol!r}")
            stack = c.stack[:-1]
        else:
            stack = c.stack
        c = Configuration(t.target, counters, stack)
    return c


def start_configuration(m: Machine, state: str, counters: Optional[Vector] = None) -> Configuration:
    if counters is None:
        counters = (0,) * m.dimension
    return Configuration(state, tuple(counters), ())
