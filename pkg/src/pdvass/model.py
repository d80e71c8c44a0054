"""Core machine model: pushdown machines with counters, and their normal forms.

A machine couples a finite-state pushdown with a vector of integer counters.
Transitions carry a counter effect and a single stack operation (or none).
The module also hosts the stateless vector-addition view (`Pvas`) used by the
general-dimension decision procedure, plus the structural normalisations the
decision procedures rely on: bidirected closure, counter/stack separation,
alphabet binarisation, and the state-into-counters encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

Vector = tuple[int, ...]


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vec_geq(u: Vector, v: Vector) -> bool:
    return all(a >= b for a, b in zip(u, v))


def zero_vector(dim: int) -> Vector:
    return (0,) * dim


@dataclass(frozen=True, order=True)
class StackOp:
    """One stack operation: "internal" (no touch), "push" or "pop" of a symbol."""

    kind: str
    symbol: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in ("internal", "push", "pop"):
            raise ValueError(f"unknown stack operation kind: {self.kind!r}")
        if self.kind == "internal" and self.symbol is not None:
            raise ValueError("internal operations carry no symbol")
        if self.kind != "internal" and not self.symbol:
            raise ValueError(f"{self.kind} operation needs a symbol")

    def reversed(self) -> "StackOp":
        if self.kind == "push":
            return StackOp("pop", self.symbol)
        if self.kind == "pop":
            return StackOp("push", self.symbol)
        return self


INTERNAL = StackOp("internal")


def push(symbol: str) -> StackOp:
    return StackOp("push", symbol)


def pop(symbol: str) -> StackOp:
    return StackOp("pop", symbol)


@dataclass(frozen=True, order=True)
class Transition:
    source: str
    effect: Vector
    op: StackOp
    target: str

    def reversed(self) -> "Transition":
        return Transition(self.target, vec_neg(self.effect), self.op.reversed(), self.source)

    def sort_key(self):
        return (self.source, self.target, self.op.kind, self.op.symbol or "", self.effect)


@dataclass(frozen=True)
class Machine:
    """A pushdown machine with `dimension` integer counters.

    States, alphabet and transitions are kept in canonical sorted order so that
    machines compare and hash structurally; build instances via `Machine.make`.
    """

    dimension: int
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: tuple[Transition, ...]

    @staticmethod
    def make(
        dimension: int,
        states: Iterable[str],
        alphabet: Iterable[str],
        transitions: Iterable[Transition],
    ) -> "Machine":
        ts = tuple(sorted(set(transitions), key=Transition.sort_key))
        m = Machine(dimension, tuple(sorted(set(states))), tuple(sorted(set(alphabet))), ts)
        m.validate()
        return m

    def validate(self) -> None:
        if self.dimension < 0:
            raise ValueError("dimension must be non-negative")
        state_set = set(self.states)
        symbol_set = set(self.alphabet)
        for t in self.transitions:
            if t.source not in state_set or t.target not in state_set:
                raise ValueError(f"transition {t} references undeclared state")
            if len(t.effect) != self.dimension:
                raise ValueError(f"transition {t} has effect of wrong arity")
            if t.op.kind != "internal" and t.op.symbol not in symbol_set:
                raise ValueError(f"transition {t} references undeclared stack symbol")

    def with_transitions(self, transitions: Iterable[Transition]) -> "Machine":
        return Machine.make(self.dimension, self.states, self.alphabet, transitions)


def machine_from_transitions(
    dimension: int,
    transitions: Iterable[Transition],
    extra_states: Iterable[str] = (),
) -> Machine:
    """Machine.make with states and alphabet inferred from the transitions."""
    ts = tuple(transitions)
    states = {t.source for t in ts} | {t.target for t in ts} | set(extra_states)
    alphabet = {t.op.symbol for t in ts if t.op.symbol is not None}
    return Machine.make(dimension, states, alphabet, ts)


@dataclass(frozen=True)
class Configuration:
    state: str
    counters: Vector
    stack: tuple[str, ...]


def bidirected_closure(m: Machine) -> Machine:
    """Smallest superset of the transitions closed under reversal.

    Idempotent; the result of closing a closed machine is the machine itself.
    """
    ts = set(m.transitions)
    ts.update(t.reversed() for t in m.transitions)
    if len(ts) == len(m.transitions):
        return m
    return m.with_transitions(ts)


def check_bidirected(m: Machine) -> bool:
    ts = set(m.transitions)
    return all(t.reversed() in ts for t in ts)


def _fresh_prefix(taken: set[str], stem: str) -> str:
    prefix = stem
    while any(s.startswith(prefix) for s in taken):
        prefix = "_" + prefix
    return prefix


def separate_counter_stack(m: Machine) -> Machine:
    """Split transitions that both move a counter and touch the stack.

    Every offending transition gains a fresh intermediate state: the counter
    effect happens on the first leg, the stack operation on the second.  The
    input must be bidirected; only the canonical orientation of each reverse
    pair is split, closing the result restores the other orientation.  Already
    separated machines are returned unchanged.
    """
    if not check_bidirected(m):
        raise ValueError("separation requires a bidirected machine")
    offending = [
        t for t in m.transitions if t.op.kind != "internal" and any(t.effect)
    ]
    if not offending:
        return m
    canonical = set()
    for t in offending:
        r = t.reversed()
        canonical.add(min(t, r, key=Transition.sort_key))
    stem = _fresh_prefix(set(m.states), "sep")
    new_states = list(m.states)
    new_ts = [t for t in m.transitions if t not in offending]
    for i, t in enumerate(sorted(canonical, key=Transition.sort_key)):
        mid = f"{stem}{i}"
        new_states.append(mid)
        new_ts.append(Transition(t.source, t.effect, INTERNAL, mid))
        new_ts.append(Transition(mid, zero_vector(m.dimension), t.op, t.target))
    return bidirected_closure(Machine.make(m.dimension, new_states, m.alphabet, new_ts))


def is_separated(m: Machine) -> bool:
    return all(t.op.kind == "internal" or not any(t.effect) for t in m.transitions)


def binarize_alphabet(m: Machine) -> Machine:
    """Re-encode a stack alphabet of size k > 2 over two symbols.

    The i-th symbol (1-based, in sorted order) becomes the code word
    a b^i a b^(k-i) a, pushed letter by letter through a chain of fresh
    states.  Machines with at most two stack symbols are returned unchanged.
    The input must be bidirected; the output is closed again.
    """
    k = len(m.alphabet)
    if k <= 2:
        return m
    if not check_bidirected(m):
        raise ValueError("binarisation requires a bidirected machine")
    codes = {
        sym: ("a",) + ("b",) * (i + 1) + ("a",) + ("b",) * (k - i - 1) + ("a",)
        for i, sym in enumerate(m.alphabet)
    }
    stem = _fresh_prefix(set(m.states), "bin")
    new_states = list(m.states)
    new_ts: list[Transition] = []
    canonical = set()
    for t in m.transitions:
        if t.op.kind == "internal":
            new_ts.append(t)
        else:
            canonical.add(min(t, t.reversed(), key=Transition.sort_key))
    for i, t in enumerate(sorted(canonical, key=Transition.sort_key)):
        word = codes[t.op.symbol]
        if t.op.kind == "pop":
            letters = [pop(c) for c in reversed(word)]
        else:
            letters = [push(c) for c in word]
        chain = [t.source]
        for j in range(len(letters) - 1):
            mid = f"{stem}{i}_{j}"
            new_states.append(mid)
            chain.append(mid)
        chain.append(t.target)
        for j, op in enumerate(letters):
            effect = t.effect if j == 0 else zero_vector(m.dimension)
            new_ts.append(Transition(chain[j], effect, op, chain[j + 1]))
    return bidirected_closure(Machine.make(m.dimension, new_states, ("a", "b"), new_ts))


# ---------------------------------------------------------------------------
# Stateless vector addition systems with a stack.


@dataclass(frozen=True, order=True)
class PvasTransition:
    """Subtract `take`, add `put`, perform `op`; enabled iff counters >= take."""

    take: Vector
    put: Vector
    op: StackOp

    def reversed(self) -> "PvasTransition":
        return PvasTransition(self.put, self.take, self.op.reversed())


@dataclass(frozen=True)
class Pvas:
    dimension: int
    alphabet: tuple[str, ...]
    transitions: tuple[PvasTransition, ...]

    @staticmethod
    def make(
        dimension: int, alphabet: Iterable[str], transitions: Iterable[PvasTransition]
    ) -> "Pvas":
        p = Pvas(dimension, tuple(sorted(set(alphabet))), tuple(sorted(set(transitions))))
        for t in p.transitions:
            if len(t.take) != dimension or len(t.put) != dimension:
                raise ValueError(f"transition {t} has wrong arity")
            if any(a < 0 for a in t.take + t.put):
                raise ValueError(f"transition {t} has negative entries")
            if t.op.kind != "internal" and t.op.symbol not in p.alphabet:
                raise ValueError(f"transition {t} references undeclared stack symbol")
        return p


def pvas_bidirected_closure(p: Pvas) -> Pvas:
    ts = set(p.transitions)
    ts.update(t.reversed() for t in p.transitions)
    if len(ts) == len(p.transitions):
        return p
    return Pvas.make(p.dimension, p.alphabet, ts)


def pvas_check_bidirected(p: Pvas) -> bool:
    ts = set(p.transitions)
    return all(t.reversed() in ts for t in ts)


@dataclass(frozen=True)
class PvasEncoding:
    """Result of compiling machine states into two extra counters.

    A machine in state number i (1-based among n states) corresponds to the
    stateless system holding (i, n - i) in the two trailing counters; the pair
    always sums to n, so at most one state is encoded at a time.
    """

    pvas: Pvas
    state_index: dict[str, int] = field(compare=False)
    state_count: int = 0

    def encode(self, state: str, counters: Vector) -> Vector:
        i = self.state_index[state]
        return tuple(counters) + (i, self.state_count - i)


def pvass_to_pvas(m: Machine) -> PvasEncoding:
    """Fold machine states into counters, preserving empty-stack reachability."""
    n = len(m.states)
    index = {s: i + 1 for i, s in enumerate(m.states)}
    d = m.dimension
    ts = []
    for t in m.transitions:
        take = tuple(max(-w, 0) for w in t.effect) + (index[t.source], n - index[t.source])
        put = tuple(max(w, 0) for w in t.effect) + (index[t.target], n - index[t.target])
        ts.append(PvasTransition(take, put, t.op))
    return PvasEncoding(Pvas.make(d + 2, m.alphabet, ts), index, n)


def pvas_to_machine(p: Pvas) -> tuple[Machine, str]:
    """View a stateless system as a two-legged machine for the explorer.

    Each transition becomes subtract-then-add through a private mid state, so
    the machine enables a step exactly when the counters dominate `take`.
    Returns the machine and its single public state.
    """
    main = "run"
    states = [main]
    ts = []
    for i, t in enumerate(sorted(p.transitions)):
        mid = f"t{i}"
        states.append(mid)
        ts.append(Transition(main, vec_neg(t.take), INTERNAL, mid))
        ts.append(Transition(mid, t.put, t.op, main))
    return Machine.make(p.dimension, states, p.alphabet, ts), main
