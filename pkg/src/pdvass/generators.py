"""Seeded instance generators.

Two families: `gen_random` draws small bidirected machines for regression
sweeps, and `gen_valley` builds the witness family whose crossing from source
to target forces the counter up to 2**bits (and the stack with it) before
coming back down.  The valley machine carries its own replayable witness, so
tests can measure the exact stack height a successful run needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (
    INTERNAL,
    Machine,
    Transition,
    bidirected_closure,
    machine_from_transitions,
    pop,
    push,
)


def gen_random(
    seed: int,
    *,
    dimension: int = 1,
    n_states: int = 4,
    n_symbols: int = 2,
    n_transitions: int = 6,
    max_effect: int = 2,
    op_effects: bool = True,
) -> Machine:
    """A small bidirected machine drawn deterministically from the seed.

    Stack operations carry counter effects when `op_effects` is set, so the
    output generally needs counter/stack separation before summary-based
    procedures apply.
    """
    rng = random.Random(f"pdvass-random:{seed}")
    states = [f"s{i}" for i in range(n_states)]
    symbols = [f"g{i}" for i in range(n_symbols)]
    forward = []
    for _ in range(n_transitions):
        source = rng.choice(states)
        target = rng.choice(states)
        roll = rng.random()
        if n_symbols == 0 or roll < 0.5:
            op = INTERNAL
        elif roll < 0.75:
            op = push(rng.choice(symbols))
        else:
            op = pop(rng.choice(symbols))
        if op.kind == "internal" or op_effects:
            effect = tuple(rng.randint(-max_effect, max_effect) for _ in range(dimension))
        else:
            effect = (0,) * dimension
        forward.append(Transition(source, effect, op, target))
    m = Machine.make(dimension, states, symbols, forward)
    return bidirected_closure(m)


@dataclass(frozen=True)
class ValleyInstance:
    """The valley machine plus a known witness run from source to target."""

    bits: int
    machine: Machine
    source: str
    target: str
    witness: tuple[Transition, ...]
    max_height: int  # stack height the witness needs: 2**bits + bits


def gen_valley(bits: int) -> ValleyInstance:
    """Crossing requires pumping the counter (and stack) to 2**bits.

    The only route from p to q is a marker-guided descent that decrements the
    counter exactly 2**bits times, so a run from (p, 0, empty) must first loop
    at p, gaining +1 per pushed pump symbol.  At q the pump symbols are shed
    by effect-free pops.  Bidirectedness adds the reverse route (q back to p
    with +2**bits), which keeps the machine's two ends mutually coverable.
    """
    if bits < 1:
        raise ValueError("bits must be at least 1")
    pump = "a"

    def dc(i: int) -> str:
        return "p" if i == bits else f"dc{i}"

    def dr(i: int) -> str:
        return "q" if i == bits else f"dr{i}"

    pump_push = Transition("p", (0,), push(pump), "p1")
    pump_inc = Transition("p1", (1,), INTERNAL, "p")
    shed = Transition("q", (0,), pop(pump), "q")
    leaf = Transition(dc(0), (-1,), INTERNAL, dr(0))
    push_x = {i: Transition(dc(i), (0,), push("x"), dc(i - 1)) for i in range(1, bits + 1)}
    pop_x = {i: Transition(dr(i - 1), (0,), pop("x"), f"dt{i}") for i in range(1, bits + 1)}
    push_y = {i: Transition(f"dt{i}", (0,), push("y"), dc(i - 1)) for i in range(1, bits + 1)}
    pop_y = {i: Transition(dr(i - 1), (0,), pop("y"), dr(i)) for i in range(1, bits + 1)}
    forward = [pump_push, pump_inc, shed, leaf]
    forward += [*push_x.values(), *pop_x.values(), *push_y.values(), *pop_y.values()]
    machine = bidirected_closure(machine_from_transitions(1, forward))

    def descend(i: int) -> list[Transition]:
        if i == 0:
            return [leaf]
        return [push_x[i], *descend(i - 1), pop_x[i], push_y[i], *descend(i - 1), pop_y[i]]

    witness = [pump_push, pump_inc] * (2 ** bits) + descend(bits) + [shed] * (2 ** bits)
    return ValleyInstance(
        bits=bits,
        machine=machine,
        source="p",
        target="q",
        witness=tuple(witness),
        max_height=2 ** bits + bits,
    )
