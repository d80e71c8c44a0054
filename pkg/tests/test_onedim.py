"""Single-counter decisions: layer graphs, cover, coset reachability, reach1d."""

import pytest

from pdvass.explorer import Bounds, Reached, Target, bounded_reach, start_configuration
from pdvass.generators import gen_random
from pdvass.graphsum import NEG_INF, OMEGA, SummaryValue, UNREACHABLE
from pdvass.model import (
    INTERNAL,
    Machine,
    Transition,
    bidirected_closure,
    machine_from_transitions,
    pop,
    push,
)
from pdvass.onedim import (
    SummaryTable,
    build_layer_graph,
    coset_add,
    coset_join,
    coset_member,
    coset_shift,
    cover,
    extract_table,
    reach1d,
    reach1d_conjuncts,
    saturate_summaries,
    state_node,
    summary_chain,
    summary_leq,
    table_leq,
    zreach,
    zreach_cosets,
)


def closed(*transitions: Transition, extra_states=()) -> Machine:
    return bidirected_closure(machine_from_transitions(1, transitions, extra_states))


# Push to q, then pump there; q is only reachable with the pushed symbol stuck
# on the stack, so it can never be covered with an empty stack.
M1 = closed(
    Transition("p", (0,), push("a"), "q"),
    Transition("q", (1,), INTERNAL, "q"),
)


def test_level_zero_graph_has_only_bare_layer():
    g = build_layer_graph(M1, None)
    assert set(g.nodes) == {state_node("p", ""), state_node("q", "")}
    assert set(g.edges) == {
        (state_node("q", ""), 1, state_node("q", "")),
        (state_node("q", ""), -1, state_node("q", "")),
    }


def test_level_zero_table():
    t = extract_table(M1, build_layer_graph(M1, None), 0)
    assert t.gamma[("p", "p")] == SummaryValue(0, 0)
    assert t.gamma[("q", "q")] == SummaryValue(0, OMEGA)
    assert t.gamma[("p", "q")] == UNREACHABLE
    assert t.delta["p"] == NEG_INF
    assert t.delta["q"] == 0


def test_level_one_graph_structure():
    t0 = extract_table(M1, build_layer_graph(M1, None), 0)
    g1 = build_layer_graph(M1, t0)
    edges = set(g1.edges)
    # stack transitions connect the bare layer with the symbol layer
    assert (state_node("p", ""), 0, state_node("q", "a")) in edges
    assert (state_node("q", "a"), 0, state_node("p", "")) in edges
    # internal pump loop is replicated on every layer
    for layer in ("", "a"):
        assert (state_node("q", layer), 1, state_node("q", layer)) in edges
        assert (state_node("q", layer), -1, state_node("q", layer)) in edges
        # delta gadget for q replays its +1 pump one layer up
        assert (state_node("q", layer), 0, ("d", "q", layer)) in edges
        assert (("d", "q", layer), 1, state_node("q", layer)) in edges
        # summary gadget for the reachable pair (q, q) = (0, omega)
        assert (state_node("q", layer), 0, ("g", "q", "q", layer)) in edges
        assert (("g", "q", "q", layer), 0, state_node("q", layer)) in edges
    # no pump at p on level 0, and (p, q) was unreachable: no gadgets for them
    assert not any(n[:2] == ("d", "p") for n in g1.nodes)
    assert not any(n[:3] == ("g", "p", "q") for n in g1.nodes)


def test_saturation_on_pushed_pump():
    chain = summary_chain(M1)
    final = chain[-1]
    assert final.level == len(chain) - 1
    assert final.level <= 3
    # the level-1 graph lets p borrow q's pump through the pushed symbol
    assert final.gamma[("p", "p")] == SummaryValue(0, OMEGA)
    assert final.delta["p"] == 0
    assert final.gamma[("p", "q")] == UNREACHABLE
    assert final.gamma[("q", "p")] == UNREACHABLE
    for lo, hi in zip(chain, chain[1:]):
        assert table_leq(lo, hi)


def test_cover_on_pushed_pump():
    assert cover(M1, "p", "p")
    assert not cover(M1, "p", "q")
    assert not cover(M1, "q", "p")


def test_cover_counter_dip():
    drop = Transition("p", (-1,), INTERNAL, "q")
    m = closed(drop)
    assert not cover(m, "p", "q")
    assert saturate_summaries(m).gamma[("p", "q")] == SummaryValue(-1, -1)
    with_pump = closed(drop, Transition("p", (1,), INTERNAL, "p"))
    assert cover(with_pump, "p", "q")


def test_cover_rejects_bad_inputs():
    unseparated = closed(Transition("p", (1,), push("a"), "q"))
    with pytest.raises(ValueError):
        cover(unseparated, "p", "q")
    lopsided = machine_from_transitions(1, [Transition("p", (1,), INTERNAL, "q")])
    with pytest.raises(ValueError):
        cover(lopsided, "p", "q")
    two_dim = bidirected_closure(machine_from_transitions(2, [Transition("p", (1, 0), INTERNAL, "q")]))
    with pytest.raises(ValueError):
        cover(two_dim, "p", "q")


def test_summary_order():
    assert summary_leq(UNREACHABLE, SummaryValue(-3, -3))
    assert summary_leq(SummaryValue(-3, 5), SummaryValue(-1, -1))
    assert summary_leq(SummaryValue(-1, 2), SummaryValue(-1, OMEGA))
    assert not summary_leq(SummaryValue(0, 0), SummaryValue(-1, OMEGA))
    assert not summary_leq(SummaryValue(-1, OMEGA), SummaryValue(-1, 2))


def test_coset_algebra():
    assert coset_join(None, (3, 0)) == (3, 0)
    assert coset_join((2, 0), (5, 0)) == (2, 3)
    assert coset_join((1, 4), (3, 4)) == (1, 2)
    assert coset_add((1, 4), (2, 6)) == (1, 2)
    assert coset_shift((1, 3), -4) == (0, 3)
    assert coset_member((1, 3), 7) and not coset_member((1, 3), 6)
    assert coset_member((4, 0), 4) and not coset_member((4, 0), 0)
    assert not coset_member(None, 0)


def test_zreach_parity():
    jump = Transition("p", (2,), INTERNAL, "q")
    m = closed(jump)
    assert zreach_cosets(m)[("p", "q")] == (2, 0)
    assert not zreach(m, "p", "q")
    odd = closed(jump, Transition("p", (1,), INTERNAL, "p"))
    assert zreach_cosets(odd)[("p", "q")] == (0, 1)
    assert zreach(odd, "p", "q")


def test_zreach_stack_effects():
    # push +3 against pop +2 gives round trips of 5, 0 and -5: the coset 5Z
    m = closed(
        Transition("p", (3,), push("a"), "q"),
        Transition("q", (2,), pop("a"), "p"),
    )
    cosets = zreach_cosets(m)
    assert cosets[("p", "p")] == (0, 5)
    # from an empty stack q can only pop, so it is stuck
    assert cosets[("q", "q")] == (0, 0)
    # and every p-to-q walk pushes once more than it pops
    assert ("p", "q") not in cosets
    assert zreach(m, "p", "p")

    bridged = closed(
        Transition("p", (3,), push("a"), "q"),
        Transition("q", (2,), pop("a"), "p"),
        Transition("p", (1,), INTERNAL, "q"),
    )
    assert zreach_cosets(bridged)[("p", "q")] == (1, 5)
    assert not zreach(bridged, "p", "q")


def test_zreach_needs_balanced_stack():
    cosets = zreach_cosets(M1)
    assert ("p", "q") not in cosets
    assert not zreach(M1, "p", "q")


def test_reach1d_on_pushed_pump():
    assert reach1d(M1, "p", "p")
    assert not reach1d(M1, "p", "q")
    assert reach1d_conjuncts(M1, "p", "q") == (False, False, False)


def test_reach1d_conjuncts_fail_independently():
    forward_only = closed(
        Transition("p", (-1,), INTERNAL, "q"),
        Transition("q", (1,), INTERNAL, "q"),
    )
    assert reach1d_conjuncts(forward_only, "p", "q") == (False, True, True)

    backward_only = closed(
        Transition("p", (1,), INTERNAL, "q"),
        Transition("p", (1,), INTERNAL, "p"),
    )
    assert reach1d_conjuncts(backward_only, "p", "q") == (True, False, True)

    parity_only = closed(
        Transition("p", (1,), INTERNAL, "q"),
        Transition("p", (2,), INTERNAL, "p"),
        Transition("q", (2,), INTERNAL, "q"),
    )
    assert reach1d_conjuncts(parity_only, "p", "q") == (True, True, False)

    all_three = closed(
        Transition("p", (1,), INTERNAL, "q"),
        Transition("p", (1,), INTERNAL, "p"),
        Transition("q", (1,), INTERNAL, "q"),
    )
    assert reach1d_conjuncts(all_three, "p", "q") == (True, True, True)
    assert reach1d(all_three, "p", "q")


def _explorer_verdict(m: Machine, source: str, target: str, bounds: Bounds):
    goal = Target(state=target, counter_eq=(0,) * m.dimension, stack_empty=True)
    return bounded_reach(m, start_configuration(m, source), goal, bounds)


def test_reach1d_agrees_with_explorer_on_random_machines():
    bounds = Bounds(counter_max=24, stack_max=8, node_max=80_000)
    reachable = 0
    for seed in range(60):
        m = gen_random(seed, n_states=3, n_symbols=1, n_transitions=5, max_effect=2)
        verdict = reach1d(m, "s0", "s1")
        outcome = _explorer_verdict(m, "s0", "s1", bounds)
        if isinstance(outcome, Reached):
            assert verdict, f"seed {seed}: explorer found a run but reach1d says no"
            reachable += 1
        elif verdict:
            retry = _explorer_verdict(m, "s0", "s1", bounds.doubled())
            assert isinstance(retry, Reached), f"seed {seed}: reach1d says yes, explorer cannot confirm"
            reachable += 1
    assert 5 <= reachable <= 55  # the family must exercise both verdicts
