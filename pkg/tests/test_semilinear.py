"""Semilinear operations against brute-force enumeration over small boxes."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdvass.semilinear import (
    LinearSet,
    SemilinearSet,
    compose,
    format_semilinear,
    intersect_upset,
    linear_member,
    member,
    parse_semilinear,
    prune_subsumed,
    split_pair,
    to_congruence_basis,
    translate,
    union,
)


def enumerate_box(s: SemilinearSet, box: int) -> set:
    """All members with every coordinate <= box (multiplicities are box-capped)."""
    out = set()
    for piece in s.pieces:
        k = len(piece.periods)
        for lam in itertools.product(range(box + 1), repeat=k):
            v = tuple(
                piece.base[r] + sum(p[r] * l for p, l in zip(piece.periods, lam))
                for r in range(s.arity)
            )
            if all(x <= box for x in v):
                out.add(v)
    return out


def sls(arity, *pieces):
    return SemilinearSet.make(arity, [LinearSet.make(b, ps) for b, ps in pieces])


def test_membership_examples():
    evens = sls(1, ((0,), [(2,)]))
    assert member(evens, (0,)) and member(evens, (8,))
    assert not member(evens, (3,))
    plane = sls(2, ((1, 0), [(1, 1), (0, 2)]))
    assert member(plane, (1, 0)) and member(plane, (3, 4))
    assert not member(plane, (0, 1))
    with pytest.raises(ValueError):
        member(evens, (1, 2))


def test_membership_matches_enumeration():
    s = sls(2, ((1, 2), [(2, 1), (1, 3)]), ((0, 0), [(5, 0)]))
    box = 12
    expected = enumerate_box(s, box)
    for v in itertools.product(range(box + 1), repeat=2):
        assert member(s, v) == (v in expected), v


def test_linear_set_canonicalization():
    a = LinearSet.make((1, 1), [(0, 0), (2, 1), (2, 1)])
    assert a.periods == ((2, 1),)
    with pytest.raises(ValueError):
        LinearSet.make((1,), [(-1,)])
    with pytest.raises(ValueError):
        LinearSet.make((-1,), [])


def test_union_and_translate():
    s = union(sls(1, ((0,), [(2,)])), sls(1, ((1,), [(2,)])))
    assert all(member(s, (n,)) for n in range(6))
    shifted = translate(sls(1, ((2,), [(3,)])), (-1,))
    assert member(shifted, (1,)) and member(shifted, (4,))
    with pytest.raises(ValueError):
        translate(sls(1, ((2,), [])), (-3,))


def test_intersect_upset_examples():
    evens = sls(1, ((0,), [(2,)]))
    above = intersect_upset(evens, (5,))
    assert [p.base for p in above.pieces] == [(6,)]
    assert member(above, (8,)) and not member(above, (4,))
    # corner below the base keeps the piece untouched
    assert intersect_upset(evens, (0,)) == evens


@settings(max_examples=40, deadline=None)
@given(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), max_size=2),
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
)
def test_intersect_upset_matches_enumeration(base, periods, corner):
    s = sls(2, (base, periods))
    cut = intersect_upset(s, corner)
    box = 10
    want = {v for v in enumerate_box(s, box) if all(a >= c for a, c in zip(v, corner))}
    got = enumerate_box(cut, box)
    # enumeration of the cut set can miss nothing inside the box
    assert got == want


def test_compose_shifts_add():
    # pairs (x, x+1) composed with pairs (x, x+2): relation (x, x+3)
    succ1 = sls(2, ((0, 1), [(1, 1)]))
    succ2 = sls(2, ((0, 2), [(1, 1)]))
    threes = compose(succ1, succ2)
    assert member(threes, (0, 3)) and member(threes, (4, 7))
    assert not member(threes, (0, 2))


def test_compose_requires_meeting_middles():
    left = sls(2, ((0, 5), []))
    right_hit = sls(2, ((5, 1), []))
    right_miss = sls(2, ((4, 1), []))
    assert member(compose(left, right_hit), (0, 1))
    assert compose(left, right_miss).is_empty


@settings(max_examples=25, deadline=None)
@given(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=2),
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=2),
)
def test_compose_matches_enumeration(b1, ps1, b2, ps2):
    s1 = sls(2, (b1, ps1))
    s2 = sls(2, (b2, ps2))
    composite = compose(s1, s2)
    box = 8
    pairs1 = enumerate_box(s1, box)
    pairs2 = enumerate_box(s2, box)
    want = {(x, y) for (x, z) in pairs1 for (z2, y) in pairs2 if z == z2}
    for x, y in want:
        assert member(composite, (x, y)), (x, y)
    # and everything claimed within the box really composes (middles may exceed
    # the box, so check with a taller middle enumeration)
    tall1 = enumerate_box(s1, 3 * box)
    tall2 = enumerate_box(s2, 3 * box)
    tall = {(x, y) for (x, z) in tall1 for (z2, y) in tall2 if z == z2}
    for v in enumerate_box(composite, box):
        assert v in tall, v


def test_congruence_basis_lists_base_and_period_shifts():
    s = sls(2, ((1, 2), [(1, 1)]))
    assert to_congruence_basis(s) == (((1,), (2,)), ((2,), (3,)))


def test_prune_subsumed():
    fat = LinearSet.make((0, 0), [(1, 0), (0, 1)])
    thin = LinearSet.make((2, 2), [(1, 0)])
    s = SemilinearSet.make(2, [fat, thin])
    assert prune_subsumed(s).pieces == (fat,)
    # equal-set duplicates collapse to one piece
    dup = SemilinearSet.make(1, [LinearSet.make((0,), [(1,)]), LinearSet.make((0,), [(1,), (2,)])])
    assert len(prune_subsumed(dup).pieces) == 1


def test_split_pair():
    assert split_pair((1, 2, 3, 4)) == ((1, 2), (3, 4))
    with pytest.raises(ValueError):
        split_pair((1, 2, 3))


def test_text_roundtrip():
    s = sls(2, ((1, 2), [(2, 1), (1, 3)]), ((4, 0), []))
    text = format_semilinear(s)
    assert parse_semilinear(text, 2) == s
    assert parse_semilinear("", 2).is_empty
    assert "1,2 | 1,3 ; 2,1" in text
    with pytest.raises(ValueError):
        parse_semilinear("1,2", 3)
