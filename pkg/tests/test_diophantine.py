"""Minimal-solution solver against brute-force enumeration over boxes."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdvass.diophantine import feasible, hilbert_homogeneous, minimal_inhomogeneous, pottier_bound


def dot(row, x):
    return sum(a * b for a, b in zip(row, x))


def minimal_elements(vectors):
    out = []
    for v in sorted(vectors, key=sum):
        if not any(all(ui <= vi for ui, vi in zip(u, v)) for u in out):
            out.append(v)
    return set(out)


def brute_solutions(rows, n, box, rhs=None, drop_zero=False):
    rhs = rhs if rhs is not None else (0,) * len(rows)
    sols = set()
    for x in itertools.product(range(box + 1), repeat=n):
        if all(dot(row, x) == b for row, b in zip(rows, rhs)):
            sols.add(x)
    if drop_zero:
        sols.discard((0,) * n)
    return sols


def test_textbook_homogeneous():
    assert set(hilbert_homogeneous([[1, 1, -2]])) == {(1, 1, 1), (2, 0, 1), (0, 2, 1)}
    assert hilbert_homogeneous([[2, -3]]) == ((3, 2),)
    assert hilbert_homogeneous([[1, -1]]) == ((1, 1),)
    assert hilbert_homogeneous([[1, 1]]) == ()  # positive row: only the zero solution


def test_no_constraints_yields_units():
    assert set(hilbert_homogeneous([], n_columns=3)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_zero_width():
    assert hilbert_homogeneous([[]], n_columns=0) == ()
    assert minimal_inhomogeneous([[]], [0], n_columns=0) == ((),)
    assert feasible([[]], [0], n_columns=0)
    assert not feasible([[]], [3], n_columns=0)


def test_textbook_inhomogeneous():
    assert set(minimal_inhomogeneous([[1, 2]], [5])) == {(5, 0), (3, 1), (1, 2)}
    assert minimal_inhomogeneous([[1, 1]], [0]) == ((0, 0),)
    assert minimal_inhomogeneous([[2]], [3]) == ()
    assert feasible([[1, 2]], [5])
    assert not feasible([[2]], [3])
    assert not feasible([[1, 1]], [-2])


def test_outputs_are_incomparable_solutions():
    rows = [[3, -5, 1], [0, 2, -4]]
    sols = hilbert_homogeneous(rows)
    assert sols
    for x in sols:
        assert any(x)
        assert all(dot(row, x) == 0 for row in rows)
    for x in sols:
        for y in sols:
            if x != y:
                assert not all(a <= b for a, b in zip(x, y))


matrix_strategy = st.integers(min_value=1, max_value=2).flatmap(
    lambda m: st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-3, max_value=3), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(matrix_strategy)
def test_homogeneous_matches_bruteforce_in_box(rows):
    n = len(rows[0])
    box = 6
    got = {x for x in hilbert_homogeneous(rows) if max(x) <= box}
    want = minimal_elements(brute_solutions(rows, n, box, drop_zero=True))
    assert got == want


@settings(max_examples=60, deadline=None)
@given(matrix_strategy, st.lists(st.integers(min_value=-4, max_value=4), min_size=2, max_size=2))
def test_inhomogeneous_matches_bruteforce_in_box(rows, rhs_raw):
    n = len(rows[0])
    rhs = tuple(rhs_raw[: len(rows)]) + (0,) * max(0, len(rows) - 2)
    box = 6
    got = {x for x in minimal_inhomogeneous(rows, rhs) if not x or max(x) <= box}
    inbox = brute_solutions(rows, n, box, rhs=rhs)
    want = minimal_elements(inbox)
    assert got == want
    assert feasible(rows, rhs) == bool(minimal_inhomogeneous(rows, rhs))


@settings(max_examples=60, deadline=None)
@given(matrix_strategy)
def test_minimal_solutions_respect_pottier_bound(rows):
    bound = pottier_bound(rows)
    for x in hilbert_homogeneous(rows):
        assert max(x) <= bound


def test_pottier_bound_value():
    # two rows, worst column 1-norm is 3: (1 + 3) ** 2
    assert pottier_bound([[1, 2], [2, -1]]) == 16
    assert pottier_bound([], n_columns=4) == 1
