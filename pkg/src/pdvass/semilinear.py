"""Semilinear subsets of N^d: unions of linear pieces (base plus periods).

Everything is exact integer arithmetic on tuples.  The operations used by the
saturation loop are membership, intersection with an upward closure,
translation, union, and relational composition of subsets of N^(2d) viewed as
pairs.  Pieces stay canonically sorted so equal sets built the same way
compare equal syntactically; full semantic equality is not attempted here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .diophantine import feasible, hilbert_homogeneous, minimal_inhomogeneous
from .model import Vector, vec_add, vec_sub


@dataclass(frozen=True, order=True)
class LinearSet:
    base: Vector
    periods: tuple[Vector, ...]

    @staticmethod
    def make(base: Sequence[int], periods: Iterable[Sequence[int]]) -> "LinearSet":
        b = tuple(int(x) for x in base)
        ps = sorted({tuple(int(x) for x in p) for p in periods})
        for p in ps:
            if len(p) != len(b):
                raise ValueError("period arity differs from base arity")
            if any(x < 0 for x in p):
                raise ValueError("periods must be nonnegative")
        if any(x < 0 for x in b):
            raise ValueError("base must be nonnegative")
        return LinearSet(b, tuple(p for p in ps if any(p)))

    @property
    def arity(self) -> int:
        return len(self.base)


@dataclass(frozen=True)
class SemilinearSet:
    arity: int
    pieces: tuple[LinearSet, ...]

    @staticmethod
    def make(arity: int, pieces: Iterable[LinearSet]) -> "SemilinearSet":
        ps = tuple(sorted(set(pieces)))
        for piece in ps:
            if piece.arity != arity:
                raise ValueError("piece arity differs from set arity")
        return SemilinearSet(arity, ps)

    @property
    def is_empty(self) -> bool:
        return not self.pieces


def _period_rows(periods: Sequence[Vector], arity: int) -> tuple[Vector, ...]:
    return tuple(tuple(p[r] for p in periods) for r in range(arity))


def linear_member(piece: LinearSet, v: Sequence[int]) -> bool:
    diff = vec_sub(tuple(v), piece.base)
    if not piece.periods:
        return not any(diff)
    return feasible(_period_rows(piece.periods, piece.arity), diff, n_columns=len(piece.periods))


def member(s: SemilinearSet, v: Sequence[int]) -> bool:
    if len(tuple(v)) != s.arity:
        raise ValueError("vector arity differs from set arity")
    return any(linear_member(piece, v) for piece in s.pieces)


_GRID_VOLUME_CAP = 6_000_000


class _SpanGrid:
    """Boolean grid over [0, box] marking the sums of a growing direction set.

    Membership queries are array lookups; each direction propagates by or-ing
    shifted copies of the grid with doubling strides until nothing changes.
    """

    def __init__(self, box: Vector):
        self.box = box
        self.reach = np.zeros(tuple(x + 1 for x in box), dtype=bool)
        self.reach[(0,) * len(box)] = True
        self.dirs: list[Vector] = []

    def __contains__(self, v: Vector) -> bool:
        if any(x < 0 or x > b for x, b in zip(v, self.box)):
            return False
        return bool(self.reach[v])

    def _propagate(self, col: Vector) -> None:
        stride = col
        while all(s <= b for s, b in zip(stride, self.box)):
            dst = tuple(slice(s, None) for s in stride)
            src = tuple(slice(0, n - s) for s, n in zip(stride, self.reach.shape))
            self.reach[dst] |= self.reach[src]
            stride = tuple(2 * s for s in stride)

    def add(self, v: Vector) -> None:
        self.dirs.append(v)
        while True:
            before = int(self.reach.sum())
            for col in self.dirs:
                self._propagate(col)
            if int(self.reach.sum()) == before:
                return


def _make_grid(box: Vector) -> Optional[_SpanGrid]:
    volume = 1
    for x in box:
        volume *= x + 1
        if volume > _GRID_VOLUME_CAP:
            return None
    return _SpanGrid(box)


def _reduce_directions(dirs: Iterable[Vector], arity: int) -> tuple[Vector, ...]:
    """Minimal generating set of the monoid the directions generate.

    Ascending by total weight, a direction is redundant exactly when it is a
    sum of strictly smaller kept ones, which the grid answers by lookup; a
    feasibility solve per direction is the fallback when the grid would be
    too large.
    """
    vecs = sorted({tuple(v) for v in dirs if any(v)}, key=lambda v: (sum(v), v))
    if len(vecs) <= 1:
        return tuple(vecs)
    grid = _make_grid(tuple(max(v[i] for v in vecs) for i in range(arity)))
    if grid is None:
        kept_desc = list(vecs)
        for p in sorted(vecs, key=lambda q: (-sum(q), q)):
            rest = [q for q in kept_desc if q != p]
            if rest and feasible(_period_rows(tuple(rest), arity), p, n_columns=len(rest)):
                kept_desc = rest
        return tuple(sorted(kept_desc))
    kept: list[Vector] = []
    for v in vecs:
        if v in grid:
            continue
        kept.append(v)
        grid.add(v)
    return tuple(sorted(kept))


@lru_cache(maxsize=100_000)
def minimal_periods(piece: LinearSet) -> LinearSet:
    """Drop periods that are nonnegative combinations of the remaining ones.

    Same set, smaller description; composing thin pieces keeps the matching
    systems narrow.
    """
    return LinearSet(piece.base, _reduce_directions(piece.periods, piece.arity))


@lru_cache(maxsize=500_000)
def linear_covers(big: LinearSet, small: LinearSet) -> bool:
    """Syntactic inclusion: small's base and periods all live inside big."""
    if not linear_member(big, small.base):
        return False
    rows = _period_rows(big.periods, big.arity)
    return all(
        feasible(rows, p, n_columns=len(big.periods)) if big.periods else not any(p)
        for p in small.periods
    )


def prune_subsumed(s: SemilinearSet) -> SemilinearSet:
    kept: list[LinearSet] = []
    for piece in s.pieces:
        if not any(linear_covers(other, piece) for other in kept):
            kept = [other for other in kept if not linear_covers(piece, other)]
            kept.append(piece)
    return SemilinearSet.make(s.arity, kept)


def union(s1: SemilinearSet, s2: SemilinearSet) -> SemilinearSet:
    if s1.arity != s2.arity:
        raise ValueError("arity mismatch")
    return SemilinearSet.make(s1.arity, s1.pieces + s2.pieces)


def translate(s: SemilinearSet, delta: Sequence[int]) -> SemilinearSet:
    """Shift every piece by delta; bases must stay inside N^d."""
    delta = tuple(int(x) for x in delta)
    if len(delta) != s.arity:
        raise ValueError("arity mismatch")
    moved = []
    for piece in s.pieces:
        base = vec_add(piece.base, delta)
        if any(x < 0 for x in base):
            raise ValueError(f"translation pushes base {piece.base} below zero")
        moved.append(LinearSet.make(base, piece.periods))
    return SemilinearSet.make(s.arity, moved)


def intersect_upset(s: SemilinearSet, corner: Sequence[int]) -> SemilinearSet:
    """Intersection with the upward closure of corner: all v >= corner.

    Within one piece, the admissible period multiplicities form an upward
    closed set of N^k, so the intersection is the union, over minimal
    multiplicities, of the piece re-based at that point.  Minimality comes
    from the equality system "periods times lambda minus slack = corner minus
    base".
    """
    corner = tuple(int(x) for x in corner)
    if len(corner) != s.arity:
        raise ValueError("arity mismatch")
    out: list[LinearSet] = []
    for piece in s.pieces:
        gap = vec_sub(corner, piece.base)
        if all(g <= 0 for g in gap):
            out.append(piece)
            continue
        k = len(piece.periods)
        rows = tuple(
            tuple(p[r] for p in piece.periods) + tuple(-1 if j == r else 0 for j in range(s.arity))
            for r in range(s.arity)
        )
        for sol in minimal_inhomogeneous(rows, gap, n_columns=k + s.arity):
            lam = sol[:k]
            shift = tuple(sum(p[r] * l for p, l in zip(piece.periods, lam)) for r in range(s.arity))
            out.append(LinearSet.make(vec_add(piece.base, shift), piece.periods))
    return SemilinearSet.make(s.arity, out)


def split_pair(v: Vector) -> tuple[Vector, Vector]:
    if len(v) % 2:
        raise ValueError("pair vector must have even arity")
    half = len(v) // 2
    return v[:half], v[half:]


@lru_cache(maxsize=200_000)
def compose_pieces(p1: LinearSet, p2: LinearSet, d: int) -> tuple[LinearSet, ...]:
    b1x, b1y = split_pair(p1.base)
    b2x, b2y = split_pair(p2.base)
    lefts1 = [split_pair(p) for p in p1.periods]
    lefts2 = [split_pair(p) for p in p2.periods]
    k1, k2 = len(p1.periods), len(p2.periods)
    rows = tuple(
        tuple(py[r] for _, py in lefts1) + tuple(-qx[r] for qx, _ in lefts2) for r in range(d)
    )
    rhs = vec_sub(b2x, b1y)
    # middles cannot meet when a coordinate must move in a direction no
    # period provides; catching that here skips the solver entirely
    for r in range(d):
        if rhs[r] > 0 and not any(py[r] for _, py in lefts1):
            return ()
        if rhs[r] < 0 and not any(qx[r] for qx, _ in lefts2):
            return ()
    # solutions visible without search: a left period with no middle part, a
    # right period with no middle part, and matched slides of a period the
    # two pieces share
    zero = (0,) * d
    seeds = set()
    for i, (_, py) in enumerate(lefts1):
        if py == zero:
            seeds.add(tuple(1 if j == i else 0 for j in range(k1 + k2)))
    for i, (qx, _) in enumerate(lefts2):
        if qx == zero:
            seeds.add(tuple(1 if j == k1 + i else 0 for j in range(k1 + k2)))
    for i, (_, py) in enumerate(lefts1):
        if py == zero:
            continue
        for j, (qx, _) in enumerate(lefts2):
            if py == qx:
                seeds.add(tuple(1 if t in (i, k1 + j) else 0 for t in range(k1 + k2)))
    known = tuple(sorted(seeds))
    homogeneous = hilbert_homogeneous(rows, n_columns=k1 + k2, known=known)
    matches = minimal_inhomogeneous(rows, rhs, n_columns=k1 + k2, known=known)
    if not matches:
        return ()
    # project multiplicities onto outer halves in bulk: x side from the left
    # piece, z side from the right piece
    proj = np.array(
        [px + (0,) * d for px, _ in lefts1] + [(0,) * d + qy for _, qy in lefts2],
        dtype=np.int64,
    ).reshape(k1 + k2, 2 * d)
    return _assemble(homogeneous, matches, proj, b1x + b2y, d)


def _assemble(
    homogeneous: tuple[Vector, ...],
    matches: tuple[Vector, ...],
    proj: "np.ndarray",
    offset: Vector,
    d: int,
) -> tuple[LinearSet, ...]:
    hom_mat = np.array(homogeneous, dtype=np.int64).reshape(len(homogeneous), proj.shape[0])
    periods = {tuple(int(x) for x in row) for row in hom_mat @ proj}
    dirs = _reduce_directions(periods, 2 * d)
    match_mat = np.array(matches, dtype=np.int64).reshape(len(matches), proj.shape[0])
    bases = {
        tuple(int(x) for x in row)
        for row in match_mat @ proj + np.array(offset, dtype=np.int64)
    }
    return _emit(bases, dirs, d)


def _emit(bases: set, dirs: tuple[Vector, ...], d: int) -> tuple[LinearSet, ...]:
    ordered = sorted(bases, key=lambda v: (sum(v), v))
    # bases reachable from an earlier base through the shared periods are the
    # same linear set shifted inward, so only the unreachable ones survive
    spread = tuple(
        max(
            max((v[i] for v in dirs), default=0),
            max(v[i] for v in ordered) - min(v[i] for v in ordered),
        )
        for i in range(2 * d)
    )
    grid = _make_grid(spread)
    if grid is not None:
        for p in dirs:
            grid.add(p)
    kept_bases: list[Vector] = []
    for base in ordered:
        redundant = False
        if grid is not None:
            for kb in kept_bases:
                diff = tuple(x - y for x, y in zip(base, kb))
                if all(x >= 0 for x in diff) and diff in grid:
                    redundant = True
                    break
        if not redundant:
            kept_bases.append(base)
    return tuple(LinearSet.make(base, dirs) for base in kept_bases)


@lru_cache(maxsize=200_000)
def compose_pieces_lattice(
    p1: LinearSet, p2: LinearSet, d: int, lattice: tuple[Vector, ...]
) -> tuple[LinearSet, ...]:
    """Compose two pair pieces whose middles only need to agree modulo a lattice.

    Useful when every middle the two pieces can reach lies in a zone where
    the governing relation already identifies points differing by a lattice
    element: matching middles exactly is then wasteful, and the result of
    matching them modulo the lattice is still contained in the relation while
    covering the exact composition.  Two extra column blocks, the lattice
    basis with both signs, absorb the integer balancing that makes the exact
    equality system blow up; solutions project to the outer halves exactly as
    in plain composition, with the lattice multiplicities discarded.
    """
    b1x, b1y = split_pair(p1.base)
    b2x, b2y = split_pair(p2.base)
    lefts1 = [split_pair(p) for p in p1.periods]
    lefts2 = [split_pair(p) for p in p2.periods]
    k1, k2 = len(p1.periods), len(p2.periods)
    rank = len(lattice)
    n = k1 + k2 + 2 * rank
    rows = tuple(
        tuple(py[r] for _, py in lefts1)
        + tuple(-qx[r] for qx, _ in lefts2)
        + tuple(-l[r] for l in lattice)
        + tuple(l[r] for l in lattice)
        for r in range(d)
    )
    rhs = vec_sub(b2x, b1y)
    for r in range(d):
        if any(l[r] for l in lattice):
            continue
        if rhs[r] > 0 and not any(py[r] for _, py in lefts1):
            return ()
        if rhs[r] < 0 and not any(qx[r] for qx, _ in lefts2):
            return ()
    zero = (0,) * d
    seeds = set()
    for i, (_, py) in enumerate(lefts1):
        if py == zero:
            seeds.add(tuple(1 if j == i else 0 for j in range(n)))
    for i, (qx, _) in enumerate(lefts2):
        if qx == zero:
            seeds.add(tuple(1 if j == k1 + i else 0 for j in range(n)))
    for i, (_, py) in enumerate(lefts1):
        if py == zero:
            continue
        for j, (qx, _) in enumerate(lefts2):
            if py == qx:
                seeds.add(tuple(1 if t in (i, k1 + j) else 0 for t in range(n)))
    # a lattice column and its negation cancel
    for i in range(rank):
        seeds.add(tuple(1 if t in (k1 + k2 + i, k1 + k2 + rank + i) else 0 for t in range(n)))
    known = tuple(sorted(seeds))
    homogeneous = hilbert_homogeneous(rows, n_columns=n, known=known)
    matches = minimal_inhomogeneous(rows, rhs, n_columns=n, known=known)
    if not matches:
        return ()
    proj = np.array(
        [px + (0,) * d for px, _ in lefts1]
        + [(0,) * d + qy for _, qy in lefts2]
        + [(0,) * (2 * d)] * (2 * rank),
        dtype=np.int64,
    ).reshape(n, 2 * d)
    return _assemble(homogeneous, matches, proj, b1x + b2y, d)


def compose(s1: SemilinearSet, s2: SemilinearSet) -> SemilinearSet:
    """Relational composition of pair sets: (x, y) with a shared middle z.

    For each pair of pieces, middles match when the right half of one linear
    combination equals the left half of the other; minimal matchings give the
    bases and homogeneous matchings the periods of the composite piece.
    """
    if s1.arity != s2.arity or s1.arity % 2:
        raise ValueError("composition needs pair sets of equal even arity")
    d = s1.arity // 2
    out: list[LinearSet] = []
    for p1 in s1.pieces:
        for p2 in s2.pieces:
            out.extend(compose_pieces(p1, p2, d))
    return SemilinearSet.make(s1.arity, out)


def to_congruence_basis(s: SemilinearSet) -> tuple[tuple[Vector, Vector], ...]:
    """Pair generators whose congruence closure contains the pair set.

    Each piece of arity 2d contributes its base as a pair plus, for every
    period, the base shifted by that period.  Rewriting any of these pairs in
    both directions reproduces every element of the piece.
    """
    if s.arity % 2:
        raise ValueError("pair set must have even arity")
    pairs = set()
    for piece in s.pieces:
        pairs.add(split_pair(piece.base))
        for p in piece.periods:
            pairs.add(split_pair(vec_add(piece.base, p)))
    return tuple(sorted(pairs))


# --- text form: one piece per line, "base | period ; period ; ..." ---------


def format_vector(v: Vector) -> str:
    if not v:
        raise ValueError("cannot format arity-0 vectors")
    return ",".join(str(x) for x in v)


def parse_vector(text: str) -> Vector:
    return tuple(int(part.strip()) for part in text.split(","))


def format_semilinear(s: SemilinearSet) -> str:
    lines = []
    for piece in s.pieces:
        if piece.periods:
            lines.append(
                f"{format_vector(piece.base)} | "
                + " ; ".join(format_vector(p) for p in piece.periods)
            )
        else:
            lines.append(format_vector(piece.base))
    return "\n".join(lines)


def parse_semilinear(text: str, arity: int) -> SemilinearSet:
    pieces = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if "|" in line:
            base_text, _, period_text = line.partition("|")
            periods = [parse_vector(part) for part in period_text.split(";") if part.strip()]
        else:
            base_text, periods = line, []
        piece = LinearSet.make(parse_vector(base_text), periods)
        if piece.arity != arity:
            raise ValueError(f"piece arity {piece.arity} differs from expected {arity}")
        pieces.append(piece)
    return SemilinearSet.make(arity, pieces)
