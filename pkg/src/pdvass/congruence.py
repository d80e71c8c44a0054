"""Finitely generated congruences on N^d as effectively semilinear relations.

A congruence generated by finitely many pairs is a submonoid of N^(2d).  Far
from the axes it looks like a shifted lattice cone: above a big enough corner
(b, b), the relation translated back to the origin is exactly the monoid of
nonnegative integer points of the group spanned by the symmetrized
generators and the diagonal units.  Below the corner, the complement is a
finite comb of regions, each freezing one coordinate, and the relation
restricted to a region is a congruence in one dimension less.  Composing the
finitely many resulting pieces a bounded number of times recovers the whole
relation, making it semilinear with computable pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .binomial import Pair, Vector, canonical_basis, eliminate, project_coords, quotient_by_monomial
from .diophantine import feasible, hilbert_homogeneous, minimal_inhomogeneous
from .semilinear import (
    LinearSet,
    SemilinearSet,
    compose_pieces,
    compose_pieces_lattice,
    linear_covers,
    member,
    minimal_periods,
    prune_subsumed,
)


def _unit(d: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(d))


def _sym_pairs(pairs: Sequence[Pair]) -> tuple[Pair, ...]:
    out = set()
    for u, v in pairs:
        out.add((tuple(u), tuple(v)))
        out.add((tuple(v), tuple(u)))
    return tuple(sorted(out))


def _antichain(vectors: Iterable[Vector]) -> tuple[Vector, ...]:
    vecs = sorted(set(vectors), key=lambda v: (sum(v), v))
    kept: list[Vector] = []
    for v in vecs:
        if not any(all(mi <= vi for mi, vi in zip(m, v)) for m in kept):
            kept.append(v)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class BigVector:
    """Corner data for one congruence: above (b, b) the relation is M*.

    `lam` and `b` follow the closed-form bound (Pottier ceiling to the number
    of rows); `tight_b` shrinks the corner to what the actual minimal
    solutions need, which keeps the downstream region comb small.  Both
    corners enjoy the same property: the relation shifted by either corner
    equals the monoid generated by M.
    """

    dimension: int
    generators: tuple[Vector, ...]  # V: symmetrized pairs and diagonal units, flattened
    minimals: tuple[Vector, ...]  # M: minimal nonzero relation directions
    lam: int
    b: Vector
    tight_b: Vector


def _lattice_basis(vectors: Sequence[Vector]) -> tuple[Vector, ...]:
    """Triangular basis of the integer lattice the vectors span.

    Plain column-style Hermite reduction: gcd out a pivot per row with
    elementary integer column operations, which never change the lattice.
    """
    cols = [list(v) for v in vectors if any(v)]
    if not cols:
        return ()
    n = len(cols[0])
    out: list[Vector] = []
    for r in range(n):
        live = [c for c in cols if c[r] != 0]
        cols = [c for c in cols if c[r] == 0]
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[r]))
            head = live[0]
            for c in live[1:]:
                q = c[r] // head[r]
                for i in range(n):
                    c[i] -= q * head[i]
            survivors = [c for c in live if c[r] != 0]
            cols.extend(c for c in live if c[r] == 0 and any(c))
            live = survivors
        if live:
            pivot = live[0]
            if pivot[r] < 0:
                pivot = [-x for x in pivot]
            out.append(tuple(pivot))
    return tuple(out)


def big_vector(pairs: Sequence[Pair], d: int) -> BigVector:
    """Corner vector and direction monoid for the congruence on N^d."""
    sym = _sym_pairs(pairs)
    flat = sorted({u + v for u, v in sym} | {_unit(d, i) + _unit(d, i) for i in range(d)})
    col_norm = max(sum(abs(x) for x in v) for v in flat)
    lam = (1 + col_norm) ** (2 * d)
    total = tuple(sum(v[r] for v in flat) for r in range(2 * d))
    assert total[:d] == total[d:], "generator sum must be symmetric"
    b = tuple(lam * x for x in total[:d])
    # the minimal directions only depend on the group the generators span,
    # so the solver can run over a lattice basis, never more than 2d columns
    lattice = _lattice_basis(flat)
    width = len(lattice)
    rows = tuple(
        tuple(v[r] for v in lattice)
        + tuple(-v[r] for v in lattice)
        + tuple(-1 if k == r else 0 for k in range(2 * d))
        for r in range(2 * d)
    )
    seeds = set()
    for i, v in enumerate(lattice):
        left = tuple(1 if j == i else 0 for j in range(width))
        zero = (0,) * width
        seeds.add(left + left + (0,) * (2 * d))
        if all(x >= 0 for x in v):
            seeds.add(left + zero + v)
        if all(x <= 0 for x in v):
            seeds.add(zero + left + tuple(-x for x in v))
    sols = hilbert_homogeneous(rows, n_columns=2 * width + 2 * d, known=tuple(sorted(seeds)))
    minimals = _antichain(s[2 * width :] for s in sols if any(s[2 * width :]))
    tight_b = _descend_corner(_corner_start(flat, minimals, d), flat, minimals, d)
    return BigVector(d, tuple(flat), minimals, lam, b, tight_b)


def _corner_start(flat: Sequence[Vector], minimals: Sequence[Vector], d: int) -> Vector:
    """A small corner that is valid by construction.

    For each minimal direction m, solve for a diagonal shift (w, w) putting
    (w, w) + m inside the generator cone; the coordinatewise maximum of the
    shifts then works for every direction at once, because the surplus over
    any single shift is a sum of diagonal units.
    """
    rows = tuple(
        tuple(v[r] for v in flat) + tuple(-1 if i == r % d else 0 for i in range(d))
        for r in range(2 * d)
    )
    width = len(flat)
    start = [0] * d
    for m in minimals:
        sols = minimal_inhomogeneous(rows, m, n_columns=width + d)
        w = min((s[width:] for s in sols), key=lambda v: (sum(v), v))
        start = [max(a, x) for a, x in zip(start, w)]
    return tuple(start)


def _corner_valid(b: Vector, span_rows, width: int, minimals) -> bool:
    return all(
        feasible(span_rows, tuple(x + y for x, y in zip(b + b, m)), n_columns=width)
        for m in minimals
    )


def _descend_corner(start: Vector, flat, minimals, d: int) -> Vector:
    """Lower the corner coordinatewise while (b,b)+m stays inside the cone.

    Valid corners are upward closed (the cone contains all diagonal units),
    so greedy descent is sound; it just finds a smaller one than the
    constructive bound, which shrinks the comb downstream.
    """
    span_rows = tuple(tuple(v[r] for v in flat) for r in range(2 * d))
    assert _corner_valid(tuple(start), span_rows, len(flat), minimals)
    b = list(start)
    for i in range(d):
        lo, hi = 0, b[i]
        while lo < hi:
            mid = (lo + hi) // 2
            if _corner_valid(tuple(b[:i] + [mid] + b[i + 1 :]), span_rows, len(flat), minimals):
                hi = mid
            else:
                lo = mid + 1
        b[i] = hi
    changed = True
    while changed:
        changed = False
        for i in range(d):
            while b[i] > 0:
                trial = tuple(b[:i] + [b[i] - 1] + b[i + 1 :])
                if not _corner_valid(trial, span_rows, len(flat), minimals):
                    break
                b[i] -= 1
                changed = True
    return tuple(b)


def restrict_region(pairs: Sequence[Pair], d: int, offset: Vector, frozen: int) -> tuple[Pair, ...]:
    """Generating pairs of the congruence seen from offset with one frozen axis.

    Quotienting by the offset re-bases the congruence; eliminating the frozen
    coordinate keeps exactly the pairs provable without moving it.  Output
    pairs live on the remaining d-1 coordinates.
    """
    shifted = quotient_by_monomial(pairs, d, offset)
    keep = tuple(i for i in range(d) if i != frozen)
    return project_coords(eliminate(shifted, d, drop=(frozen,)), keep)


def _diagonal(d: int) -> LinearSet:
    return LinearSet.make((0,) * 2 * d, [_unit(d, i) * 2 for i in range(d)])


def _embed_pair_vector(v: Vector, d_small: int, frozen: int) -> Vector:
    x, y = v[:d_small], v[d_small:]

    def grow(half: Vector) -> Vector:
        out = list(half)
        out.insert(frozen, 0)
        return tuple(out)

    return grow(x) + grow(y)


_memo: dict = {}


Region = tuple[Optional[int], Vector]  # frozen coordinate (None for the corner), lower bounds


def cong_to_semilinear(pairs: Sequence[Pair], d: int) -> SemilinearSet:
    """The congruence generated by the pairs, as a pair set over N^(2d)."""
    basis = canonical_basis(pairs, d)
    cache_key = (d, basis)
    if cache_key in _memo:
        return _memo[cache_key]
    if d == 0:
        result = SemilinearSet.make(0, [LinearSet.make((), [])])
        _memo[cache_key] = result
        return result
    if not basis:
        result = SemilinearSet.make(2 * d, [_diagonal(d)])
        _memo[cache_key] = result
        return result

    big = big_vector(basis, d)
    b = big.tight_b
    corner = minimal_periods(LinearSet.make(b + b, big.minimals))

    # comb regions: walk the corner one unit at a time, coordinate by
    # coordinate; each step freezes the coordinate being walked.  The corner
    # and the regions partition N^d, and the relation restricted to a region
    # is a congruence in one dimension less
    regions: list[Region] = [(None, b)]
    region_pieces: dict[int, list[LinearSet]] = {}
    offset = [0] * d
    for coord in range(d):
        for _ in range(b[coord]):
            frozen_offset = tuple(offset)
            sub = restrict_region(basis, d, frozen_offset, coord)
            inner = cong_to_semilinear(sub, d - 1)
            embedded = []
            for piece in inner.pieces:
                base = _embed_pair_vector(piece.base, d - 1, coord)
                base = tuple(x + o for x, o in zip(base, frozen_offset + frozen_offset))
                periods = [_embed_pair_vector(p, d - 1, coord) for p in piece.periods]
                embedded.append(minimal_periods(LinearSet.make(base, periods)))
            region_pieces[len(regions)] = embedded
            regions.append((coord, frozen_offset))
            offset[coord] += 1

    # every piece is confined to one cell (x-region, y-region).  Composing
    # cell pieces keeps both outer sides, so confinement is preserved, and
    # chains thread cells through a shared middle region.  Keeping pieces
    # cellwise stops the closure from fusing content of different regions
    # into wide-period pieces that no single absorber can retire
    n_regions = len(regions)
    cells: dict[tuple[int, int], list[LinearSet]] = {
        (j, k): [] for j in range(n_regions) for k in range(n_regions)
    }
    fresh: dict[tuple[int, int], list[LinearSet]] = {key: [] for key in cells}
    _cell_add(cells[(0, 0)], corner, fresh[(0, 0)])
    for j, embedded in region_pieces.items():
        for piece in embedded:
            _cell_add(cells[(j, j)], piece, fresh[(j, j)])
    # related pairs are closed under sums, so any sum of generator pairs and
    # diagonal units is itself a related pair; this pool piece carries the
    # one-or-more-step content and is sliced into the cells it touches
    pool = {_unit(d, i) * 2 for i in range(d)}
    pool.update(u + v for u, v in _sym_pairs(basis))
    pool_piece = LinearSet.make((0,) * (2 * d), sorted(pool))
    for j in range(n_regions):
        for k in range(n_regions):
            for part in _cell_split(pool_piece, regions[j], regions[k], d):
                _cell_add(cells[(j, k)], part, fresh[(j, k)])

    # points of the corner region that differ by a generator-difference
    # lattice element are already identified by the corner piece, so a
    # composition whose middle lands there may match middles modulo that
    # lattice: the result is the exact composition widened through the
    # corner, still inside the relation, and the solver stays small
    lam_basis = _lattice_basis(
        tuple(tuple(g[i] - g[d + i] for i in range(d)) for g in big.generators)
    )

    # a minimal derivation meets every region at most twice, so chains of
    # this many hops saturate the relation; compositions landing in the
    # corner cell are already inside the corner piece and are skipped
    chain_bound = 2 * (sum(b) + 1) - 1
    for _ in range(chain_bound - 1):
        if not any(fresh.values()):
            break
        produced: dict[tuple[int, int], set[LinearSet]] = {}
        for (j, m), left_all in cells.items():
            if not left_all:
                continue
            left_fresh = fresh[(j, m)]
            fresh_set = set(left_fresh)
            left_old = [p for p in left_all if p not in fresh_set]
            for k in range(n_regions):
                if j == 0 and k == 0:
                    continue
                right_all = cells[(m, k)]
                if not right_all:
                    continue
                right_fresh = fresh[(m, k)]
                sink = produced.setdefault((j, k), set())
                if m == 0:
                    for p1 in left_fresh:
                        for p2 in right_all:
                            sink.update(compose_pieces_lattice(p1, p2, d, lam_basis))
                    for p1 in left_old:
                        for p2 in right_fresh:
                            sink.update(compose_pieces_lattice(p1, p2, d, lam_basis))
                else:
                    for p1 in left_fresh:
                        for p2 in right_all:
                            sink.update(compose_pieces(p1, p2, d))
                    for p1 in left_old:
                        for p2 in right_fresh:
                            sink.update(compose_pieces(p1, p2, d))
        fresh = {key: [] for key in cells}
        for cell_key in sorted(produced):
            bucket = cells[cell_key]
            for cand in sorted(produced[cell_key]):
                _cell_add(bucket, cand, fresh[cell_key])

    result = prune_subsumed(
        SemilinearSet.make(2 * d, [p for cell_key in sorted(cells) for p in cells[cell_key]])
    )
    _memo[cache_key] = result
    return result


def _cell_split(piece: LinearSet, rx: Region, ry: Region, d: int) -> list[LinearSet]:
    """Slice a pair piece to the points whose halves lie in the two regions.

    Frozen coordinates become equality rows over the period multiplicities,
    lower bounds get slack columns; the minimal solutions give the bases of
    the intersection and the homogeneous directions its periods.
    """
    fx, lx = rx
    fy, ly = ry
    k = len(piece.periods)
    slack_coords = [i for i in range(d) if i != fx]
    slack_coords += [d + i for i in range(d) if i != fy]
    target = lx + ly
    rows = tuple(
        tuple(p[r] for p in piece.periods)
        + tuple(-1 if sc == r else 0 for sc in slack_coords)
        for r in range(2 * d)
    )
    rhs = tuple(target[r] - piece.base[r] for r in range(2 * d))
    ncols = k + len(slack_coords)
    sols = minimal_inhomogeneous(rows, rhs, n_columns=ncols)
    if not sols:
        return []
    dirs = sorted(
        {
            tuple(sum(c * p[r] for c, p in zip(h[:k], piece.periods)) for r in range(2 * d))
            for h in hilbert_homogeneous(rows, n_columns=ncols)
        }
        - {(0,) * (2 * d)}
    )
    out = []
    for s in sols:
        base = tuple(
            piece.base[r] + sum(c * p[r] for c, p in zip(s[:k], piece.periods))
            for r in range(2 * d)
        )
        out.append(minimal_periods(LinearSet.make(base, dirs)))
    return sorted(set(out))


def _cell_add(bucket: list[LinearSet], cand: LinearSet, fresh: list[LinearSet]) -> None:
    for piece in _shatter(cand, bucket):
        if any(linear_covers(kept, piece) for kept in bucket):
            continue
        bucket[:] = [kept for kept in bucket if not linear_covers(piece, kept)]
        fresh[:] = [kept for kept in fresh if not linear_covers(piece, kept)]
        bucket.append(piece)
        fresh.append(piece)


def _shatter(cand: LinearSet, absorbers: Sequence[LinearSet]) -> list[LinearSet]:
    """Collapse a candidate whose period translates are already covered.

    A piece splits exactly as its base point plus, for every period p, the
    same piece moved up by p.  When each moved copy sits inside some absorber
    only the base point is new, so the candidate collapses to that point
    instead of fattening the closure.
    """
    if not cand.periods:
        return [cand]
    moved = [
        LinearSet.make(tuple(x + y for x, y in zip(cand.base, p)), cand.periods)
        for p in cand.periods
    ]
    if all(any(linear_covers(a, m) for a in absorbers) for m in moved):
        return [LinearSet.make(cand.base, ())]
    return [cand]


def relates(pairs: Sequence[Pair], d: int, s: Vector, t: Vector) -> bool:
    """Membership through the semilinear representation (not the completion)."""
    return member(cong_to_semilinear(pairs, d), tuple(s) + tuple(t))
