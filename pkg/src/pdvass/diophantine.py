"""Minimal nonnegative solutions of linear Diophantine systems.

Completion-based solver: grow candidate vectors coordinate by coordinate,
only ever stepping in a direction whose column makes the residual shorter
(negative inner product), and prune anything dominated by an already found
solution.  Explored breadth-first this enumerates exactly the minimal
solutions.  Inhomogeneous systems reduce to homogeneous ones through an
extra column carrying the negated right-hand side, capped at coefficient
one.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def _freeze(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _columns(rows: Matrix, n_columns: int) -> tuple[Vector, ...]:
    return tuple(tuple(row[j] for row in rows) for j in range(n_columns))


def _width(rows: Matrix, n_columns: Optional[int]) -> int:
    if n_columns is not None:
        if any(len(row) != n_columns for row in rows):
            raise ValueError("row width disagrees with n_columns")
        return n_columns
    if not rows:
        raise ValueError("cannot infer column count from an empty matrix")
    if len({len(row) for row in rows}) != 1:
        raise ValueError("ragged matrix")
    return len(rows[0])


_NO_CAP = 2**62


def _complete(
    rows: Matrix,
    n: int,
    caps: Optional[Vector],
    stop: Optional[Callable[[Vector], bool]],
    known: tuple[Vector, ...] = (),
    init: Optional[tuple[Vector, ...]] = None,
) -> tuple[Vector, ...]:
    """Breadth-first completion; returns minimal nonzero solutions in norm order.

    Candidates grow one coordinate at a time, only ever along a column whose
    inner product with the residual is negative, and anything above an already
    found solution is cut.  The domination sieve is incremental: alongside each
    candidate we carry, per found solution, the count of coordinates where the
    candidate still falls short; bumping one coordinate can only change that
    count there, so each level costs rows x solutions instead of rows x
    solutions x width.

    `caps` bounds individual coordinates (completion paths toward any minimal
    solution move below it pointwise, so capping a coordinate keeps every
    minimal solution that respects the cap reachable).  `stop` short-circuits
    the search as soon as an accepted solution satisfies it.  `known` seeds
    the pruner with solutions the caller already holds, which cuts the search
    out of every cone above them.  `init` restricts the starting candidates;
    only solutions reachable from them by growth paths are returned, which is
    sound whenever every wanted solution sits above some starting vector.
    """
    if n == 0:
        return ()
    m = len(rows)
    col_mat = np.array([[row[j] for row in rows] for j in range(n)], dtype=np.float64)
    col_mat = col_mat.reshape(n, m)
    cap_arr = (
        np.full(n, _NO_CAP, dtype=np.int64)
        if caps is None
        else np.array([_NO_CAP if c is None else c for c in caps], dtype=np.int64)
    )
    minimals: list[Vector] = sorted(known)
    min_mat = np.array(minimals, dtype=np.int64).reshape(len(minimals), n)

    if init is None:
        level = np.eye(n, dtype=np.int64)[cap_arr >= 1]
    else:
        level = np.array(init, dtype=np.int64).reshape(len(init), n)
    defic = _deficits(level, min_mat)
    alive = ~(defic == 0).any(axis=1)
    level, defic = level[alive], defic[alive]
    while level.shape[0]:
        # matmuls run in floating point: every entry stays far below 2**53,
        # and float products are exact there, so the comparisons are sound
        residuals = level @ col_mat
        solved = (residuals == 0).all(axis=1)
        new_mins = level[solved]
        if new_mins.shape[0]:
            sols = [tuple(int(v) for v in row) for row in new_mins]
            minimals.extend(sols)
            min_mat = np.concatenate([min_mat, new_mins], axis=0)
            if stop is not None and any(stop(s) for s in sols):
                return tuple(sorted(minimals))
        rest = level[~solved]
        if not rest.shape[0]:
            break
        gains = residuals[~solved] @ col_mat.T
        allowed = (gains < 0) & (rest < cap_arr[None, :])
        src, coord = np.nonzero(allowed)
        if not src.shape[0]:
            break
        level, defic = _advance(rest, defic[~solved], src, coord, min_mat, new_mins)
    return tuple(sorted(minimals))


def _advance(
    rest: "np.ndarray",
    defic: "np.ndarray",
    src: "np.ndarray",
    coord: "np.ndarray",
    min_mat: "np.ndarray",
    new_mins: "np.ndarray",
) -> tuple["np.ndarray", "np.ndarray"]:
    """Expand candidates along their allowed coordinates and prune the litter.

    Deficit bookkeeping: bumping one coordinate can close a gap against a
    found solution only there, and it does exactly when the parent sat one
    below that solution, so the counts update by a single comparison per
    solution.  Work proceeds in bounded blocks (the expansion is the memory
    peak of the whole search), each deduplicated and sieved before the next,
    and deficits against solutions found this round are only computed for
    rows that survive everything else.
    """
    n = rest.shape[1]
    old = defic.shape[1]
    keep_rows: list["np.ndarray"] = []
    keep_defs: list["np.ndarray"] = []
    block = max(8192, min(262_144, 32_000_000 // max(old + new_mins.shape[0], 1)))
    for lo in range(0, src.shape[0], block):
        s, c = src[lo : lo + block], coord[lo : lo + block]
        children = rest[s]
        pick = np.arange(children.shape[0])
        children[pick, c] += 1
        dec = min_mat[:old].T[c] == (children[pick, c])[:, None]
        child_def = defic[s]
        np.subtract(child_def, dec, out=child_def, casting="unsafe")
        children, keep = _dedupe_rows(children)
        child_def = child_def[keep]
        alive = ~(child_def == 0).any(axis=1)
        children, child_def = children[alive], child_def[alive]
        if new_mins.shape[0] and children.shape[0]:
            extra = _deficits(children, new_mins)
            alive = ~(extra == 0).any(axis=1)
            children = children[alive]
            child_def = np.concatenate([child_def[alive], extra[alive]], axis=1)
        if children.shape[0]:
            keep_rows.append(children)
            keep_defs.append(child_def)
    if not keep_rows:
        width = old + new_mins.shape[0]
        return np.zeros((0, n), dtype=np.int64), np.zeros((0, width), dtype=np.int16)
    level = np.concatenate(keep_rows, axis=0)
    defic = np.concatenate(keep_defs, axis=0)
    if len(keep_rows) > 1:
        level, keep = _dedupe_rows(level)
        defic = defic[keep]
    return level, defic


def _dedupe_rows(level: "np.ndarray") -> tuple["np.ndarray", "np.ndarray"]:
    """np.unique(axis=0) minus the per-column lexsort: sort rows as raw bytes."""
    if level.shape[0] <= 1:
        return level, np.arange(level.shape[0])
    packed = np.ascontiguousarray(level).view(
        np.dtype((np.void, level.dtype.itemsize * level.shape[1]))
    ).ravel()
    _, idx = np.unique(packed, return_index=True)
    return level[idx], idx


def _deficits(block: "np.ndarray", min_mat: "np.ndarray") -> "np.ndarray":
    """Per (row, solution) count of coordinates where the row falls short."""
    out = np.zeros((block.shape[0], min_mat.shape[0]), dtype=np.int16)
    for lo in range(0, block.shape[0], 8192):
        hi = lo + 8192
        for mo in range(0, min_mat.shape[0], 256):
            chunk = min_mat[mo : mo + 256]
            out[lo:hi, mo : mo + chunk.shape[0]] = (
                block[lo:hi, None, :] < chunk[None, :, :]
            ).sum(axis=2, dtype=np.int16)
    return out


def _distributions(total: int, k: int, cap: Optional[int]):
    """All k-tuples of nonnegative ints summing to total, entries capped."""
    if k == 1:
        if cap is None or total <= cap:
            yield (total,)
        return
    top = total if cap is None else min(total, cap)
    for first in range(top, -1, -1):
        for rest in _distributions(total - first, k - 1, cap):
            yield (first,) + rest


def _merged(rows: Matrix, n: int, caps: Optional[Vector]):
    """Group identical columns (same entries, same cap) into one variable.

    A solution of the merged system carries the total mass of each group;
    splitting that mass over the group members is a bijection between merged
    and original minimal solutions, so nothing is lost and the completion
    runs on a much narrower matrix.
    """
    cols = _columns(rows, n)
    groups: dict[tuple[Vector, Optional[int]], list[int]] = {}
    for i, c in enumerate(cols):
        cap = None if caps is None else caps[i]
        groups.setdefault((c, cap), []).append(i)
    keys = sorted(groups, key=lambda kc: (kc[0], kc[1] is not None, kc[1] or 0))
    merged_rows = tuple(tuple(key[0][r] for key in keys) for r in range(len(rows)))
    merged_caps: Optional[Vector] = tuple(
        None if key[1] is None else key[1] * len(groups[key]) for key in keys
    )
    if all(c is None for c in merged_caps):
        merged_caps = None
    return keys, groups, merged_rows, merged_caps


def _expand(sol: Vector, keys, groups, n: int) -> list[Vector]:
    from itertools import product

    options = []
    for mass, key in zip(sol, keys):
        options.append(list(_distributions(mass, len(groups[key]), key[1])))
    out = []
    for combo in product(*options):
        x = [0] * n
        for key, dist in zip(keys, combo):
            for i, m in zip(groups[key], dist):
                x[i] = m
        out.append(tuple(x))
    return out


@lru_cache(maxsize=100_000)
def _hilbert_cached(
    rows: Matrix, n: int, caps: Optional[Vector], known: tuple[Vector, ...] = ()
) -> tuple[Vector, ...]:
    keys, groups, merged_rows, merged_caps = _merged(rows, n, caps)
    if len(keys) == n:
        return _complete(rows, n, caps, None, known)
    merged_known = tuple(
        sorted({tuple(sum(k[i] for i in groups[key]) for key in keys) for k in known})
    )
    out: set[Vector] = set(known)
    for sol in _complete(merged_rows, len(keys), merged_caps, None, merged_known):
        out.update(_expand(sol, keys, groups, n))
    return tuple(sorted(out))


def hilbert_homogeneous(
    rows: Sequence[Sequence[int]],
    n_columns: Optional[int] = None,
    caps: Optional[Sequence[Optional[int]]] = None,
    known: Sequence[Vector] = (),
) -> tuple[Vector, ...]:
    """All minimal nonzero x >= 0 with rows . x = 0 (the Hilbert basis).

    `known` passes minimal solutions the caller can construct cheaply; they
    must be genuine members of the basis.
    """
    frozen = _freeze(rows)
    n = _width(frozen, n_columns)
    caps_t = None if caps is None else tuple(caps)
    return _hilbert_cached(frozen, n, caps_t, tuple(sorted(set(known))))


def _padded(rows: Matrix, rhs: Vector) -> Matrix:
    if len(rhs) != len(rows):
        raise ValueError("right-hand side has wrong arity")
    return tuple(row + (-b,) for row, b in zip(rows, rhs))


@lru_cache(maxsize=100_000)
def _minimal_inhom_cached(
    rows: Matrix, n: int, rhs: Vector, known: tuple[Vector, ...] = ()
) -> tuple[Vector, ...]:
    if all(b == 0 for b in rhs):
        return ((0,) * n,)
    hom = _hilbert_cached(rows, n, None, known)
    caps = (None,) * n + (1,)
    start = ((0,) * n + (1,),)
    padded_hom = tuple(sorted(h + (0,) for h in hom))
    sols = _complete(_padded(rows, rhs), n + 1, caps, None, padded_hom, init=start)
    return tuple(sorted(x[:n] for x in sols if x[n] == 1))


def minimal_inhomogeneous(
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
    n_columns: Optional[int] = None,
    known: Sequence[Vector] = (),
) -> tuple[Vector, ...]:
    """All minimal z >= 0 with rows . z = rhs.

    A minimal solution of the padded homogeneous system [rows | -rhs] whose
    padding coefficient is one is exactly a minimal inhomogeneous solution:
    anything smaller with padding one would embed, and anything smaller with
    padding zero would be a nonzero homogeneous part that minimality forbids.
    The search starts at the padding unit and is pruned by the homogeneous
    basis of the unpadded rows, so it never wanders through homogeneous
    territory: any growth path crossing the cone above a homogeneous solution
    could subtract it, contradicting minimality of its endpoint.  The shared
    homogeneous basis is fetched from its own cache, which every right-hand
    side over the same rows reuses.  `known` seeds that homogeneous solve.
    """
    frozen = _freeze(rows)
    n = _width(frozen, n_columns)
    return _minimal_inhom_cached(frozen, n, tuple(int(b) for b in rhs), tuple(sorted(set(known))))


def feasible(
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
    n_columns: Optional[int] = None,
) -> bool:
    """Does rows . z = rhs admit any z >= 0?  Stops at the first solution."""
    frozen = _freeze(rows)
    n = _width(frozen, n_columns)
    rhs_t = tuple(int(b) for b in rhs)
    if all(b == 0 for b in rhs_t):
        return True
    return _feasible_cached(frozen, n, rhs_t)


def _box_reach(cols: tuple[Vector, ...], rhs: Vector) -> bool:
    """Can column sums hit rhs exactly?  Search stays inside the box [0, rhs].

    Reachability as a boolean grid over the box; each column is propagated by
    or-ing shifted copies with doubling strides, sweeping the columns until
    the grid stops growing.
    """
    zero = (0,) * len(rhs)
    if rhs == zero:
        return True
    steps = [c for c in cols if all(a <= b for a, b in zip(c, rhs))]
    if not steps:
        return False
    reach = np.zeros(tuple(r + 1 for r in rhs), dtype=bool)
    reach[zero] = True
    while True:
        if reach[rhs]:
            return True
        before = int(reach.sum())
        for col in steps:
            stride = col
            while all(s <= r for s, r in zip(stride, rhs)):
                dst = tuple(slice(s, None) for s in stride)
                src = tuple(slice(0, n - s) for s, n in zip(stride, reach.shape))
                reach[dst] |= reach[src]
                stride = tuple(2 * s for s in stride)
        if int(reach.sum()) == before:
            return bool(reach[rhs])


@lru_cache(maxsize=500_000)
def _feasible_cached(frozen: tuple, n: int, rhs_t: tuple) -> bool:
    cols = _columns(frozen, n)
    if all(x >= 0 for col in cols for x in col):
        if any(b < 0 for b in rhs_t):
            return False
        volume = 1
        for b in rhs_t:
            volume *= b + 1
        if volume <= 4_000_000:
            live = tuple(sorted({c for c in cols if any(c)}))
            return _box_reach(live, rhs_t)
    caps = (None,) * n + (1,)
    keys, _, merged_rows, merged_caps = _merged(_padded(frozen, rhs_t), n + 1, caps)
    # any unit of mass on a column equal to the negated right-hand side
    # witnesses a solution, whether it is the padding column or a twin
    pad_col = tuple(-b for b in rhs_t)
    witnesses = [g for g, key in enumerate(keys) if key[0] == pad_col]
    hit = lambda x: any(x[g] >= 1 for g in witnesses)
    found = _complete(merged_rows, len(keys), merged_caps, hit)
    return any(hit(x) for x in found)


def pottier_bound(rows: Sequence[Sequence[int]], n_columns: Optional[int] = None) -> int:
    """(1 + max column 1-norm) ** row count: ceiling for minimal solution entries."""
    frozen = _freeze(rows)
    n = _width(frozen, n_columns)
    if not frozen:
        return 1
    norm = max((sum(abs(row[j]) for row in frozen) for j in range(n)), default=0)
    return (1 + norm) ** len(frozen)
