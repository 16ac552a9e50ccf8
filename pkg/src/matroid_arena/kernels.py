"""Bitset-table kernels behind the exhaustive checkers and enumeration sweeps.

A matroid on ground set {0..n-1} is summarized by its independence table:
a uint8 array of length 2**n where entry ``mask`` is 1 iff the subset with
that bitmask is independent.  Everything here is pure array math over such
tables, which is where the engine spends nearly all of its time during
exhaustive verification, so the kernels are compiled with numba by default.

Set ``MATROID_ARENA_NO_NUMBA=1`` to select the pure-numpy fallback path
(same results, slower); the active path is reported by ``backend_name()``.
``benchmarks/bench_kernels.py`` compares the two.

Violation finders return index pairs with ``-1`` sentinels so callers can
report counterexamples instead of bare booleans.
"""

from __future__ import annotations

import os

import numpy as np

NO_NUMBA_ENV = "MATROID_ARENA_NO_NUMBA"

_disabled = os.environ.get(NO_NUMBA_ENV, "").strip().lower() in {"1", "true", "yes"}
if not _disabled:
    try:
        from numba import njit as _njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False


def _popcount_table(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int8)
    for e in range(n):
        pc += ((masks >> e) & 1).astype(np.int8)
    return pc


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------


def _np_rank_table(ind: np.ndarray, n: int) -> np.ndarray:
    """rank[S] = max |T| over independent T <= S, via subset-max DP.

    Per-bit passes are safe to vectorize: a pass only writes masks containing
    the bit and only reads masks without it.
    """
    pc = _popcount_table(n)
    rank = np.where(ind.astype(bool), pc, np.int8(-1)).astype(np.int8)
    masks = np.arange(1 << n, dtype=np.int64)
    for e in range(n):
        idx = masks[((masks >> e) & 1) == 1]
        rank[idx] = np.maximum(rank[idx], rank[idx ^ (1 << e)])
    return rank


def _np_hereditary_violation(ind: np.ndarray, n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    for e in range(n):
        has = ((masks >> e) & 1) == 1
        bad = has & ind.astype(bool) & ~ind[masks ^ (1 << e)].astype(bool)
        if bad.any():
            s = int(masks[bad][0])
            return np.array([s, e], dtype=np.int64)
    return np.array([-1, -1], dtype=np.int64)


def _np_exchange_violation(ind_masks: np.ndarray, ind: np.ndarray, n: int) -> np.ndarray:
    pc = _popcount_table(n)
    sizes = pc[ind_masks]
    # addable[S] = bitmask of elements e not in S with S+e independent
    addable = np.zeros(len(ind_masks), dtype=np.int64)
    for e in range(n):
        bit = 1 << e
        absent = (ind_masks & bit) == 0
        grows = np.zeros(len(ind_masks), dtype=bool)
        grows[absent] = ind[ind_masks[absent] | bit].astype(bool)
        addable |= np.where(grows, bit, 0)
    for i, s in enumerate(ind_masks):
        viol = (sizes > sizes[i]) & ((ind_masks & ~s & addable[i]) == 0)
        if viol.any():
            t = int(ind_masks[viol][0])
            return np.array([int(s), t], dtype=np.int64)
    return np.array([-1, -1], dtype=np.int64)


def _np_submodularity_violation(rank: np.ndarray, n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    r = rank.astype(np.int32)
    for a in range(1 << n):
        lhs = r[a] + r
        rhs = r[masks | a] + r[masks & a]
        bad = lhs < rhs
        if bad.any():
            return np.array([a, int(masks[bad][0])], dtype=np.int64)
    return np.array([-1, -1], dtype=np.int64)


def _np_valid_exchange_targets(ind: np.ndarray, i1: int, i2: int, x: int) -> np.ndarray:
    size = len(ind)
    masks = np.arange(size, dtype=np.int64)
    ys = masks[(masks & ~np.int64(i2)) == 0]
    keep = ind[(i1 & ~x) | ys].astype(bool) & ind[(i2 & ~ys) | x].astype(bool)
    return ys[keep]


def _np_exchange_sweep(ind_masks: np.ndarray, ind: np.ndarray, n: int) -> np.ndarray:
    triples = 0
    for i1 in ind_masks:
        i1 = int(i1)
        x = i1
        while True:
            base1 = i1 & ~x
            for i2 in ind_masks:
                i2 = int(i2)
                triples += 1
                ok = False
                y = i2
                while True:
                    if ind[base1 | y] and ind[(i2 & ~y) | x]:
                        ok = True
                        break
                    if y == 0:
                        break
                    y = (y - 1) & i2
                if not ok:
                    return np.array([triples, i1, i2, x], dtype=np.int64)
            if x == 0:
                break
            x = (x - 1) & i1
    return np.array([triples, -1, -1, -1], dtype=np.int64)


_NUMPY_BACKEND = {
    "rank_table": _np_rank_table,
    "hereditary_violation": _np_hereditary_violation,
    "exchange_violation": _np_exchange_violation,
    "submodularity_violation": _np_submodularity_violation,
    "valid_exchange_targets": _np_valid_exchange_targets,
    "exchange_sweep": _np_exchange_sweep,
}


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @_njit(cache=True)
    def _nb_rank_table(ind, n):
        size = 1 << n
        rank = np.empty(size, dtype=np.int8)
        for s in range(size):
            if ind[s]:
                c = 0
                m = s
                while m:
                    m &= m - 1
                    c += 1
                rank[s] = c
            else:
                rank[s] = -1
        for e in range(n):
            bit = 1 << e
            for s in range(size):
                if s & bit and rank[s ^ bit] > rank[s]:
                    rank[s] = rank[s ^ bit]
        return rank

    @_njit(cache=True)
    def _nb_hereditary_violation(ind, n):
        out = np.empty(2, dtype=np.int64)
        size = 1 << n
        for s in range(size):
            if ind[s]:
                for e in range(n):
                    bit = 1 << e
                    if s & bit and not ind[s ^ bit]:
                        out[0] = s
                        out[1] = e
                        return out
        out[0] = -1
        out[1] = -1
        return out

    @_njit(cache=True)
    def _nb_exchange_violation(ind_masks, ind, n):
        out = np.empty(2, dtype=np.int64)
        m = len(ind_masks)
        sizes = np.empty(m, dtype=np.int64)
        addable = np.zeros(m, dtype=np.int64)
        for i in range(m):
            s = ind_masks[i]
            c = 0
            t = s
            while t:
                t &= t - 1
                c += 1
            sizes[i] = c
            for e in range(n):
                bit = 1 << e
                if not s & bit and ind[s | bit]:
                    addable[i] |= bit
        for i in range(m):
            s = ind_masks[i]
            for j in range(m):
                if sizes[j] > sizes[i] and (ind_masks[j] & ~s & addable[i]) == 0:
                    out[0] = s
                    out[1] = ind_masks[j]
                    return out
        out[0] = -1
        out[1] = -1
        return out

    @_njit(cache=True)
    def _nb_submodularity_violation(rank, n):
        out = np.empty(2, dtype=np.int64)
        size = 1 << n
        for a in range(size):
            ra = rank[a]
            for b in range(size):
                if ra + rank[b] < rank[a | b] + rank[a & b]:
                    out[0] = a
                    out[1] = b
                    return out
        out[0] = -1
        out[1] = -1
        return out

    @_njit(cache=True)
    def _nb_valid_exchange_targets(ind, i1, i2, x):
        count = 0
        base1 = i1 & ~x
        y = i2
        while True:
            if ind[base1 | y] and ind[(i2 & ~y) | x]:
                count += 1
            if y == 0:
                break
            y = (y - 1) & i2
        out = np.empty(count, dtype=np.int64)
        k = 0
        y = i2
        while True:
            if ind[base1 | y] and ind[(i2 & ~y) | x]:
                out[k] = y
                k += 1
            if y == 0:
                break
            y = (y - 1) & i2
        return out[::-1].copy()  # ascending mask order

    @_njit(cache=True)
    def _nb_exchange_sweep(ind_masks, ind, n):
        out = np.empty(4, dtype=np.int64)
        triples = 0
        for a in range(len(ind_masks)):
            i1 = ind_masks[a]
            x = i1
            while True:
                base1 = i1 & ~x
                for b in range(len(ind_masks)):
                    i2 = ind_masks[b]
                    triples += 1
                    ok = False
                    y = i2
                    while True:
                        if ind[base1 | y] and ind[(i2 & ~y) | x]:
                            ok = True
                            break
                        if y == 0:
                            break
                        y = (y - 1) & i2
                    if not ok:
                        out[0] = triples
                        out[1] = i1
                        out[2] = i2
                        out[3] = x
                        return out
                if x == 0:
                    break
                x = (x - 1) & i1
        out[0] = triples
        out[1] = -1
        out[2] = -1
        out[3] = -1
        return out

    _NUMBA_BACKEND = {
        "rank_table": _nb_rank_table,
        "hereditary_violation": _nb_hereditary_violation,
        "exchange_violation": _nb_exchange_violation,
        "submodularity_violation": _nb_submodularity_violation,
        "valid_exchange_targets": _nb_valid_exchange_targets,
        "exchange_sweep": _nb_exchange_sweep,
    }
else:
    _NUMBA_BACKEND = None

_ACTIVE = _NUMBA_BACKEND if _HAVE_NUMBA else _NUMPY_BACKEND


def backend_name() -> str:
    return "numba" if _ACTIVE is _NUMBA_BACKEND else "numpy"


def backends() -> dict:
    """All available backends, for equivalence tests and benchmarks."""
    out = {"numpy": _NUMPY_BACKEND}
    if _NUMBA_BACKEND is not None:
        out["numba"] = _NUMBA_BACKEND
    return out


# ---------------------------------------------------------------------------
# public dispatchers
# ---------------------------------------------------------------------------


def rank_table(ind: np.ndarray, n: int) -> np.ndarray:
    """Per-mask rank array for an independence table (empty set must be independent)."""
    return _ACTIVE["rank_table"](ind, n)


def hereditary_violation(ind: np.ndarray, n: int) -> tuple[int, int]:
    """First (set, element) with the set independent but set-minus-element not; (-1,-1) if hereditary."""
    s, e = _ACTIVE["hereditary_violation"](ind, n)
    return int(s), int(e)


def exchange_violation(ind: np.ndarray, n: int) -> tuple[int, int]:
    """First independent pair (S, T), |S| < |T|, admitting no single-element augmentation of S from T."""
    ind_masks = np.nonzero(ind)[0].astype(np.int64)
    s, t = _ACTIVE["exchange_violation"](ind_masks, ind, n)
    return int(s), int(t)


def submodularity_violation(rank: np.ndarray, n: int) -> tuple[int, int]:
    """First (A, B) with rank[A]+rank[B] < rank[A|B]+rank[A&B]; (-1,-1) if submodular."""
    a, b = _ACTIVE["submodularity_violation"](rank, n)
    return int(a), int(b)


def valid_exchange_targets(ind: np.ndarray, i1: int, i2: int, x: int) -> np.ndarray:
    """All submasks y of i2 with (i1\\x)|y and (i2\\y)|x both independent, ascending."""
    out = _ACTIVE["valid_exchange_targets"](ind, np.int64(i1), np.int64(i2), np.int64(x))
    return np.sort(out)


def exchange_sweep(ind: np.ndarray, n: int) -> tuple[int, tuple[int, int, int] | None]:
    """Exhaustive existence check over every independent (I1, I2) and every X <= I1.

    Returns (number of triples checked, first triple with no valid Y or None).
    """
    ind_masks = np.nonzero(ind)[0].astype(np.int64)
    triples, i1, i2, x = _ACTIVE["exchange_sweep"](ind_masks, ind, n)
    if int(i1) < 0:
        return int(triples), None
    return int(triples), (int(i1), int(i2), int(x))
