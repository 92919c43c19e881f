"""Integer-array kernels behind the match-length and LCS computations.

Every kernel is written as a plain Python function over numpy arrays and
compiled with numba when available.  Setting ``SIMPEVAL_NO_NUMBA=1`` (or
running without numba installed) selects the interpreted fallback path; the
results are identical either way, only the speed differs.  See
``benchmarks/bench_sup.py`` for a comparison of the two paths.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit as _numba_njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    _HAVE_NUMBA = False

NUMBA_ENABLED = _HAVE_NUMBA and os.environ.get("SIMPEVAL_NO_NUMBA", "") not in (
    "1",
    "true",
    "yes",
)

if NUMBA_ENABLED:
    def njit(func):
        return _numba_njit(cache=True)(func)
else:
    def njit(func):
        return func


@njit
def naive_match_lengths(ids, n_eval):
    """Shortest-unique-prefix lengths by exhaustive scan, O(T^2).

    For each position i in 1..n_eval, finds the longest k such that the
    prefix of length k starting at i also starts at some j < i (the match
    may run past i: overlapping matches count), and reports k + 1.  When
    every prefix up to the end of the data reappears, the result is the
    remaining length + 1.
    """
    t = ids.shape[0]
    out = np.empty(n_eval, np.int64)
    for idx in range(n_eval):
        i = idx + 1
        remaining = t - i
        best = 0
        for j in range(i):
            k = 0
            while i + k < t and ids[j + k] == ids[i + k]:
                k += 1
            if k > best:
                best = k
                if best == remaining:
                    break  # no longer match exists
        out[idx] = best + 1
    return out


@njit
def _suffix_array_doubling(ids):
    """Suffix array by prefix doubling with counting sorts, O(T log T).

    ``ids`` must be dense non-negative integers (< T).
    """
    n = ids.shape[0]
    rank = ids.astype(np.int64)
    sa = np.empty(n, np.int64)
    order2 = np.empty(n, np.int64)
    new_rank = np.empty(n, np.int64)
    cnt = np.zeros(n + 2, np.int64)

    # initial order by single-token rank
    for i in range(n):
        cnt[rank[i] + 1] += 1
    for v in range(1, n + 2):
        cnt[v] += cnt[v - 1]
    for i in range(n):
        sa[cnt[rank[i]]] = i
        cnt[rank[i]] += 1

    k = 1
    while k < n:
        # second key: rank of the suffix k positions later, +1 so "none" is 0
        cnt[:] = 0
        for i in range(n):
            key2 = rank[i + k] + 1 if i + k < n else 0
            cnt[key2 + 1] += 1
        for v in range(1, n + 2):
            cnt[v] += cnt[v - 1]
        for i in range(n):
            key2 = rank[i + k] + 1 if i + k < n else 0
            order2[cnt[key2]] = i
            cnt[key2] += 1
        # stable sort by first key
        cnt[:] = 0
        for i in range(n):
            cnt[rank[i] + 1] += 1
        for v in range(1, n + 2):
            cnt[v] += cnt[v - 1]
        for t in range(n):
            i = order2[t]
            sa[cnt[rank[i]]] = i
            cnt[rank[i]] += 1
        # re-rank
        prev = sa[0]
        new_rank[prev] = 0
        r = 0
        for t in range(1, n):
            cur = sa[t]
            cur2 = rank[cur + k] + 1 if cur + k < n else 0
            prev2 = rank[prev + k] + 1 if prev + k < n else 0
            if rank[cur] != rank[prev] or cur2 != prev2:
                r += 1
            new_rank[cur] = r
            prev = cur
        rank[:] = new_rank
        if r == n - 1:
            break
        k <<= 1
    return sa


def _suffix_array_lexsort(ids):
    """Vectorized prefix doubling via np.lexsort, O(T log^2 T)."""
    n = ids.shape[0]
    rank = ids.astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while k < n:
        key2 = np.full(n, -1, np.int64)
        key2[: n - k] = rank[k:]
        sa = np.lexsort((key2, rank))
        hi = rank[sa]
        lo = key2[sa]
        changed = np.empty(n, np.int64)
        changed[0] = 0
        changed[1:] = (hi[1:] != hi[:-1]) | (lo[1:] != lo[:-1])
        dense = np.cumsum(changed)
        rank = np.empty(n, np.int64)
        rank[sa] = dense
        if dense[-1] == n - 1:
            break
        k <<= 1
    return sa


@njit
def lcp_kasai(ids, sa):
    """LCP array for ``sa``: lcp[r] = lcp(suffix sa[r], suffix sa[r-1])."""
    n = ids.shape[0]
    rank = np.empty(n, np.int64)
    for r in range(n):
        rank[sa[r]] = r
    lcp = np.zeros(n, np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and ids[i + h] == ids[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        else:
            h = 0
    return lcp


@njit
def longest_previous_factor(sa, lcp):
    """LPF via one stack pass over (SA, LCP).

    lpf[p] = longest match between the suffix at text position p and any
    substring starting at a position < p (overlap allowed).
    """
    n = sa.shape[0]
    lpf = np.zeros(n, np.int64)
    lcp_m = lcp.copy()
    stack = np.empty(n + 1, np.int64)  # SA ranks
    top = -1
    top += 1
    stack[top] = 0
    for r in range(1, n + 1):
        if r < n:
            cur_sa = sa[r]
            cur_lcp = lcp_m[r]
        else:
            cur_sa = -1  # sentinel flushes the stack
            cur_lcp = 0
        while top >= 0:
            t = stack[top]
            if cur_sa < sa[t]:
                if lcp_m[t] > cur_lcp:
                    lpf[sa[t]] = lcp_m[t]
                else:
                    lpf[sa[t]] = cur_lcp
                    cur_lcp = lcp_m[t]
                top -= 1
            elif cur_lcp <= lcp_m[t]:
                lpf[sa[t]] = lcp_m[t]
                top -= 1
            else:
                break
        if r < n:
            top += 1
            stack[top] = r
            lcp_m[r] = cur_lcp
    return lpf


@njit
def lcs_length(a, b):
    """Longest common subsequence length, rolling-row DP, O(len(a)) memory."""
    m = a.shape[0]
    n = b.shape[0]
    if m == 0 or n == 0:
        return 0
    prev = np.zeros(m + 1, np.int64)
    cur = np.zeros(m + 1, np.int64)
    for j in range(1, n + 1):
        bj = b[j - 1]
        for i in range(1, m + 1):
            if a[i - 1] == bj:
                cur[i] = prev[i - 1] + 1
            elif prev[i] >= cur[i - 1]:
                cur[i] = prev[i]
            else:
                cur[i] = cur[i - 1]
        prev, cur = cur, prev
    return prev[m]


def suffix_array(ids: np.ndarray) -> np.ndarray:
    """Dispatch to the compiled or the vectorized suffix-array builder."""
    if NUMBA_ENABLED:
        # the counting sorts need ids in [0, n); re-label monotonically when
        # the caller passes a sparser vocabulary
        if ids.size and (ids.min() < 0 or ids.max() >= ids.size):
            _, dense = np.unique(ids, return_inverse=True)
            ids = dense.astype(np.int64)
        return _suffix_array_doubling(ids)
    return _suffix_array_lexsort(ids)


def indexed_match_lengths(ids: np.ndarray, n_eval: int) -> np.ndarray:
    """Same output as :func:`naive_match_lengths` via SA + LCP + LPF."""
    sa = suffix_array(ids)
    lcp = lcp_kasai(ids, sa)
    lpf = longest_previous_factor(sa, lcp)
    return lpf[1 : n_eval + 1] + 1


def max_repeated_span(ids: np.ndarray) -> int:
    """Length of the longest substring occurring at least twice."""
    if ids.shape[0] < 2:
        return 0
    sa = suffix_array(ids)
    lcp = lcp_kasai(ids, sa)
    return int(lcp.max())


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs (no-op on the fallback path)."""
    ids = np.array([0, 1, 0, 1, 0], np.int64)
    naive_match_lengths(ids, 2)
    indexed_match_lengths(ids, 2)
    lcs_length(ids, ids[:3])
