"""Suffix arrays, LCP arrays, range minima and LCE/LCS queries.

Suffix arrays are built with SA-IS (induced sorting), which is linear for
integer alphabets.  ``suffix_array_doubling`` is an independent
``O(n log n)`` prefix-doubling construction kept for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import Order, TextLike, as_text, map_symbols

# ---------------------------------------------------------------------------
# SA-IS kernels.  Inputs end with a unique smallest symbol 0.


@njit(cache=True)
def _classify(s):
    n = s.shape[0]
    t = np.zeros(n, np.uint8)
    t[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and t[i + 1] == 1):
            t[i] = 1
    return t


@njit(cache=True, inline="always")
def _is_lms(t, i):
    return i > 0 and t[i] == 1 and t[i - 1] == 0


@njit(cache=True)
def _buckets(s, k, tails):
    cnt = np.zeros(k, np.int64)
    for c in s:
        cnt[c] += 1
    b = np.empty(k, np.int64)
    total = 0
    for c in range(k):
        total += cnt[c]
        b[c] = total if tails else total - cnt[c]
    return b


@njit(cache=True)
def _induce(s, t, sa, k):
    n = s.shape[0]
    b = _buckets(s, k, False)
    for r in range(n):
        j = sa[r] - 1
        if j >= 0 and t[j] == 0:
            sa[b[s[j]]] = j
            b[s[j]] += 1
    b = _buckets(s, k, True)
    for r in range(n - 1, -1, -1):
        j = sa[r] - 1
        if j >= 0 and t[j] == 1:
            b[s[j]] -= 1
            sa[b[s[j]]] = j


@njit(cache=True)
def _sort_lms_substrings(s, t, k):
    n = s.shape[0]
    sa = np.full(n, -1, np.int32)
    b = _buckets(s, k, True)
    for i in range(1, n):
        if _is_lms(t, i):
            b[s[i]] -= 1
            sa[b[s[i]]] = i
    _induce(s, t, sa, k)
    return sa


@njit(cache=True)
def _name_lms(s, t, sa):
    """Name sorted LMS substrings; returns (reduced string, positions, #names)."""
    n = s.shape[0]
    n1 = 0
    for r in range(n):
        if _is_lms(t, sa[r]):
            sa[n1] = sa[r]
            n1 += 1
    for r in range(n1, n):
        sa[r] = -1
    name = 0
    prev = -1
    for r in range(n1):
        pos = sa[r]
        diff = prev == -1
        if not diff:
            d = 0
            while True:
                if s[pos + d] != s[prev + d] or t[pos + d] != t[prev + d]:
                    diff = True
                    break
                if d > 0 and (_is_lms(t, pos + d) or _is_lms(t, prev + d)):
                    break
                d += 1
        if diff:
            name += 1
            prev = pos
        sa[n1 + pos // 2] = name - 1
    s1 = np.empty(n1, np.int32)
    p1 = np.empty(n1, np.int32)
    q = 0
    for r in range(n1, n):
        if sa[r] >= 0:
            s1[q] = sa[r]
            q += 1
    q = 0
    for i in range(1, n):
        if _is_lms(t, i):
            p1[q] = i
            q += 1
    return s1, p1, name


@njit(cache=True)
def _place_sorted_lms(s, t, sa1, p1, k):
    n = s.shape[0]
    sa = np.full(n, -1, np.int32)
    b = _buckets(s, k, True)
    for r in range(sa1.shape[0] - 1, -1, -1):
        j = p1[sa1[r]]
        b[s[j]] -= 1
        sa[b[s[j]]] = j
    _induce(s, t, sa, k)
    return sa


def _sais(s: np.ndarray, k: int) -> np.ndarray:
    n = s.shape[0]
    if n == 1:
        return np.zeros(1, np.int32)
    t = _classify(s)
    sa = _sort_lms_substrings(s, t, k)
    s1, p1, names = _name_lms(s, t, sa)
    if names < s1.shape[0]:
        sa1 = _sais(s1, names)
    else:
        sa1 = np.empty(s1.shape[0], np.int32)
        sa1[s1] = np.arange(s1.shape[0], dtype=np.int32)
    return _place_sorted_lms(s, t, sa1, p1, k)


def suffix_array(x) -> np.ndarray:
    """0-based suffix array of a non-negative integer sequence (SA-IS).

    A suffix that is a proper prefix of another sorts first.
    """
    x = np.asarray(x, dtype=np.int64)
    if x.size == 0:
        return np.zeros(0, np.int32)
    y = np.empty(x.size + 1, np.int32)
    y[:-1] = x + 1
    y[-1] = 0
    return _sais(y, int(y.max()) + 1)[1:]


def suffix_array_doubling(x) -> np.ndarray:
    """0-based suffix array by prefix doubling; reference construction."""
    x = np.asarray(x, dtype=np.int64)
    n = x.size
    if n == 0:
        return np.zeros(0, np.int32)
    rank = np.unique(x, return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, np.int64)
        second[: n - k] = rank[k:] if k < n else second[:0]
        order = np.lexsort((second, rank))
        r1, r2 = rank[order], second[order]
        step = np.empty(n, np.int64)
        step[0] = 0
        step[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new_rank = np.empty(n, np.int64)
        new_rank[order] = np.cumsum(step)
        rank = new_rank
        if rank.max() == n - 1:
            return order.astype(np.int32)
        k *= 2


@njit(cache=True)
def _kasai(s, sa, rank):
    n = s.shape[0]
    lcp = np.zeros(n, np.int32)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and s[i + h] == s[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp


def lcp_array(x, sa: np.ndarray) -> np.ndarray:
    """``lcp[k]`` = common prefix length of suffixes ``sa[k-1]`` and ``sa[k]``."""
    x = np.ascontiguousarray(x, dtype=np.int32)
    rank = np.empty_like(sa)
    rank[sa] = np.arange(sa.size, dtype=np.int32)
    return _kasai(x, sa, rank)


# ---------------------------------------------------------------------------
# Range minimum: a sparse table over block minima plus in-block prefix and
# suffix minima.  A query spanning two or more blocks costs three lookups; a
# query inside one block scans at most BLOCK values.

BLOCK = 32


@njit(cache=True)
def _build_rmq(values, block):
    m = values.shape[0]
    nb = (m + block - 1) // block
    lg = np.zeros(nb + 1, np.int64)
    for x in range(2, nb + 1):
        lg[x] = lg[x // 2] + 1
    levels = lg[nb] + 1 if nb > 0 else 1
    table = np.empty((levels, max(nb, 1)), values.dtype)
    pre = np.empty_like(values)
    suf = np.empty_like(values)
    for b in range(nb):
        lo = b * block
        hi = min(lo + block, m)
        cur = values[lo]
        for x in range(lo, hi):
            if values[x] < cur:
                cur = values[x]
            pre[x] = cur
        table[0, b] = cur
        cur = values[hi - 1]
        for x in range(hi - 1, lo - 1, -1):
            if values[x] < cur:
                cur = values[x]
            suf[x] = cur
    for lv in range(1, levels):
        half = 1 << (lv - 1)
        for b in range(nb - (1 << lv) + 1):
            a = table[lv - 1, b]
            c = table[lv - 1, b + half]
            table[lv, b] = a if a < c else c
    return table, lg, pre, suf


@njit(cache=True, inline="always")
def _rmq(values, table, lg, pre, suf, block, lo, hi):
    bl = lo // block
    bh = hi // block
    if bl == bh:
        cur = values[lo]
        for x in range(lo + 1, hi + 1):
            if values[x] < cur:
                cur = values[x]
        return cur
    cur = suf[lo]
    if pre[hi] < cur:
        cur = pre[hi]
    if bl + 1 <= bh - 1:
        k = lg[bh - bl - 1]
        a = table[k, bl + 1]
        c = table[k, bh - (1 << k)]
        if a < cur:
            cur = a
        if c < cur:
            cur = c
    return cur


class RangeMin:
    """Constant-time range minimum over a fixed integer array."""

    def __init__(self, values: np.ndarray, block: int = BLOCK):
        self.values = np.ascontiguousarray(values)
        self.block = block
        if self.values.size:
            self.table, self.lg, self.pre, self.suf = _build_rmq(self.values, block)
        else:
            self.table = np.zeros((1, 1), self.values.dtype)
            self.lg = np.zeros(1, np.int64)
            self.pre = self.suf = self.values

    def __len__(self) -> int:
        return int(self.values.size)

    def query(self, lo: int, hi: int):
        """Minimum of ``values[lo..hi]`` (0-based, inclusive)."""
        if not 0 <= lo <= hi < self.values.size:
            raise IndexError(f"range [{lo}, {hi}] outside [0, {self.values.size})")
        return _rmq(self.values, self.table, self.lg, self.pre, self.suf, self.block, lo, hi)

    @property
    def parts(self):
        return self.values, self.table, self.lg, self.pre, self.suf, self.block


# ---------------------------------------------------------------------------


@njit(cache=True, inline="always")
def _lce_kernel(isa, values, table, lg, pre, suf, block, n, i, j):
    # isa is indexed by 1-based position; i, j in 1..n
    if i == j:
        return n - i + 1
    a = isa[i]
    b = isa[j]
    if a > b:
        a, b = b, a
    return _rmq(values, table, lg, pre, suf, block, a + 1, b)


def _padded_isa(sa: np.ndarray) -> np.ndarray:
    """Inverse of a 0-based suffix array of ``w$``, indexed by 1-based position.

    Slot 0 holds -1, so the array doubles as the rank array of ``#w$`` with
    ``#`` ranked below every suffix.
    """
    isa = np.empty(sa.size + 1, np.int32)
    isa[0] = -1
    isa[sa + 1] = np.arange(sa.size, dtype=np.int32)
    return isa


@dataclass(frozen=True)
class SuffixContext:
    """Suffix structures of ``w$`` for both orders and of the reversed text.

    ``sa0``/``sa1`` list 1-based positions; ``isa0``/``isa1`` are indexed by
    1-based position (slot 0 is -1).  ``lcp`` and ``rmq`` belong to the
    ascending order; LCE values do not depend on the order.
    """

    n: int
    sa0: np.ndarray
    isa0: np.ndarray
    sa1: np.ndarray
    isa1: np.ndarray
    lcp: np.ndarray
    rmq: RangeMin
    rev_isa: np.ndarray
    rev_lcp: np.ndarray
    rev_rmq: RangeMin

    def isa(self, order: "Order | int") -> np.ndarray:
        return self.isa1 if int(order) == 1 else self.isa0

    def sa(self, order: "Order | int") -> np.ndarray:
        return self.sa1 if int(order) == 1 else self.sa0

    def _check(self, i: int, j: int) -> None:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"positions ({i}, {j}) outside [1, {self.n}]")

    def lce(self, i: int, j: int) -> int:
        """Length of the longest common prefix of ``w[i..n]`` and ``w[j..n]``."""
        self._check(i, j)
        return int(_lce_kernel(self.isa0, *self.rmq.parts, self.n, i, j))

    def lcs(self, i: int, j: int) -> int:
        """Length of the longest common suffix of ``w[1..i]`` and ``w[1..j]``."""
        self._check(i, j)
        n = self.n
        return int(_lce_kernel(self.rev_isa, *self.rev_rmq.parts, n, n - i + 1, n - j + 1))


def build_suffix_context(text: TextLike) -> SuffixContext:
    text = as_text(text)
    if text.n == 0:
        raise ValueError("empty input")
    hat0 = map_symbols(text, Order.ASCENDING)
    hat1 = map_symbols(text, Order.DESCENDING)
    sa0 = suffix_array(hat0)
    sa1 = suffix_array(hat1)
    lcp = lcp_array(hat0, sa0)

    rev = np.empty_like(hat0)
    rev[:-1] = hat0[-2::-1]
    rev[-1] = hat0[-1]
    rsa = suffix_array(rev)
    rlcp = lcp_array(rev, rsa)

    return SuffixContext(
        n=text.n,
        sa0=sa0 + 1,
        isa0=_padded_isa(sa0),
        sa1=sa1 + 1,
        isa1=_padded_isa(sa1),
        lcp=lcp,
        rmq=RangeMin(lcp),
        rev_isa=_padded_isa(rsa),
        rev_lcp=rlcp,
        rev_rmq=RangeMin(rlcp),
    )
