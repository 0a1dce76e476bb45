"""Brute-force reference implementations.

Everything here works on plain Python sequences with direct comparisons.
Nothing is imported from the fast paths, so a defect there cannot be
masked by a shared helper.
"""

from __future__ import annotations

from typing import Sequence

MAX_N = 2000


def _guard(n: int) -> None:
    if n > MAX_N:
        raise ValueError(f"oracle input too long ({n} > {MAX_N})")


def _symbols(text) -> list:
    if isinstance(text, (bytes, bytearray)):
        return list(text)
    if isinstance(text, str):
        return [ord(c) for c in text]
    if hasattr(text, "chars"):
        return [int(c) for c in text.chars]
    return list(text)


def naive_smallest_period(s: Sequence) -> int:
    """Smallest ``p >= 1`` with ``s[k] == s[k + p]`` wherever both exist."""
    s = list(s)
    if not s:
        raise ValueError("empty sequence")
    n = len(s)
    for p in range(1, n + 1):
        if all(s[k] == s[k + p] for k in range(n - p)):
            return p
    return n  # unreachable


def smallest_periods_from(s: Sequence, i: int) -> list[int]:
    """Smallest periods of ``s[i..j]`` for every ``j >= i`` (0-based).

    Uses the prefix (failure) function of ``s[i:]``: the smallest period of
    a prefix of length ``L`` is ``L`` minus its longest proper border.
    """
    t = list(s[i:])
    border = [0] * len(t)
    out = [1] * len(t)
    k = 0
    for q in range(1, len(t)):
        while k > 0 and t[q] != t[k]:
            k = border[k - 1]
        if t[q] == t[k]:
            k += 1
        border[q] = k
        out[q] = q + 1 - k
    return out


def all_smallest_periods(s: Sequence) -> list[list[int]]:
    """``table[i][j - i]`` = smallest period of ``s[i..j]`` (0-based)."""
    s = list(s)
    _guard(len(s))
    return [smallest_periods_from(s, i) for i in range(len(s))]


def naive_runs(text) -> set[tuple[int, int, int]]:
    """All runs ``(i, j, p)`` (1-based) by checking every interval."""
    w = _symbols(text)
    n = len(w)
    _guard(n)
    out = set()
    for a in range(n):
        periods = smallest_periods_from(w, a)
        for b in range(a + 1, n):
            p = periods[b - a]
            if 2 * p > b - a + 1:
                continue
            if a > 0 and w[a - 1] == w[a + p - 1]:
                continue
            if b < n - 1 and w[b + 1] == w[b - p + 1]:
                continue
            out.add((a + 1, b + 1, p))
    return out


def _hat(text, ell: int) -> list:
    # w$ as sort keys: '$' below every symbol for ell = 0, above for ell = 1
    w = _symbols(text)
    if ell == 0:
        return [(1, c) for c in w] + [(0, 0)]
    return [(0, -c) for c in w] + [(1, 0)]


def naive_is_lyndon(keys: Sequence) -> bool:
    """Strictly smaller than every proper suffix, by direct comparison."""
    keys = list(keys)
    return bool(keys) and all(keys < keys[q:] for q in range(1, len(keys)))


_is_lyndon = naive_is_lyndon


def naive_longest_lyndon(text, ell: int, i: int) -> int:
    """Largest ``j <= n + 1`` with ``w$[i..j]`` Lyndon under order ``ell``."""
    hat = _hat(text, ell)
    _guard(len(hat))
    if not 1 <= i <= len(hat) - 1:
        raise IndexError(f"position {i} outside [1, {len(hat) - 1}]")
    for j in range(len(hat), i - 1, -1):
        if _is_lyndon(hat[i - 1 : j]):
            return j
    return i  # unreachable: single symbols are Lyndon


def naive_duval_first(keys: list) -> int:
    """Length of the longest Lyndon prefix, by testing every prefix."""
    for q in range(len(keys), 0, -1):
        if _is_lyndon(keys[:q]):
            return q
    return 0


def naive_lyndon_tree(s: Sequence, offset: int = 0):
    """Lyndon tree by recursive standard factorization.

    ``s`` must already compare correctly under ``<`` (e.g. the encoded
    ``#w$``).  Leaves are positions ``offset + k``; internal nodes are
    ``(left, right)`` pairs.
    """
    s = list(s)
    _guard(len(s))
    if not s or not _is_lyndon(s):
        raise ValueError("input is not a Lyndon word")

    def build(lo: int, hi: int):
        if hi - lo == 1:
            return offset + lo
        best = lo + 1
        for q in range(lo + 2, hi):
            if s[q:hi] < s[best:hi]:
                best = q
        return (build(lo, best), build(best, hi))

    return build(0, len(s))


def encode_with_sentinels(text, ell: int) -> list:
    """``#w$`` as sort keys for order ``ell`` (``#`` smallest in both)."""
    return [(-1, 0)] + _hat(text, ell)


def naive_tree_of_text(text, ell: int):
    return naive_lyndon_tree(encode_with_sentinels(text, ell))
