"""Longest Lyndon words per position, Lyndon predicates and factorization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .core import Order, TextLike, as_order, as_text
from .suffix import SuffixContext, build_suffix_context


@njit(cache=True)
def _longest_lyndon(isa, n):
    """Right-to-left stack scan over ``w$``.

    The stack holds the Lyndon factorization of the current suffix; the
    new factor absorbs the top while its suffix rank is smaller.  The ``$``
    factor may be absorbed too (it is the largest symbol under the
    descending order), so ``end[i]`` can be ``n + 1``.
    """
    end = np.zeros(n + 2, np.int32)
    end[n + 1] = n + 1
    st_i = np.empty(n + 1, np.int32)
    st_j = np.empty(n + 1, np.int32)
    st_i[0] = n + 1
    st_j[0] = n + 1
    top = 0
    pops = 0
    for i in range(n, 0, -1):
        j = i
        while top >= 0 and isa[i] < isa[st_i[top]]:
            j = st_j[top]
            top -= 1
            pops += 1
        top += 1
        st_i[top] = i
        st_j[top] = j
        end[i] = j
    return end, pops


@dataclass(frozen=True)
class LyndonArray:
    """``end0[i]``/``end1[i]``: end of the longest Lyndon word of ``w$`` at ``i``.

    Arrays are indexed by 1-based position and have length ``n + 2``;
    slot ``n + 1`` describes ``$`` itself and slot 0 is unused.
    """

    n: int
    end0: np.ndarray
    end1: np.ndarray
    pops0: int = 0
    pops1: int = 0

    def end(self, order: "Order | int") -> np.ndarray:
        return self.end1 if int(order) == 1 else self.end0

    def ends(self, order: "Order | int") -> np.ndarray:
        """Ends for positions ``1..n`` as a view."""
        return self.end(order)[1 : self.n + 1]

    def pops(self, order: "Order | int") -> int:
        return self.pops1 if int(order) == 1 else self.pops0


def longest_lyndon_array(
    text: TextLike, ctx: SuffixContext | None = None, order: "Order | int" = Order.ASCENDING
) -> np.ndarray:
    """End positions of the longest Lyndon word of ``w$`` starting at ``1..n``."""
    text = as_text(text)
    ctx = ctx if ctx is not None else build_suffix_context(text)
    end, _ = _longest_lyndon(ctx.isa(as_order(order)), text.n)
    return end[1 : text.n + 1]


def compute_lyndon_array(text: TextLike, ctx: SuffixContext | None = None) -> LyndonArray:
    text = as_text(text)
    ctx = ctx if ctx is not None else build_suffix_context(text)
    end0, pops0 = _longest_lyndon(ctx.isa0, text.n)
    end1, pops1 = _longest_lyndon(ctx.isa1, text.n)
    return LyndonArray(text.n, end0, end1, int(pops0), int(pops1))


def _keys(s: Sequence, order: Order) -> list:
    if isinstance(s, (bytes, bytearray)):
        s = list(s)
    if order is Order.ASCENDING:
        return list(s)
    return [_Reversed(c) for c in s]


class _Reversed:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return other.v < self.v

    def __gt__(self, other):
        return self.v < other.v

    def __eq__(self, other):
        return self.v == other.v

    def __le__(self, other):
        return not self > other


def is_lyndon(s: Sequence, order: "Order | int" = Order.ASCENDING) -> bool:
    """True iff ``s`` is strictly smaller than each of its proper suffixes."""
    if len(s) == 0:
        raise ValueError("empty sequence")
    k = _keys(s, as_order(order))
    return all(k < k[q:] for q in range(1, len(k)))


def duval_factorization(s: Sequence, order: "Order | int" = Order.ASCENDING) -> list:
    """Lyndon factorization of ``s`` (Duval's scan); factors are slices of ``s``."""
    k = _keys(s, as_order(order))
    n = len(k)
    out = []
    start = 0
    while start < n:
        i, j = start, start + 1
        while j < n and not (k[j] < k[i]):
            i = start if k[i] < k[j] else i + 1
            j += 1
        step = j - i
        while start <= i:
            out.append(s[start : start + step])
            start += step
    return out
