"""Shared domain types: texts, the two symbol orders, intervals and runs.

Positions exposed by the public API are 1-based and inclusive.  Position
``n + 1`` is the end sentinel ``$`` appended to the text, and position ``0``
is the start sentinel ``#`` used by the Lyndon trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

Rational = Fraction

TextLike = Union["Text", str, bytes, bytearray, Sequence[int], np.ndarray]


class Order(IntEnum):
    """One of the two opposite total orders on the alphabet.

    ``ASCENDING`` (``ell = 0``) ranks symbols by their code and puts ``$``
    below every symbol.  ``DESCENDING`` (``ell = 1``) is its exact reverse,
    so ``$`` sits above every symbol.
    """

    ASCENDING = 0
    DESCENDING = 1

    @property
    def ell(self) -> int:
        return int(self)

    @property
    def complement(self) -> "Order":
        return Order(1 - int(self))

    def compare(self, a: int, b: int) -> int:
        """Return -1, 0 or 1 as ``a`` precedes, equals or follows ``b``."""
        if a == b:
            return 0
        less = a < b if self is Order.ASCENDING else a > b
        return -1 if less else 1

    def key(self, symbol: int) -> int:
        return symbol if self is Order.ASCENDING else -symbol


def as_order(order: "Order | int") -> Order:
    if isinstance(order, Order):
        return order
    if order not in (0, 1):
        raise ValueError(f"order must be 0 or 1, got {order!r}")
    return Order(order)


@dataclass(frozen=True)
class Text:
    """A string over the integer alphabet ``[0, sigma)``.

    ``alphabet`` optionally records the original symbol for each code so
    substrings can be rendered back (see :meth:`render`).
    """

    chars: np.ndarray
    sigma: int
    alphabet: tuple = field(default=(), compare=False)

    def __post_init__(self):
        chars = np.ascontiguousarray(self.chars, dtype=np.int32)
        if chars.ndim != 1:
            raise ValueError("text must be one-dimensional")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if chars.size and (chars.min() < 0 or chars.max() >= self.sigma):
            raise ValueError(f"symbols must lie in [0, {self.sigma})")
        chars.setflags(write=False)
        object.__setattr__(self, "chars", chars)

    @property
    def n(self) -> int:
        return int(self.chars.shape[0])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Text):
            return NotImplemented
        return self.sigma == other.sigma and np.array_equal(self.chars, other.chars)

    def __hash__(self) -> int:
        return hash((self.sigma, self.chars.tobytes()))

    @classmethod
    def from_symbols(cls, symbols: Iterable) -> "Text":
        """Rank-compress arbitrary comparable symbols into ``[0, sigma)``.

        The relative order of symbols is preserved, so the ascending order
        on codes is the natural order on the symbols.
        """
        symbols = list(symbols)
        alphabet = tuple(sorted(set(symbols)))
        rank = {s: r for r, s in enumerate(alphabet)}
        chars = np.fromiter((rank[s] for s in symbols), dtype=np.int32, count=len(symbols))
        return cls(chars, len(alphabet), alphabet)

    @classmethod
    def from_bytes(cls, data: bytes) -> "Text":
        if not data:
            return cls(np.zeros(0, dtype=np.int32), 0, ())
        raw = np.frombuffer(bytes(data), dtype=np.uint8)
        present = np.flatnonzero(np.bincount(raw, minlength=256))
        lookup = np.zeros(256, dtype=np.int32)
        lookup[present] = np.arange(present.size, dtype=np.int32)
        return cls(lookup[raw], int(present.size), tuple(bytes([b]) for b in present))

    def render(self, i: int, j: int) -> str:
        """Render the 1-based inclusive substring ``[i..j]`` as text."""
        parts = []
        for c in self.chars[i - 1 : j]:
            sym = self.alphabet[c] if self.alphabet else int(c)
            if isinstance(sym, bytes):
                sym = sym.decode("ascii", errors="backslashreplace")
            parts.append(str(sym))
        return "".join(parts)

    def distinct(self) -> int:
        return int(np.unique(self.chars).size) if self.n else 0


def as_text(value: TextLike) -> Text:
    """Coerce strings, bytes and integer sequences into a :class:`Text`."""
    if isinstance(value, Text):
        return value
    if isinstance(value, (bytes, bytearray)):
        return Text.from_bytes(bytes(value))
    if isinstance(value, str):
        return Text.from_symbols(value)
    arr = np.asarray(value)
    if arr.size == 0:
        return Text(np.zeros(0, dtype=np.int32), 0, ())
    if not np.issubdtype(arr.dtype, np.integer):
        return Text.from_symbols(value)
    if arr.min() < 0:
        raise ValueError("integer symbols must be non-negative")
    return Text(arr.astype(np.int32), int(arr.max()) + 1, ())


class Interval(NamedTuple):
    i: int
    j: int

    def __len__(self) -> int:  # type: ignore[override]
        return self.j - self.i + 1

    def __str__(self) -> str:
        return f"[{self.i}..{self.j}]"


@dataclass(frozen=True, order=True)
class Run:
    """A maximal repetition ``w[start..end]`` with smallest period ``period``."""

    start: int
    end: int
    period: int

    def __post_init__(self):
        if self.start < 1 or self.period < 1:
            raise ValueError(f"invalid run {self.as_tuple()}")
        if 2 * self.period > self.end - self.start + 1:
            raise ValueError(f"run {self.as_tuple()} has exponent below 2")

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.start, self.end, self.period)

    def __str__(self) -> str:
        return f"({self.start},{self.end},{self.period})"


def rational_sum(values: Iterable[Fraction]) -> Fraction:
    return sum(values, Fraction(0))


def map_symbols(text: TextLike, order: "Order | int", prepend_hash: bool = False) -> np.ndarray:
    """Encode ``w$`` (or ``#w$``) so integer comparison realizes ``order``.

    Without ``#`` the result has length ``n + 1``; with it, ``n + 2`` and
    index ``k`` holds position ``k`` of ``#w$``.
    """
    text = as_text(text)
    order = as_order(order)
    c = text.chars.astype(np.int64)
    if order is Order.ASCENDING:
        off = 2 if prepend_hash else 1
        body = c + off
        dollar = 1 if prepend_hash else 0
    else:
        body = text.sigma - c
        dollar = text.sigma + 1
    parts = [body, [dollar]]
    if prepend_hash:
        parts.insert(0, [0])
    return np.concatenate(parts).astype(np.int32)
