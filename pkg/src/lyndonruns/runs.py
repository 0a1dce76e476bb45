"""All runs of a text from longest-Lyndon candidates, plus derived counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

import numpy as np
from numba import njit

from .core import Interval, Order, Run, TextLike, as_order, as_text, map_symbols, rational_sum
from .lyndon import LyndonArray, compute_lyndon_array
from .suffix import SuffixContext, _lce_kernel, build_suffix_context


class RunCollisionError(AssertionError):
    """Two candidates produced the same interval with different periods."""


SCAN = 8


@njit(cache=True)
def _candidates(end, base, lo, hi, hat, isa0, fv, ft, flg, fpre, fsuf, risa, rv, rt, rlg, rpre, rsuf, block, n):
    """Extend candidates ``[i..end[i - base]]`` for ``lo <= i <= hi``.

    A candidate yields run ``(s, e, p)`` when the repetition of
    ``w[i..j]`` spans ``[s..e]`` with ``e - s + 1 >= 2p`` and
    ``s < i <= s + p``.  Each extension first compares up to SCAN symbols
    directly; only longer ones fall back to the constant-time LCE query.
    """
    m = hi - lo + 1
    starts = np.empty(m, np.int32)
    ends = np.empty(m, np.int32)
    roots = np.empty(m, np.int32)
    k = 0
    for i in range(lo, hi + 1):
        j = end[i - base]
        if j > n:
            continue
        p = j - i + 1
        left = 0
        if i > 1:
            # longest common suffix of w[1..i-1] and w[1..j]
            while left < SCAN and left < i - 1 and hat[i - 2 - left] == hat[j - 1 - left]:
                left += 1
            if left == SCAN:
                left = _lce_kernel(risa, rv, rt, rlg, rpre, rsuf, block, n, n - i + 2, n - j + 1)
        if left == 0 or left > p:
            continue
        right = 0
        if j < n:
            # hat[n] is the unique '$', so this scan stops there
            while right < SCAN and hat[i - 1 + right] == hat[j + right]:
                right += 1
            if right == SCAN:
                right = _lce_kernel(isa0, fv, ft, flg, fpre, fsuf, block, n, i, j + 1)
        if j + right - (i - left) + 1 >= 2 * p:
            starts[k] = i - left
            ends[k] = j + right
            roots[k] = i
            k += 1
    return starts[:k], ends[:k], roots[:k]


def _structures(ctx: SuffixContext) -> tuple:
    fv, ft, flg, fpre, fsuf, block = ctx.rmq.parts
    rv, rt, rlg, rpre, rsuf, rblock = ctx.rev_rmq.parts
    assert block == rblock
    return (ctx.isa0, fv, ft, flg, fpre, fsuf, ctx.rev_isa, rv, rt, rlg, rpre, rsuf, block)


@dataclass(frozen=True)
class RunSet:
    """Runs of one text, sorted by ``(start, end)``.

    Stored column-wise.  ``orders[k]`` is the order whose longest Lyndon
    words are the L-roots of run ``k``; ``roots[k]`` is the start of its
    leftmost L-root not at the run start.  ``collisions`` counts candidates
    that produced an already-seen run.
    """

    n: int
    starts: np.ndarray
    ends: np.ndarray
    periods: np.ndarray
    orders: np.ndarray
    roots: np.ndarray
    collisions: int = 0
    _index: dict = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return int(self.starts.size)

    def __iter__(self) -> Iterator[Run]:
        for s, e, p in zip(self.starts.tolist(), self.ends.tolist(), self.periods.tolist()):
            yield Run(s, e, p)

    def __getitem__(self, k: int) -> Run:
        return Run(int(self.starts[k]), int(self.ends[k]), int(self.periods[k]))

    @property
    def runs(self) -> list[Run]:
        return list(self)

    @property
    def index(self) -> dict:
        if self._index is None:
            idx = {(s, e): k for k, (s, e) in enumerate(zip(self.starts.tolist(), self.ends.tolist()))}
            object.__setattr__(self, "_index", idx)
        return self._index

    def find(self, start: int, end: int) -> Optional[int]:
        return self.index.get((start, end))

    def __contains__(self, run) -> bool:
        if isinstance(run, Run):
            run = run.as_tuple()
        k = self.find(run[0], run[1])
        return k is not None and int(self.periods[k]) == run[2]

    def as_set(self) -> set[tuple[int, int, int]]:
        return {r.as_tuple() for r in self}

    def order_of(self, k: int) -> Order:
        return Order(int(self.orders[k]))

    def exponent_sum(self) -> Fraction:
        return _exponent_sum(self.ends - self.starts + 1, self.periods)


def _exponent_sum(lengths: np.ndarray, periods: np.ndarray) -> Fraction:
    # one Fraction per distinct period keeps this exact and cheap
    if lengths.size == 0:
        return Fraction(0)
    perm = np.argsort(periods, kind="stable")
    p = periods[perm]
    heads = np.flatnonzero(np.r_[True, p[1:] != p[:-1]])
    sums = np.add.reduceat(lengths[perm].astype(np.int64), heads)
    return rational_sum(Fraction(int(s), int(q)) for s, q in zip(sums.tolist(), p[heads].tolist()))


def _empty(n: int) -> RunSet:
    z = np.zeros(0, np.int32)
    return RunSet(n, z, z, z, np.zeros(0, np.int8), z)


def run_order(text: TextLike, run: Run) -> Order:
    """The order ``l`` with ``w$[j+1]`` preceding ``w$[j+1-p]`` under it."""
    hat = map_symbols(as_text(text), Order.ASCENDING)
    after = hat[run.end]  # 0-based index of position end+1
    inside = hat[run.end - run.period]
    return Order.ASCENDING if after < inside else Order.DESCENDING


def candidate_to_run(
    text: TextLike, ctx: SuffixContext, candidate: Interval, order: "Order | int" = Order.ASCENDING
) -> Optional[Run]:
    """Run whose leftmost non-initial L-root is ``candidate``, if any.

    ``order`` does not enter the arithmetic; it documents which longest
    Lyndon array the candidate came from.
    """
    text = as_text(text)
    as_order(order)
    i, j = candidate
    n = text.n
    if not 1 <= i <= j <= n:
        return None
    hat = map_symbols(text, Order.ASCENDING)
    s, e, _ = _candidates(np.array([j], np.int32), i, i, i, hat, *_structures(ctx), n)
    if s.size == 0:
        return None
    return Run(int(s[0]), int(e[0]), j - i + 1)


def compute_all_runs(
    text: TextLike, ctx: SuffixContext | None = None, lyndon: LyndonArray | None = None
) -> RunSet:
    text = as_text(text)
    n = text.n
    if n == 0:
        raise ValueError("empty input")
    if text.distinct() == 1:
        if n < 2:
            return _empty(n)
        one = np.array([1], np.int32)
        return RunSet(n, one, np.array([n], np.int32), one, np.zeros(1, np.int8), one + 1)
    ctx = ctx if ctx is not None else build_suffix_context(text)
    lyndon = lyndon if lyndon is not None else compute_lyndon_array(text, ctx)
    parts = _structures(ctx)
    hat = map_symbols(text, Order.ASCENDING)

    cols = []
    for ell in (0, 1):
        s, e, r = _candidates(lyndon.end(ell), 0, 1, n, hat, *parts, n)
        cols.append((s, e, r, np.full(s.size, ell, np.int8)))
    starts = np.concatenate([c[0] for c in cols])
    ends = np.concatenate([c[1] for c in cols])
    roots = np.concatenate([c[2] for c in cols])
    orders = np.concatenate([c[3] for c in cols])
    periods = np.where(orders == 0, lyndon.end0[roots], lyndon.end1[roots]) - roots + 1

    perm = np.lexsort((ends, starts))
    starts, ends, periods, orders, roots = (a[perm] for a in (starts, ends, periods, orders, roots))
    dup = np.zeros(starts.size, bool)
    if starts.size > 1:
        dup[1:] = (starts[1:] == starts[:-1]) & (ends[1:] == ends[:-1])
    collisions = int(dup.sum())
    if collisions:
        prev = np.flatnonzero(dup) - 1
        if np.any(periods[prev] != periods[dup]):
            raise RunCollisionError("colliding candidates disagree on the period")
        keep = ~dup
        starts, ends, periods, orders, roots = (a[keep] for a in (starts, ends, periods, orders, roots))
    return RunSet(n, starts, ends, periods, orders, roots, collisions)


@dataclass(frozen=True)
class BrSet:
    """L-roots (w.r.t. ``order``) of a run, minus the one at the run start."""

    run: Run
    order: Order
    intervals: tuple[Interval, ...]

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def begins(self) -> frozenset[int]:
        return frozenset(iv.i for iv in self.intervals)


def br_set(text: TextLike, ctx: SuffixContext | None, run: Run, lyndon: LyndonArray | None = None) -> BrSet:
    text = as_text(text)
    if lyndon is None:
        lyndon = compute_lyndon_array(text, ctx)
    order = run_order(text, run)
    end = lyndon.end(order)
    p = run.period
    intervals = tuple(
        Interval(a, a + p - 1)
        for a in range(run.start + 1, run.end - p + 2)
        if end[a] == a + p - 1
    )
    return BrSet(run, order, intervals)


def all_br_sets(text: TextLike, runs: RunSet, lyndon: LyndonArray) -> list[BrSet]:
    text = as_text(text)
    return [br_set(text, None, r, lyndon) for r in runs]


@dataclass(frozen=True)
class RunStatistics:
    n: int
    distinct: int
    count: int
    exponent_sum: Fraction
    by_exponent: dict  # k -> (count, exponent sum) over runs with exponent >= k
    bounds: dict  # bound name -> bool

    @property
    def ok(self) -> bool:
        return all(self.bounds.values())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "distinct": self.distinct,
            "count": self.count,
            "sigma_num": self.exponent_sum.numerator,
            "sigma_den": self.exponent_sum.denominator,
            "by_exponent": {
                str(k): {"count": c, "sigma_num": s.numerator, "sigma_den": s.denominator}
                for k, (c, s) in sorted(self.by_exponent.items())
            },
            "bounds": dict(self.bounds),
        }


def statistics(rs: RunSet, text: TextLike, ks: Iterable[int] = (2, 3, 4)) -> RunStatistics:
    """Run count, exact exponent sum and the bound checks they must satisfy."""
    text = as_text(text)
    n = text.n
    d = text.distinct()
    lengths = (rs.ends - rs.starts + 1).astype(np.int64)
    periods = rs.periods.astype(np.int64)
    count = len(rs)
    sigma = _exponent_sum(lengths, periods)

    bounds = {
        "rho<n": count <= n - 1 if n >= 1 else count == 0,
        "sigma<=3n-3": sigma <= 3 * n - 3 if n >= 1 else sigma == 0,
        "rho(n,d)<=n-d": count <= n - d,
    }
    if n > 4:
        bounds["rho<=n-3"] = count <= n - 3
    if n > 2 * d:
        bounds["rho(n,d)<=n-d-1"] = count <= n - d - 1

    by_k = {}
    for k in ks:
        if k < 2:
            raise ValueError("exponent threshold k must be at least 2")
        sel = lengths >= k * periods
        ck = int(sel.sum())
        sk = _exponent_sum(lengths[sel], periods[sel])
        by_k[k] = (ck, sk)
        bounds[f"rho_{k}<n/(k-1)"] = Fraction(ck) < Fraction(n, k - 1)
        bounds[f"sigma_{k}<n(k+1)/(k-1)"] = sk < Fraction(n * (k + 1), k - 1)
    return RunStatistics(n, d, count, sigma, by_k, bounds)
