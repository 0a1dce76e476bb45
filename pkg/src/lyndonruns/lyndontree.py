"""Lyndon trees of ``#w$`` under both orders and 2-period queries.

Tree positions run from 0 (``#``) to ``n + 1`` (``$``) so positions
``1..n`` coincide with those of ``w``.  Node ids ``0..n+1`` are the leaves
(id = position); internal nodes get ids from ``n + 2`` upward.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from numba import njit

from .core import Interval, Order, Run, TextLike, as_order, as_text
from .lyndon import LyndonArray, compute_lyndon_array
from .runs import BrSet, RunSet, compute_all_runs
from .suffix import RangeMin, SuffixContext, build_suffix_context


class TreeInvariantError(AssertionError):
    """A run annotation contradicted the tree structure."""


@njit(cache=True)
def _build_tree(isa, n):
    # isa[0] = -1 ranks '#' first; isa[1..n+1] ranks the suffixes of w$
    m = n + 2
    total = 2 * m - 1
    start = np.empty(total, np.int32)
    end = np.empty(total, np.int32)
    left = np.full(total, -1, np.int32)
    right = np.full(total, -1, np.int32)
    parent = np.full(total, -1, np.int32)
    for v in range(m):
        start[v] = v
        end[v] = v
    stack = np.empty(m, np.int32)
    top = -1
    nxt = m
    for i in range(n + 1, -1, -1):
        cur = i
        while top >= 0 and isa[i] < isa[start[stack[top]]]:
            v = stack[top]
            top -= 1
            start[nxt] = i
            end[nxt] = end[v]
            left[nxt] = cur
            right[nxt] = v
            parent[cur] = nxt
            parent[v] = nxt
            cur = nxt
            nxt += 1
        top += 1
        stack[top] = cur
    return start, end, left, right, parent, stack[0], top


@njit(cache=True)
def _euler(left, right, root, total):
    size = 2 * total - 1
    keys = np.empty(size, np.int64)
    first = np.empty(total, np.int32)
    depth = np.zeros(total, np.int64)
    stack = np.empty(total, np.int32)
    state = np.zeros(total, np.int8)  # children already entered
    top = 0
    stack[0] = root
    k = 0
    first[root] = 0
    keys[0] = root
    k = 1
    while top >= 0:
        v = stack[top]
        if left[v] >= 0 and state[v] < 2:
            c = left[v] if state[v] == 0 else right[v]
            state[v] += 1
            depth[c] = depth[v] + 1
            first[c] = k
            keys[k] = depth[c] * total + c
            k += 1
            top += 1
            stack[top] = c
        else:
            top -= 1
            if top >= 0:
                u = stack[top]
                keys[k] = depth[u] * total + u
                k += 1
    return keys, first, depth


@dataclass(frozen=True)
class LyndonTree:
    order: Order
    n: int
    start: np.ndarray
    end: np.ndarray
    left: np.ndarray
    right: np.ndarray
    parent: np.ndarray
    root: int
    first: np.ndarray
    depth: np.ndarray
    euler: RangeMin
    annot: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return int(self.start.size)

    def interval(self, v: int) -> Interval:
        return Interval(int(self.start[v]), int(self.end[v]))

    def is_leaf(self, v: int) -> bool:
        return self.left[v] < 0

    def is_right_node(self, v: int) -> bool:
        p = self.parent[v]
        return p >= 0 and self.right[p] == v

    def lca_node(self, a: int, b: int) -> int:
        if not (0 <= a <= self.n + 1 and 0 <= b <= self.n + 1):
            raise IndexError(f"positions ({a}, {b}) outside [0, {self.n + 1}]")
        lo, hi = sorted((int(self.first[a]), int(self.first[b])))
        return int(self.euler.query(lo, hi) % self.size)

    def lca(self, a: int, b: int) -> Interval:
        return self.interval(self.lca_node(a, b))

    def run_of(self, v: int) -> int:
        return -1 if self.annot is None else int(self.annot[v])

    def right_nodes(self) -> list[Interval]:
        return [self.interval(v) for v in range(self.size) if self.is_right_node(v)]

    def preorder(self):
        stack = [self.root]
        while stack:
            v = stack.pop()
            yield v
            if self.left[v] >= 0:
                stack.append(int(self.right[v]))
                stack.append(int(self.left[v]))

    def as_nested(self):
        """Leaves as positions, internal nodes as ``(left, right)`` pairs."""
        built = {}
        for v in reversed(list(self.preorder())):
            built[v] = v if self.left[v] < 0 else (built.pop(int(self.left[v])), built.pop(int(self.right[v])))
        return built[self.root]


def build_lyndon_tree(
    text: TextLike, ctx: SuffixContext | None = None, order: "Order | int" = Order.ASCENDING
) -> LyndonTree:
    """Lyndon tree of ``#w$`` by the right-to-left merge scan.

    Suffix ranks of ``#w$`` restricted to positions ``1..n+1`` equal those
    of ``w$``, so the context's rank array is reused with ``#`` ranked -1.
    """
    text = as_text(text)
    order = as_order(order)
    n = text.n
    if n == 0:
        isa = np.array([-1, 0], np.int32)
    else:
        ctx = ctx if ctx is not None else build_suffix_context(text)
        isa = ctx.isa(order)
    start, end, left, right, parent, root, top = _build_tree(isa, n)
    if top != 0:
        raise TreeInvariantError("merge scan did not collapse to a single root")
    keys, first, depth = _euler(left, right, root, start.size)
    return LyndonTree(order, n, start, end, left, right, parent, int(root), first, depth, RangeMin(keys))


def _lroot_starts(run: Run, first_root: int):
    p = run.period
    a = first_root - p if first_root - p >= run.start else first_root
    while a + p - 1 <= run.end:
        yield a
        a += p


@dataclass(frozen=True)
class TwoPeriodIndex:
    """Both Lyndon trees with L-root nodes annotated by run id."""

    tree0: LyndonTree
    tree1: LyndonTree
    runs: RunSet

    def tree(self, order: "Order | int") -> LyndonTree:
        return self.tree1 if int(order) == 1 else self.tree0

    def query(self, i: int, j: int) -> Optional[tuple[int, Run]]:
        return two_period_query(self, i, j)

    @classmethod
    def build(cls, text: TextLike) -> "TwoPeriodIndex":
        text = as_text(text)
        ctx = build_suffix_context(text)
        lyn = compute_lyndon_array(text, ctx)
        runs = compute_all_runs(text, ctx, lyn)
        t0 = build_lyndon_tree(text, ctx, Order.ASCENDING)
        t1 = build_lyndon_tree(text, ctx, Order.DESCENDING)
        return annotate_runs(t0, t1, runs)


def annotate_runs(
    tree0: LyndonTree, tree1: LyndonTree, runset: RunSet, br_sets: list[BrSet] | None = None
) -> TwoPeriodIndex:
    """Attach each run to every tree node that is one of its L-roots.

    ``br_sets`` (aligned with ``runset``) may supply the L-roots; otherwise
    they are spaced one period apart from the run's recorded first root.
    """
    annots = [np.full(tree0.size, -1, np.int32), np.full(tree1.size, -1, np.int32)]
    trees = (tree0, tree1)
    for k, run in enumerate(runset):
        ell = int(runset.orders[k])
        if br_sets is not None:
            br = br_sets[k]
            if br.run != run or int(br.order) != ell:
                raise TreeInvariantError(f"B_r set {k} does not match run {run}")
            first_root = min(br.begins) if br.intervals else int(runset.roots[k])
        else:
            first_root = int(runset.roots[k])
        tree, annot = trees[ell], annots[ell]
        for a in _lroot_starts(run, first_root):
            b = a + run.period - 1
            v = tree.lca_node(a, b)
            if tree.interval(v) != (a, b) or not tree.is_right_node(v):
                raise TreeInvariantError(f"L-root [{a}..{b}] of run {run} is not a right node of tree {ell}")
            if annot[v] >= 0:
                raise TreeInvariantError(f"node [{a}..{b}] already carries run {runset[int(annot[v])]}")
            annot[v] = k
    return TwoPeriodIndex(replace(tree0, annot=annots[0]), replace(tree1, annot=annots[1]), runset)


def two_period_query(index: TwoPeriodIndex, i: int, j: int) -> Optional[tuple[int, Run]]:
    """Smallest period ``p`` of ``w[i..j]`` with ``2p <= j - i + 1`` and its run."""
    n = index.tree0.n
    if not 1 <= i <= j <= n:
        raise IndexError(f"interval [{i}..{j}] outside [1..{n}]")
    length = j - i + 1
    if length < 2:
        return None
    mid = (i + j + 1) // 2
    runs = index.runs
    for tree in (index.tree0, index.tree1):
        alpha = tree.lca_node(i, mid)
        if tree.left[alpha] < 0:
            continue
        k = int(tree.annot[tree.right[alpha]])
        if k < 0:
            continue
        s, e, p = int(runs.starts[k]), int(runs.ends[k]), int(runs.periods[k])
        if s <= i and j <= e and 2 * p <= length:
            return p, Run(s, e, p)
    return None


# ---------------------------------------------------------------------------
# Serialization


def _run_label(tree: LyndonTree, runs: RunSet | None, v: int) -> Optional[Run]:
    k = tree.run_of(v)
    return runs[k] if (k >= 0 and runs is not None) else None


def to_dot(tree: LyndonTree, runs: RunSet | None = None) -> str:
    name = f"LTree{int(tree.order)}"
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    order = list(tree.preorder())
    for v in order:
        iv = str(tree.interval(v))
        run = _run_label(tree, runs, v)
        if run is None:
            lines.append(f'  "{iv}";')
        else:
            lines.append(f'  "{iv}" [label="{iv}\\n{run}", style=filled];')
    for v in order:
        if tree.left[v] < 0:
            continue
        iv = str(tree.interval(v))
        lines.append(f'  "{iv}" -> "{tree.interval(int(tree.left[v]))}";')
        lines.append(f'  "{iv}" -> "{tree.interval(int(tree.right[v]))}" [style=bold];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(tree: LyndonTree, runs: RunSet | None = None) -> str:
    """Nested JSON; written iteratively since trees can be as deep as ``n``."""
    out = [f'{{"order": {int(tree.order)}, "n": {tree.n}, "tree": ']
    stack: list = [tree.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        v = item
        run = _run_label(tree, runs, v)
        head = {"start": int(tree.start[v]), "end": int(tree.end[v]), "run": list(run.as_tuple()) if run else None}
        body = json.dumps(head)[:-1]
        if tree.left[v] < 0:
            out.append(body + "}")
        else:
            out.append(body + ', "left": ')
            stack.extend(["}", int(tree.right[v]), ', "right": ', int(tree.left[v])])
    out.append("}")
    return "".join(out) + "\n"
