"""Property tests: random small texts against the brute-force oracles."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from lyndonruns import TwoPeriodIndex, build_lyndon_tree, compute_all_runs, compute_lyndon_array, statistics
from lyndonruns.core import Order, map_symbols
from lyndonruns.oracle import all_smallest_periods, naive_longest_lyndon, naive_runs, naive_tree_of_text
from lyndonruns.suffix import RangeMin, build_suffix_context, suffix_array, suffix_array_doubling

texts = st.integers(1, 4).flatmap(lambda k: st.lists(st.integers(0, k - 1), min_size=1, max_size=40))


@settings(max_examples=300, deadline=None)
@given(texts)
def test_runs_match_oracle(w):
    runs = compute_all_runs(w)
    assert runs.as_set() == naive_runs(w)
    assert runs.collisions == 0
    assert statistics(runs, w).ok


@settings(max_examples=200, deadline=None)
@given(texts)
def test_lyndon_arrays_match_oracle(w):
    lyn = compute_lyndon_array(w)
    for ell in (0, 1):
        assert lyn.ends(ell).tolist() == [naive_longest_lyndon(w, ell, i) for i in range(1, len(w) + 1)]
        assert lyn.pops(ell) <= len(w)


@settings(max_examples=200, deadline=None)
@given(texts)
def test_trees_match_oracle(w):
    for ell in (0, 1):
        assert build_lyndon_tree(w, order=ell).as_nested() == naive_tree_of_text(w, ell)


@settings(max_examples=150, deadline=None)
@given(texts)
def test_two_period_queries(w):
    index = TwoPeriodIndex.build(w)
    table = all_smallest_periods(w)
    for i in range(1, len(w) + 1):
        for j in range(i, len(w) + 1):
            p = table[i - 1][j - i]
            hit = index.query(i, j)
            assert (None if hit is None else hit[0]) == (p if 2 * p <= j - i + 1 else None)


@settings(max_examples=200, deadline=None)
@given(texts)
def test_suffix_arrays_agree(w):
    for order in Order:
        x = map_symbols(w, order)
        sa = suffix_array(x)
        assert sa.tolist() == suffix_array_doubling(x).tolist()
        seq = x.tolist()
        assert all(seq[a:] < seq[b:] for a, b in zip(sa[:-1].tolist(), sa[1:].tolist()))


@settings(max_examples=200, deadline=None)
@given(texts, st.data())
def test_lce_by_scan(w, data):
    ctx = build_suffix_context(w)
    n = len(w)
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n))
    k = 0
    while i + k <= n and j + k <= n and w[i + k - 1] == w[j + k - 1]:
        k += 1
    assert ctx.lce(i, j) == k
    k = 0
    while i - k >= 1 and j - k >= 1 and w[i - k - 1] == w[j - k - 1]:
        k += 1
    assert ctx.lcs(i, j) == k


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=300), st.data())
def test_range_min(values, data):
    rmq = RangeMin(np.array(values, np.int64))
    lo = data.draw(st.integers(0, len(values) - 1))
    hi = data.draw(st.integers(lo, len(values) - 1))
    assert rmq.query(lo, hi) == min(values[lo : hi + 1])
