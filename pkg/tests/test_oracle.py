import pytest

from lyndonruns import oracle
from lyndonruns.oracle import (
    all_smallest_periods,
    naive_is_lyndon,
    naive_longest_lyndon,
    naive_lyndon_tree,
    naive_runs,
    naive_smallest_period,
    naive_tree_of_text,
)


@pytest.mark.parametrize("s, p", [("abab", 2), ("aab", 3), ("aabaabaa", 3), ("a", 1), ("aaaa", 1)])
def test_naive_smallest_period(s, p):
    assert naive_smallest_period(s) == p


def test_naive_smallest_period_empty():
    with pytest.raises(ValueError):
        naive_smallest_period("")


@pytest.mark.parametrize("s", ["aababaababb", "abcabcab", "aaaabaaa", "mississippi"])
def test_failure_function_periods_match_direct_scan(s):
    table = all_smallest_periods(s)
    for i in range(len(s)):
        for j in range(i, len(s)):
            assert table[i][j - i] == naive_smallest_period(s[i : j + 1])


@pytest.mark.parametrize(
    "text, expected",
    [
        ("aababaababb", {(1, 2, 1), (2, 6, 2), (4, 9, 3), (6, 7, 1), (7, 10, 2), (10, 11, 1), (1, 10, 5)}),
        ("ab", set()),
        ("aabaab", {(1, 6, 3), (1, 2, 1), (4, 5, 1)}),
        ("aaaa", {(1, 4, 1)}),
    ],
)
def test_naive_runs(text, expected):
    assert naive_runs(text) == expected


@pytest.mark.parametrize("text, ell, i, end", [("aab", 0, 1, 3), ("aab", 1, 3, 4), ("aab", 1, 1, 1)])
def test_naive_longest_lyndon(text, ell, i, end):
    assert naive_longest_lyndon(text, ell, i) == end


def test_naive_longest_lyndon_at_least_i():
    for ell in (0, 1):
        for i in range(1, 12):
            assert naive_longest_lyndon("aababaababb", ell, i) >= i


def test_naive_is_lyndon():
    assert naive_is_lyndon("ab") and not naive_is_lyndon("aa") and not naive_is_lyndon("")


def test_naive_lyndon_tree():
    assert naive_lyndon_tree("ab") == (0, 1)
    # '#ab$' under # < $ < a < b splits off '$' first, then '#'
    assert naive_tree_of_text("ab", 0) == ((0, (1, 2)), 3)
    assert naive_tree_of_text("a", 0) == ((0, 1), 2)
    with pytest.raises(ValueError):
        naive_lyndon_tree("ba")


def test_naive_lyndon_tree_of_example_word():
    tree = naive_lyndon_tree("aababaababb", offset=1)
    assert tree == (((1, (2, 3)), (4, 5)), (6, ((7, 8), ((9, 10), 11))))


def test_guard():
    with pytest.raises(ValueError):
        naive_runs("a" * (oracle.MAX_N + 1))
