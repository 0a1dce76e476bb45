"""All runs of a string in linear time via longest Lyndon words.

Typical use::

    >>> from lyndonruns import compute_all_runs
    >>> [r.as_tuple() for r in compute_all_runs("abaabaab")]
    [(1, 8, 3), (3, 4, 1), (6, 7, 1)]
"""

from .core import Interval, Order, Run, Text, as_text, map_symbols
from .lyndon import LyndonArray, compute_lyndon_array, duval_factorization, is_lyndon, longest_lyndon_array
from .lyndontree import (
    LyndonTree,
    TreeInvariantError,
    TwoPeriodIndex,
    annotate_runs,
    build_lyndon_tree,
    to_dot,
    to_json,
    two_period_query,
)
from .runs import (
    BrSet,
    RunCollisionError,
    RunSet,
    RunStatistics,
    all_br_sets,
    br_set,
    candidate_to_run,
    compute_all_runs,
    run_order,
    statistics,
)
from .suffix import RangeMin, SuffixContext, build_suffix_context, lcp_array, suffix_array

__all__ = [
    "BrSet",
    "Interval",
    "LyndonArray",
    "LyndonTree",
    "Order",
    "RangeMin",
    "Run",
    "RunCollisionError",
    "RunSet",
    "RunStatistics",
    "SuffixContext",
    "Text",
    "TreeInvariantError",
    "TwoPeriodIndex",
    "all_br_sets",
    "annotate_runs",
    "as_text",
    "br_set",
    "build_lyndon_tree",
    "build_suffix_context",
    "candidate_to_run",
    "compute_all_runs",
    "compute_lyndon_array",
    "duval_factorization",
    "is_lyndon",
    "lcp_array",
    "longest_lyndon_array",
    "map_symbols",
    "run_order",
    "statistics",
    "suffix_array",
    "to_dot",
    "to_json",
    "two_period_query",
]
