"""Verification campaigns over exhaustive, random or file-backed corpora."""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np

from . import oracle
from .core import Order, Run, Text
from .lyndon import compute_lyndon_array
from .lyndontree import annotate_runs, build_lyndon_tree, two_period_query
from .runs import all_br_sets, compute_all_runs, run_order, statistics
from .suffix import build_suffix_context

DEFAULT_BUDGET = 1 << 24

ALL_CHECKS = (
    "runs",
    "unique_extraction",
    "bounds",
    "pops",
    "lyndon",
    "lyndon_unique",
    "exclusive",
    "br_size",
    "run_node",
    "tree",
    "two_period",
)

# checks whose oracle is quadratic or worse are skipped above these lengths
GATED = {"lyndon": "lyndon_gate", "tree": "tree_gate", "two_period": "query_gate"}


class BudgetError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusSpec:
    mode: str = "exhaustive"  # exhaustive | random | file
    sigma: int = 2
    min_len: int = 1
    max_len: int = 8
    trials: int = 100
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    path: Optional[str] = None

    def size(self) -> int:
        if self.mode == "exhaustive":
            return sum(self.sigma**k for k in range(self.min_len, self.max_len + 1))
        if self.mode == "random":
            return self.trials
        if self.mode == "file":
            return sum(1 for _ in self._file_lines())
        raise ValueError(f"unknown corpus mode {self.mode!r}")

    def validate(self) -> None:
        if self.mode not in ("exhaustive", "random", "file"):
            raise ValueError(f"unknown corpus mode {self.mode!r}")
        if self.mode == "file" and not self.path:
            raise ValueError("file mode needs a path")
        if self.mode != "file":
            if self.sigma < 1:
                raise ValueError("sigma must be at least 1")
            if not 1 <= self.min_len <= self.max_len:
                raise ValueError("need 1 <= min_len <= max_len")
        size = self.size()
        if size > self.budget:
            raise BudgetError(f"corpus of {size} strings exceeds budget {self.budget}")

    def _file_lines(self) -> Iterator[bytes]:
        for line in Path(self.path).read_bytes().splitlines():
            if line:
                yield line

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        if self.mode == "exhaustive":
            # length order, so the first failure is a shortest one
            for k in range(self.min_len, self.max_len + 1):
                yield from itertools.product(range(self.sigma), repeat=k)
        elif self.mode == "random":
            rng = random.Random(self.seed)
            for _ in range(self.trials):
                k = rng.randint(self.min_len, self.max_len)
                yield tuple(rng.randrange(self.sigma) for _ in range(k))
        else:
            for line in self._file_lines():
                yield tuple(line)


def _ratio(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


@dataclass
class CheckTally:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexample: Optional[dict] = None  # {"index", "string", "detail"}

    def merge(self, other: "CheckTally") -> "CheckTally":
        cx = [c for c in (self.counterexample, other.counterexample) if c is not None]
        return CheckTally(
            self.passed + other.passed,
            self.failed + other.failed,
            self.skipped + other.skipped,
            min(cx, key=lambda c: c["index"]) if cx else None,
        )


@dataclass
class Extremum:
    ratio: Fraction = Fraction(-1)
    index: int = -1
    string: tuple = ()

    def offer(self, ratio: Fraction, index: int, string: tuple) -> None:
        if ratio > self.ratio or (ratio == self.ratio and 0 <= index < self.index):
            self.ratio, self.index, self.string = ratio, index, string

    def merge(self, other: "Extremum") -> "Extremum":
        out = Extremum(self.ratio, self.index, self.string)
        if other.index >= 0:
            out.offer(other.ratio, other.index, other.string)
        return out

    def to_dict(self) -> Optional[dict]:
        if self.index < 0:
            return None
        return {"ratio": _ratio(self.ratio), "index": self.index, "string": list(self.string)}


@dataclass
class VerificationReport:
    """Per-check tallies plus extremal statistics; merging is associative."""

    strings: int = 0
    collisions: int = 0
    tallies: dict = field(default_factory=dict)
    max_rho: Extremum = field(default_factory=Extremum)
    max_sigma: Extremum = field(default_factory=Extremum)
    corpus: Optional[CorpusSpec] = None

    @property
    def failures(self) -> int:
        return sum(t.failed for t in self.tallies.values())

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def tally(self, name: str) -> CheckTally:
        return self.tallies.setdefault(name, CheckTally())

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        names = sorted(set(self.tallies) | set(other.tallies))
        return VerificationReport(
            self.strings + other.strings,
            self.collisions + other.collisions,
            {k: self.tallies.get(k, CheckTally()).merge(other.tallies.get(k, CheckTally())) for k in names},
            self.max_rho.merge(other.max_rho),
            self.max_sigma.merge(other.max_sigma),
            self.corpus or other.corpus,
        )

    def to_dict(self) -> dict:
        corpus = None
        if self.corpus is not None:
            corpus = {k: getattr(self.corpus, k) for k in ("mode", "sigma", "min_len", "max_len", "trials", "seed", "budget", "path")}
        return {
            "ok": self.ok,
            "corpus": corpus,
            "strings": self.strings,
            "failures": self.failures,
            "collisions": self.collisions,
            "checks": {
                name: {
                    "passed": t.passed,
                    "failed": t.failed,
                    "skipped": t.skipped,
                    "counterexample": t.counterexample,
                }
                for name, t in sorted(self.tallies.items())
            },
            "max_rho_over_n": self.max_rho.to_dict(),
            "max_sigma_over_n": self.max_sigma.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# Per-string checks.  Each returns None on success or a short failure detail.


def _check_runs(w, runs):
    expected = oracle.naive_runs(w)
    got = runs.as_set()
    if got != expected:
        return f"missing {sorted(expected - got)}, extra {sorted(got - expected)}"
    return None


def _check_lyndon(w, lyn):
    for ell in (0, 1):
        for i in range(1, len(w) + 1):
            want = oracle.naive_longest_lyndon(w, ell, i)
            if int(lyn.end(ell)[i]) != want:
                return f"order {ell} position {i}: got {int(lyn.end(ell)[i])}, want {want}"
    return None


def _check_lyndon_unique(w, lyn):
    for i in range(1, len(w) + 1):
        singles = (lyn.end0[i] == i) + (lyn.end1[i] == i)
        if singles != 1:
            return f"position {i}: {int(singles)} orders give a single symbol"
    return None


def _check_exclusive(br_sets):
    seen: dict[int, Run] = {}
    for br in br_sets:
        for b in br.begins:
            if b == 1:
                return f"run {br.run} has an L-root beginning at 1"
            if b in seen:
                return f"position {b} shared by runs {seen[b]} and {br.run}"
            seen[b] = br.run
    return None


def _check_br_size(br_sets):
    for br in br_sets:
        bound = br.run.length // br.run.period - 1  # floor(e - 1)
        if len(br) < bound:
            return f"run {br.run}: |B_r| = {len(br)} < {bound}"
    return None


def _check_run_node(w, text, runs, trees):
    for run in runs:
        ell = run_order(text, run)
        keys = [c if ell is Order.ASCENDING else -c for c in w]
        tree = trees[int(ell)]
        p = run.period
        for a in range(run.start, run.end - p + 2):
            b = a + p - 1
            if not oracle.naive_is_lyndon(keys[a - 1 : b]):
                continue
            v = tree.lca_node(a, b)
            if tree.interval(v) != (a, b) or not tree.is_right_node(v):
                return f"L-root [{a}..{b}] of run {run} is not a right node of tree {int(ell)}"
    return None


def _check_tree(w, trees):
    for ell in (0, 1):
        if trees[ell].as_nested() != oracle.naive_tree_of_text(w, ell):
            return f"tree {ell} differs from the recursive standard factorization"
    return None


def _check_two_period(w, index):
    table = oracle.all_smallest_periods(w)
    n = len(w)
    for i in range(1, n + 1):
        row = table[i - 1]
        for j in range(i, n + 1):
            p = row[j - i]
            want = p if 2 * p <= j - i + 1 else None
            got = two_period_query(index, i, j)
            got = None if got is None else got[0]
            if got != want:
                return f"query [{i}..{j}]: got {got}, want {want}"
    return None


@dataclass(frozen=True)
class Gates:
    lyndon_gate: int = 64
    tree_gate: int = 64
    query_gate: int = 64


def check_string(w: tuple, checks: Iterable[str], gates: Gates = Gates()) -> tuple[dict, dict]:
    """Run ``checks`` on one string; returns (check -> detail/None/'skip', stats)."""
    checks = set(checks)
    n = len(w)
    text = Text(np.asarray(w, dtype=np.int32), max(w) + 1 if w else 0)
    ctx = build_suffix_context(text)
    lyn = compute_lyndon_array(text, ctx)
    runs = compute_all_runs(text, ctx, lyn)
    stats = statistics(runs, text)
    results: dict = {}

    def gated(name):
        gate = GATED.get(name)
        return gate is not None and n > getattr(gates, gate)

    for name in checks:
        if gated(name):
            results[name] = "skip"

    if "runs" in checks:
        results["runs"] = _check_runs(w, runs)
    if "unique_extraction" in checks:
        results["unique_extraction"] = f"{runs.collisions} duplicate candidates" if runs.collisions else None
    if "bounds" in checks:
        bad = sorted(k for k, ok in stats.bounds.items() if not ok)
        results["bounds"] = f"violated {bad}" if bad else None
    if "pops" in checks:
        worst = max(lyn.pops0, lyn.pops1)
        results["pops"] = f"{worst} pops > n = {n}" if worst > n else None
    if "lyndon" in checks and results.get("lyndon") != "skip":
        results["lyndon"] = _check_lyndon(w, lyn)
    if "lyndon_unique" in checks:
        results["lyndon_unique"] = _check_lyndon_unique(w, lyn)
    if checks & {"exclusive", "br_size"}:
        br_sets = all_br_sets(text, runs, lyn)
        if "exclusive" in checks:
            results["exclusive"] = _check_exclusive(br_sets)
        if "br_size" in checks:
            results["br_size"] = _check_br_size(br_sets)
    need_trees = ("run_node" in checks) or any(
        name in checks and results.get(name) != "skip" for name in ("tree", "two_period")
    )
    if need_trees:
        trees = (build_lyndon_tree(text, ctx, Order.ASCENDING), build_lyndon_tree(text, ctx, Order.DESCENDING))
        if "run_node" in checks:
            results["run_node"] = _check_run_node(w, text, runs, trees)
        if "tree" in checks and results.get("tree") != "skip":
            results["tree"] = _check_tree(w, trees)
        if "two_period" in checks and results.get("two_period") != "skip":
            results["two_period"] = _check_two_period(w, annotate_runs(*trees, runs))
    info = {"n": n, "count": stats.count, "sigma": stats.exponent_sum, "collisions": runs.collisions}
    return results, info


def _verify_chunk(args) -> VerificationReport:
    start, strings, checks, gates = args
    rep = VerificationReport()
    for offset, w in enumerate(strings):
        index = start + offset
        try:
            results, info = check_string(w, checks, gates)
        except Exception as exc:  # a crash is a failure of every requested check
            results = {name: f"raised {type(exc).__name__}: {exc}" for name in checks}
            info = None
        rep.strings += 1
        for name, outcome in results.items():
            t = rep.tally(name)
            if outcome == "skip":
                t.skipped += 1
            elif outcome is None:
                t.passed += 1
            else:
                t.failed += 1
                if t.counterexample is None:
                    t.counterexample = {"index": index, "string": list(w), "detail": outcome}
        if info is not None and info["n"]:
            rep.collisions += info["collisions"]
            rep.max_rho.offer(Fraction(info["count"], info["n"]), index, w)
            rep.max_sigma.offer(info["sigma"] / info["n"], index, w)
    return rep


def _chunks(corpus: CorpusSpec, size: int) -> Iterator[tuple[int, list]]:
    it = iter(corpus)
    start = 0
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield start, block
        start += len(block)


def verify(
    corpus: CorpusSpec,
    checks: Iterable[str] = ALL_CHECKS,
    gates: Gates = Gates(),
    workers: int = 1,
    chunk: int = 2048,
) -> VerificationReport:
    """Check every string of ``corpus``; failures keep their first counterexample."""
    checks = tuple(checks)
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    corpus.validate()
    jobs = ((start, block, checks, gates) for start, block in _chunks(corpus, chunk))
    report = VerificationReport()
    if workers <= 1:
        parts: Iterable[VerificationReport] = map(_verify_chunk, jobs)
        for part in parts:
            report = report.merge(part)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_verify_chunk, jobs):
                report = report.merge(part)
    for name in checks:
        report.tally(name)
    report.corpus = corpus
    return report


# ---------------------------------------------------------------------------


@dataclass
class DensityReport:
    corpus: CorpusSpec
    strings: int = 0
    max_rho: Extremum = field(default_factory=Extremum)
    max_sigma: Extremum = field(default_factory=Extremum)
    by_length: dict = field(default_factory=dict)  # n -> [max runs, witness]

    def to_dict(self) -> dict:
        return {
            "corpus": {k: getattr(self.corpus, k) for k in ("mode", "sigma", "min_len", "max_len", "trials", "seed")},
            "strings": self.strings,
            "max_rho_over_n": self.max_rho.to_dict(),
            "max_sigma_over_n": self.max_sigma.to_dict(),
            "max_runs_by_length": {str(n): {"runs": r, "string": list(s)} for n, (r, s) in sorted(self.by_length.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def density_search(corpus: CorpusSpec) -> DensityReport:
    """Track the densest strings (runs per symbol, exponent sum per symbol)."""
    corpus.validate()
    rep = DensityReport(corpus)
    for index, w in enumerate(corpus):
        text = Text(np.asarray(w, dtype=np.int32), max(w) + 1)
        runs = compute_all_runs(text)
        n = len(w)
        count = len(runs)
        rep.strings += 1
        rep.max_rho.offer(Fraction(count, n), index, w)
        rep.max_sigma.offer(runs.exponent_sum() / n, index, w)
        best = rep.by_length.get(n)
        if best is None or count > best[0]:
            rep.by_length[n] = (count, w)
    return rep


# ---------------------------------------------------------------------------
# Benchmark drivers

BENCH_KINDS = ("random", "fibonacci", "thue-morse", "unary")
STAGES = ("suffix", "lyndon", "runs")


def fibonacci_word(n: int) -> np.ndarray:
    """Prefix of the infinite Fibonacci word over {0, 1}."""
    a, b = np.array([0], np.uint8), np.array([0, 1], np.uint8)
    while b.size < n:
        a, b = b, np.concatenate([b, a])
    return b[:n].copy()


def thue_morse(n: int) -> np.ndarray:
    k = np.arange(n, dtype=np.uint64)
    bits = np.zeros(n, np.uint8)
    while k.any():
        bits ^= (k & np.uint64(1)).astype(np.uint8)
        k >>= np.uint64(1)
    return bits


def bench_input(kind: str, size: int, seed: int = 0) -> Text:
    if size < 1:
        raise ValueError("size must be positive")
    if kind == "random":
        chars = np.random.default_rng(seed).integers(0, 2, size, dtype=np.int32)
    elif kind == "fibonacci":
        chars = fibonacci_word(size)
    elif kind == "thue-morse":
        chars = thue_morse(size)
    elif kind == "unary":
        chars = np.zeros(size, np.int32)
    else:
        raise ValueError(f"unknown input kind {kind!r}; choose from {BENCH_KINDS}")
    return Text(chars.astype(np.int32), int(chars.max()) + 1)


@dataclass(frozen=True)
class BenchResult:
    kind: str
    n: int
    seconds: dict  # stage -> wall time
    runs: int
    pops: int

    @property
    def total(self) -> float:
        return sum(self.seconds.values())


def time_pipeline(text: Text, kind: str = "custom") -> BenchResult:
    """Wall time of each stage, from suffix structures through run extraction."""
    t0 = time.perf_counter()
    ctx = build_suffix_context(text)
    t1 = time.perf_counter()
    lyn = compute_lyndon_array(text, ctx)
    t2 = time.perf_counter()
    runs = compute_all_runs(text, ctx, lyn)
    t3 = time.perf_counter()
    seconds = {"suffix": t1 - t0, "lyndon": t2 - t1, "runs": t3 - t2}
    return BenchResult(kind, text.n, seconds, len(runs), max(lyn.pops0, lyn.pops1))


def warm_up() -> None:
    """Compile every kernel on a tiny input so timings exclude JIT work."""
    time_pipeline(bench_input("random", 512, 1))


def bench(kind: str, size: int, seed: int = 0, repeat: int = 1) -> BenchResult:
    """Best of ``repeat`` timings for one generated input."""
    text = bench_input(kind, size, seed)
    warm_up()
    best = None
    for _ in range(max(1, repeat)):
        res = time_pipeline(text, kind)
        if best is None or res.total < best.total:
            best = res
    return best


def format_bench(results: Iterable[BenchResult]) -> str:
    header = f"{'kind':<11} {'n':>10} " + " ".join(f"{s:>8}" for s in STAGES) + f" {'total':>8} {'runs':>10}"
    lines = [header]
    for r in results:
        stages = " ".join(f"{r.seconds[s]:8.3f}" for s in STAGES)
        lines.append(f"{r.kind:<11} {r.n:>10} {stages} {r.total:8.3f} {r.runs:>10}")
    return "\n".join(lines) + "\n"
