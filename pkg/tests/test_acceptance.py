"""Acceptance criteria, one test per criterion.

Each prints a PASS/FAIL line in the terminal summary (see conftest).
"""

import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from lyndonruns import TwoPeriodIndex, compute_all_runs
from lyndonruns.harness import CorpusSpec, Gates, bench_input, time_pipeline, verify, warm_up
from lyndonruns.oracle import naive_smallest_period

GOLDEN = Path(__file__).parent / "golden"

EXAMPLE_RUNS = {(1, 2, 1), (2, 6, 2), (4, 9, 3), (6, 7, 1), (7, 10, 2), (10, 11, 1), (1, 10, 5)}


def _tallies(reports, names):
    out = {}
    for rep in reports:
        for name in names:
            t = rep.tallies[name]
            passed, failed, cx = out.get(name, (0, 0, None))
            out[name] = (passed + t.passed, failed + t.failed, cx or t.counterexample)
    return out


@pytest.mark.criterion(1, "example runs and exponent sum are exact")
def test_criterion_1_worked_example():
    runs = compute_all_runs("aababaababb")
    assert runs.as_set() == EXAMPLE_RUNS
    assert len(runs) == 7
    assert [r.as_tuple() for r in runs] == sorted(EXAMPLE_RUNS, key=lambda r: (r[0], r[1]))
    assert runs.exponent_sum() == Fraction(29, 2)


@pytest.mark.slow
@pytest.mark.criterion(2, "runs equal the brute-force oracle on all corpora")
def test_criterion_2_oracle_equivalence(corpus_reports):
    sizes = [rep.strings for rep in corpus_reports]
    assert sizes == [2**15 - 2, (3**10 - 3) // 2, 1000, 1000, 1000]
    tallies = _tallies(corpus_reports, ["runs", "unique_extraction"])
    for name, (passed, failed, cx) in tallies.items():
        assert failed == 0, (name, cx)
        assert passed == sum(sizes)


@pytest.mark.slow
@pytest.mark.criterion(3, "run count and exponent-sum bounds hold everywhere")
def test_criterion_3_bound_suite(corpus_reports):
    passed, failed, cx = _tallies(corpus_reports, ["bounds"])["bounds"]
    assert failed == 0, cx
    assert passed == sum(rep.strings for rep in corpus_reports)
    for rep in corpus_reports:
        assert rep.max_rho.ratio < 1


@pytest.mark.slow
@pytest.mark.criterion(4, "lemma checks: unique single-symbol order, disjoint B_r, |B_r|, right nodes")
def test_criterion_4_lemma_suite(corpus_reports):
    names = ["lyndon_unique", "exclusive", "br_size", "run_node", "pops"]
    total = sum(rep.strings for rep in corpus_reports)
    for name, (passed, failed, cx) in _tallies(corpus_reports, names).items():
        assert failed == 0, (name, cx)
        assert passed == total


@pytest.mark.slow
@pytest.mark.criterion(5, "Lyndon trees equal the recursive standard factorization")
def test_criterion_5_tree_equivalence():
    corpora = [CorpusSpec("exhaustive", sigma=2, min_len=1, max_len=12)]
    corpora += [CorpusSpec("random", sigma=s, min_len=1, max_len=64, trials=250, seed=50 + s) for s in (1, 2, 3, 4)]
    reports = [verify(c, ["tree"], Gates(tree_gate=64)) for c in corpora]
    assert sum(r.strings for r in reports) == 2**13 - 2 + 1000
    passed, failed, cx = _tallies(reports, ["tree"])["tree"]
    assert failed == 0, cx
    assert passed == 2**13 - 2 + 1000


def _random_strings(count, max_len, sigmas, seed):
    rng = random.Random(seed)
    for k in range(count):
        sigma = sigmas[k % len(sigmas)]
        n = rng.randint(1, max_len)
        yield "".join(chr(97 + rng.randrange(sigma)) for _ in range(n))


@pytest.mark.slow
@pytest.mark.criterion(6, "every 2-period query matches the direct-scan period")
def test_criterion_6_two_period_queries():
    checked = 0
    for w in _random_strings(200, 256, (2, 4, 26), seed=6):
        index = TwoPeriodIndex.build(w)
        n = len(w)
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                p = naive_smallest_period(w[i - 1 : j])
                want = p if 2 * p <= j - i + 1 else None
                hit = index.query(i, j)
                got = None if hit is None else hit[0]
                assert got == want, (w, i, j)
                checked += 1
    assert checked > 200


@pytest.mark.slow
@pytest.mark.criterion(7, "near-linear scaling on 4/8/16 MiB, 16 MiB under 60 s, pops <= n")
def test_criterion_7_linearity():
    warm_up()
    totals = {}
    for mib in (4, 8, 16):
        text = bench_input("random", mib << 20, seed=mib)
        # best of two repeats damps scheduler noise on a shared machine
        results = [time_pipeline(text, "random") for _ in range(2 if mib < 16 else 1)]
        best = min(results, key=lambda r: r.total)
        totals[mib] = best.total
        assert best.pops <= text.n
        assert best.runs < text.n
        del text
    print({k: round(v, 2) for k, v in totals.items()})
    assert totals[8] / totals[4] <= 2.6
    assert totals[16] / totals[8] <= 2.6
    assert totals[16] <= 60.0


def _golden_cases():
    return [pytest.param(case, id=case.stem) for case in sorted(GOLDEN.glob("*.args"))]


def _run_cli(args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "lyndonruns.cli", *args],
        input=stdin,
        capture_output=True,
        cwd=GOLDEN,
    )


@pytest.mark.criterion(8, "CLI golden outputs are byte-identical and exit codes follow 0/1/2")
@pytest.mark.parametrize("case", _golden_cases())
def test_criterion_8_cli_golden(case):
    args = case.read_text().split()
    expected_code = int(case.with_suffix(".code").read_text())
    stdin_file = case.with_suffix(".stdin")
    stdin = stdin_file.read_bytes() if stdin_file.exists() else None
    first = _run_cli(args, stdin)
    second = _run_cli(args, stdin)
    assert first.returncode == expected_code, first.stderr.decode()
    assert first.stdout == second.stdout
    assert first.stdout == case.with_suffix(".out").read_bytes()
