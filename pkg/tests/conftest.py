import pytest

from lyndonruns.harness import CorpusSpec, Gates, verify

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    prev = _criteria.get(number, (title, True))
    if report.when == "setup" and report.passed:
        return
    _criteria[number] = (title, prev[1] and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


# Corpora shared by the run, bound and lemma criteria.  One harness pass
# computes every check; the acceptance tests read their own tallies.
LEMMA_CHECKS = ("runs", "unique_extraction", "bounds", "pops", "lyndon_unique", "exclusive", "br_size", "run_node")

SHARED_CORPORA = (
    CorpusSpec("exhaustive", sigma=2, min_len=1, max_len=14),
    CorpusSpec("exhaustive", sigma=3, min_len=1, max_len=9),
    CorpusSpec("random", sigma=2, min_len=1, max_len=500, trials=1000, seed=2),
    CorpusSpec("random", sigma=4, min_len=1, max_len=500, trials=1000, seed=4),
    CorpusSpec("random", sigma=26, min_len=1, max_len=500, trials=1000, seed=26),
)


@pytest.fixture(scope="session")
def corpus_reports():
    return [verify(c, LEMMA_CHECKS, Gates(0, 0, 0)) for c in SHARED_CORPORA]
