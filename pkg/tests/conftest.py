import pytest

from cliquebetti.graph import erdos_renyi

_criteria: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for marker in getattr(report, "criterion_markers", ()):
        _criteria.setdefault(marker, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion_markers = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok = all(o == "passed" for o in _criteria[n])
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}")


CORPUS_SIZES = range(6, 13)
CORPUS_PS = (0.2, 0.5, 0.8)
CORPUS_SEEDS = range(10)


def er_corpus():
    """210 Erdos-Renyi graphs: n in 6..12, p in {0.2, 0.5, 0.8}, 10 seeds each."""
    return [
        ((n, p, s), erdos_renyi(n, p, seed=1000 * n + 10 * int(p * 10) + s))
        for n in CORPUS_SIZES
        for p in CORPUS_PS
        for s in CORPUS_SEEDS
    ]


@pytest.fixture(scope="session")
def corpus():
    return er_corpus()
