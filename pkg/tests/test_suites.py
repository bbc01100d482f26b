import pytest

from wronskiops.background import suite_runner
from wronskiops.background.suite_runner import SUITES, SuiteRunner
from wronskiops.models.reports import SuiteStatus


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_pass(suite):
    report = SuiteRunner(seed=5, workers=1).run(suite, cases=3)
    assert report.status == SuiteStatus.PASSED, [f.detail for f in report.failures]
    assert report.passed == report.cases == 3


def test_optimality_grid_passes():
    report = SuiteRunner(seed=1, workers=1).run('optimality', cases=len(suite_runner.OPTIMAL_GRID))
    assert report.status == SuiteStatus.PASSED, [f.detail for f in report.failures]


def test_results_do_not_depend_on_worker_count():
    serial = SuiteRunner(seed=9, workers=1).run('power-derivative', cases=4)
    parallel = SuiteRunner(seed=9, workers=2).run('power-derivative', cases=4)
    assert serial.passed == parallel.passed
    assert serial.failures == parallel.failures


def test_case_errors_become_failures(monkeypatch):
    def explode(index, seed):
        raise RuntimeError("boom")

    monkeypatch.setitem(SUITES, 'explode', explode)
    report = SuiteRunner(seed=1, workers=1).run('explode', cases=2)
    assert report.status == SuiteStatus.FAILED
    assert [f.index for f in report.failures] == [0, 1]
    assert report.failures[0].detail == "RuntimeError: boom"


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        SuiteRunner().run('nope', cases=1)
