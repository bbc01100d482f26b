import json

import pytest

from wronskiops.errors import SoundnessViolation
from wronskiops.models.reports import Report, RootReport
from wronskiops.models.sps import ExpansionBudget, serialize
from wronskiops.services.report_service import ReportService, build_root_report, check_soundness, soundness_violations


def test_full_report(cubic_instance):
    report = build_root_report(cubic_instance, model='dense')
    assert report.exact_count == 3
    assert report.expanded_zero is False
    assert report.certified_upsilon == 5
    assert report.upsilon_size == 1
    assert report.reduced_terms == 3
    assert report.pit_blackbox is False
    assert report.pit_whitebox is False
    assert report.certificate_verified is True
    assert set(report.timings_ms) == {'a_priori', 'exact', 'certified', 'blackbox', 'whitebox'}
    assert soundness_violations(report) == {}
    check_soundness(report)


def test_selected_stages(cubic_instance):
    report = ReportService().build_root_report(cubic_instance, stages=['a_priori'])
    assert report.a_priori_sparse is not None
    assert report.exact_count is None
    assert list(report.timings_ms) == ['a_priori']


def test_budget_marks_stage_not_applicable(cubic_instance):
    service = ReportService(budget=ExpansionBudget(max_degree=1, max_sparsity=10))
    report = service.build_root_report(cubic_instance, stages=['exact', 'certified'])
    assert report.exact_count is None
    assert "exceeds the budget" in report.notes['exact']
    assert report.certified_upsilon == 5


def test_zero_instance_report(zero_instance):
    report = build_root_report(zero_instance, model='dense')
    assert report.expanded_zero is True
    assert report.exact_count is None
    assert report.reduced_terms == 0
    assert 'certified' in report.notes
    assert report.pit_blackbox is True
    assert report.pit_whitebox is True
    assert soundness_violations(report) == {}


def test_violations_are_reported():
    report = RootReport(exact_count=10, a_priori_sparse=3, certified_upsilon=12,
                        expanded_zero=False, pit_whitebox=True)
    problems = soundness_violations(report)
    assert set(problems) == {'a_priori_sparse', 'pit_whitebox'}
    with pytest.raises(SoundnessViolation) as info:
        check_soundness(report)
    assert info.value.exit_code == 4


def test_big_integers_are_strings_in_json():
    report = RootReport(a_priori_sparse=10 ** 40)
    data = json.loads(report.model_dump_json())
    assert data['a_priori_sparse'] == str(10 ** 40)
    assert RootReport.model_validate(data).a_priori_sparse == 10 ** 40
    assert report.bounds() == {'a_priori_sparse': 10 ** 40}


def test_report_round_trips_through_json(cubic_instance):
    root = build_root_report(cubic_instance, model='dense')
    report = Report(command="bound", instance=serialize(cubic_instance), root=root,
                    values={'note': "x"}, timings_ms=dict(root.timings_ms))
    text = report.model_dump_json(indent=2)
    again = Report.model_validate_json(text)
    assert again == report
    assert again.model_dump_json(indent=2) == text
