"""
Runs the analysis pipeline on one instance and assembles a RootReport.
"""
import logging
import time
from contextlib import contextmanager
from typing import Dict, Iterable, Optional

from wronskiops.errors import ExpansionBudgetError, ResourceLimitError, SoundnessViolation
from wronskiops.logic.bounds import (
    analyze_family,
    bound_dense,
    bound_sparse,
    bound_sparse_refined,
    certified_bound_main3,
    certified_bound_sum,
    certified_bound_upsilon,
)
from wronskiops.logic.pit import certificate_check, pit_blackbox, pit_whitebox
from wronskiops.logic.polycore import descartes_negative_bound, descartes_positive_bound
from wronskiops.logic.realroots import count_real_roots
from wronskiops.models.reports import RootReport
from wronskiops.models.sps import ExpansionBudget, SpsInstance, expand

logger = logging.getLogger(__name__)

STAGES = ('a_priori', 'exact', 'certified', 'blackbox', 'whitebox')


class ReportService:
    """Builds root reports with per-stage timings."""

    def __init__(self, budget: Optional[ExpansionBudget] = None, model: str = 'sparse',
                 basis_cap: Optional[int] = None, query_cap: Optional[int] = None):
        self.budget = budget or ExpansionBudget.default()
        self.model = model
        self.basis_cap = basis_cap
        self.query_cap = query_cap

    @contextmanager
    def _stage(self, report: RootReport, stage: str):
        """Times a stage; budget and resource errors mark it not applicable."""
        start = time.perf_counter()
        try:
            yield
        except (ExpansionBudgetError, ResourceLimitError) as e:
            report.notes[stage] = str(e)
            logger.warning("%s stage not applicable: %s", stage, e)
        finally:
            elapsed = (time.perf_counter() - start) * 1000
            report.timings_ms[stage] = round(elapsed, 3)
            logger.info("%s stage finished in %.1f ms", stage, elapsed)

    def build_root_report(self, inst: SpsInstance, stages: Optional[Iterable[str]] = None) -> RootReport:
        wanted = set(STAGES if stages is None else stages)
        report = RootReport()

        if 'a_priori' in wanted:
            with self._stage(report, 'a_priori'):
                report.a_priori_sparse = bound_sparse(inst.k, inst.m, inst.t)
                report.a_priori_dense = bound_dense(inst.k, inst.m, inst.d)
                report.a_priori_refined = bound_sparse_refined(inst.k, inst.m, inst.t)

        if 'exact' in wanted:
            with self._stage(report, 'exact'):
                expanded = expand(inst, self.budget)
                report.expanded_zero = expanded.is_zero
                if not expanded.is_zero:
                    report.exact_count = count_real_roots(expanded)
                    report.descartes_positive = descartes_positive_bound(expanded)
                    report.descartes_negative = descartes_negative_bound(expanded)

        if 'certified' in wanted:
            with self._stage(report, 'certified'):
                analysis = analyze_family(inst, cap=self.basis_cap)
                if analysis is None:
                    report.reduced_terms = 0
                    report.notes['certified'] = "identically zero instance: U is infinite"
                else:
                    bound, upsilon = certified_bound_upsilon(inst, analysis=analysis)
                    report.reduced_terms = analysis.k
                    report.upsilon_size = upsilon.size
                    report.certified_upsilon = bound
                    report.certified_main3 = certified_bound_main3(inst, analysis=analysis)
                    report.certified_sum = certified_bound_sum(inst, analysis=analysis)

        if 'blackbox' in wanted:
            with self._stage(report, 'blackbox'):
                verdict = pit_blackbox(inst, model=self.model, query_cap=self.query_cap)
                report.pit_blackbox = verdict.is_zero
                report.blackbox_queries = verdict.queries
                report.blackbox_witness = verdict.witness

        if 'whitebox' in wanted:
            with self._stage(report, 'whitebox'):
                verdict = pit_whitebox(inst, cap=self.basis_cap)
                report.pit_whitebox = verdict.is_zero
                report.certificate_verified = certificate_check(inst, verdict, self.budget).passed

        return report


def build_root_report(inst: SpsInstance, *, budget: Optional[ExpansionBudget] = None, model: str = 'sparse',
                      basis_cap: Optional[int] = None, query_cap: Optional[int] = None,
                      stages: Optional[Iterable[str]] = None) -> RootReport:
    service = ReportService(budget=budget, model=model, basis_cap=basis_cap, query_cap=query_cap)
    return service.build_root_report(inst, stages=stages)


def soundness_violations(report: RootReport) -> Dict[str, str]:
    """Every claim in the report contradicted by the exact oracle."""
    problems = {}
    if report.exact_count is not None:
        for name, bound in report.bounds().items():
            if report.exact_count > bound:
                problems[name] = f"{report.exact_count} real roots exceed {name} = {bound}"
        if report.descartes_positive is not None and report.descartes_negative is not None:
            if report.exact_count > report.descartes_positive + report.descartes_negative + 1:
                problems['descartes'] = "root count exceeds the rule of signs"
    if report.expanded_zero is not None:
        for name in ('pit_blackbox', 'pit_whitebox'):
            verdict = getattr(report, name)
            if verdict is not None and verdict != report.expanded_zero:
                problems[name] = f"{name} says {'zero' if verdict else 'nonzero'}, expansion disagrees"
    if report.certificate_verified is False:
        problems['certificate'] = "whitebox certificate failed verification"
    return problems


def check_soundness(report: RootReport) -> None:
    problems = soundness_violations(report)
    if problems:
        raise SoundnessViolation("; ".join(problems.values()))
