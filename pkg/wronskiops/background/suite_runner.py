"""
Verification suites: randomized checks of every identity and bound,
sharded across worker processes and merged by case index.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from wronskiops.config.config import Config
from wronskiops.errors import DependentPrefixError
from wronskiops.logic.bounds import analyze_family, certified_bound_upsilon, interval_bound_heart
from wronskiops.logic.diffpower import derivative_terms, power_derivative, power_derivative_oracle
from wronskiops.logic.pit import certificate_check, hitting_set_size, pit_blackbox, pit_whitebox
from wronskiops.logic.polycore import derivative, descartes_negative_bound, descartes_positive_bound
from wronskiops.logic.realroots import count_negative_roots, count_positive_roots, count_real_roots
from wronskiops.logic.wronskian import (
    dett_degree_bound,
    dett_sparsity_bound,
    factored_wronskian,
    frobenius_check,
    wronskian_direct,
)
from wronskiops.models.generators import (
    InstanceParams,
    optimal_instance,
    random_descartes,
    random_instance,
    random_sparse_poly,
    spawn_seeds,
)
from wronskiops.models.reports import CaseResult, SuiteReport, SuiteStatus
from wronskiops.models.sps import SpsInstance, expand
from wronskiops.services.report_service import build_root_report, soundness_violations

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str]

OPTIMAL_GRID = [(k, p) for k in (2, 3) for p in (1, 2, 3)]


def _desk_params(rng: np.random.Generator, seed: int) -> InstanceParams:
    """k <= 3, m <= 2, t <= 3, d <= 4, alpha <= 4."""
    return InstanceParams(
        k=int(rng.integers(1, 4)),
        m=int(rng.integers(1, 3)),
        t=int(rng.integers(1, 4)),
        d=int(rng.integers(1, 5)),
        alpha_max=int(rng.integers(1, 5)),
        coeff_max=5,
        seed=seed,
    )


def case_power_derivative(index: int, seed: int) -> Outcome:
    rng = np.random.default_rng(seed)
    f = random_sparse_poly(rng, t=4, d=4, coeff_max=5)
    p = int(rng.integers(0, 6))
    alpha = int(rng.integers(p, 9))
    for term in derivative_terms(alpha, p):
        if sum((i + 1) * c for i, c in enumerate(term.s)) != p:
            return False, f"term {term.s} has the wrong differentiation order"
        if term.f_exponent + sum(term.s) != alpha:
            return False, f"term {term.s} is not homogeneous of degree {alpha}"
    closed = power_derivative(f, alpha, p)
    oracle = power_derivative_oracle(f, alpha, p)
    return closed == oracle, f"f = {f}, alpha = {alpha}, p = {p}"


def case_factorization(index: int, seed: int) -> Outcome:
    rng = np.random.default_rng(seed)
    params = InstanceParams(k=int(rng.integers(1, 4)), m=int(rng.integers(1, 3)), t=3, d=3,
                            alpha_max=4, seed=seed)
    inst = random_instance(params)
    s = inst.k
    factored = factored_wronskian(inst.bases, inst.products, s)
    gs = [product.shifted(factored.shift).expand(inst.bases) for product in inst.products]
    direct = wronskian_direct(gs)
    if factored.expand(inst.bases) != direct:
        return False, f"factored form differs from the direct Wronskian for s = {s}"
    if not factored.detT.is_zero:
        if factored.detT.degree > dett_degree_bound(inst.m, inst.d, s):
            return False, f"deg det T = {factored.detT.degree} above the degree bound"
        if factored.detT.sparsity > dett_sparsity_bound(inst.m, inst.t, s):
            return False, f"det T has {factored.detT.sparsity} terms, above the sparsity bound"
    return True, f"k = {inst.k}, m = {inst.m}"


def case_frobenius(index: int, seed: int) -> Outcome:
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 5))
    for _ in range(20):
        family = [random_sparse_poly(rng, t=3, d=5, coeff_max=5) for _ in range(k)]
        try:
            outcome = frobenius_check(family)
        except DependentPrefixError:
            continue
        return outcome.passed, outcome.detail
    return True, "no independent family drawn"


def case_optimality(index: int, seed: int) -> Outcome:
    k, p = OPTIMAL_GRID[index % len(OPTIMAL_GRID)]
    optimal = optimal_instance(k, p)
    roots = count_real_roots(expand(optimal.instance))
    base_roots = count_real_roots(optimal.f)
    critical = count_real_roots(optimal.f * derivative(optimal.f))
    bound, upsilon = certified_bound_upsilon(optimal.instance)
    checks = {
        f"Z(g) = {roots}, expected {optimal.predicted_roots}": roots == optimal.predicted_roots,
        f"Z(f) = {base_roots}, expected {optimal.predicted_base_roots}": base_roots == optimal.predicted_base_roots,
        f"|U| = {upsilon.size}, Z(ff') = {critical}, expected {optimal.predicted_upsilon}":
            upsilon.size == critical == optimal.predicted_upsilon,
        "tightness Z(g) >= (1+|U|)(k-1) + Z(f)": roots >= (1 + critical) * (k - 1) + base_roots,
        f"certified bound {bound} = Z(g) + |U| - Z(f)": bound == roots + critical - base_roots,
    }
    failed = [text for text, ok in checks.items() if not ok]
    return not failed, "; ".join(failed) or f"k = {k}, p = {p}, Z(g) = {roots}"


def case_soundness(index: int, seed: int) -> Outcome:
    rng = np.random.default_rng(seed)
    inst = random_instance(_desk_params(rng, seed))
    report = build_root_report(inst, stages=('a_priori', 'exact', 'certified'))
    if report.expanded_zero:
        return True, "instance vanished identically"
    problems = soundness_violations(report)
    return not problems, "; ".join(problems.values()) or f"{report.exact_count} roots"


def case_pit_agreement(index: int, seed: int) -> Outcome:
    rng = np.random.default_rng(seed)
    inst = random_instance(_desk_params(rng, seed), force_zero=True)
    if index % 2:
        # perturb one coefficient: the instance becomes nonzero
        coeffs = (inst.coeffs[0] + 1,) + inst.coeffs[1:]
        inst = SpsInstance(bases=inst.bases, coeffs=coeffs, exponents=inst.exponents)
    oracle = expand(inst).is_zero
    blackbox = pit_blackbox(inst, model='dense')
    whitebox = pit_whitebox(inst)
    if not blackbox.is_zero == whitebox.is_zero == oracle:
        return False, f"blackbox {blackbox.is_zero}, whitebox {whitebox.is_zero}, expansion {oracle}"
    if blackbox.queries > 1 + hitting_set_size(inst, 'dense'):
        return False, f"{blackbox.queries} queries exceed 1 + bound"
    check = certificate_check(inst, whitebox)
    return check.passed, check.detail


def case_descartes(index: int, seed: int) -> Outcome:
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 7))
    inst = random_descartes(rng, k, max_exponent=12, coeff_max=9)
    f = expand(inst)
    roots = count_real_roots(f)
    if roots > 2 * k - 1:
        return False, f"{roots} roots for {k} terms"
    if count_positive_roots(f) > descartes_positive_bound(f):
        return False, "positive roots exceed sign changes"
    if count_negative_roots(f) > descartes_negative_bound(f):
        return False, "negative roots exceed sign changes of f(-x)"
    bound, upsilon = certified_bound_upsilon(inst, analysis=analyze_family(inst, cap=k))
    if bound != 2 * k - 1 or upsilon.size != 1:
        return False, f"certified bound {bound} with |U| = {upsilon.size}, expected {2 * k - 1}"
    return True, f"{roots} roots, {k} terms"


def case_heart(index: int, seed: int) -> Outcome:
    rng = np.random.default_rng(seed)
    inst = random_instance(_desk_params(rng, seed))
    outcome = interval_bound_heart(inst)
    return outcome.passed, outcome.detail


SUITES: Dict[str, Callable[[int, int], Outcome]] = {
    'power-derivative': case_power_derivative,
    'factorization': case_factorization,
    'frobenius': case_frobenius,
    'optimality': case_optimality,
    'soundness': case_soundness,
    'pit-agreement': case_pit_agreement,
    'descartes': case_descartes,
    'heart': case_heart,
}


def _run_case(suite: str, index: int, seed: int) -> CaseResult:
    """Top-level so worker processes can pickle it."""
    try:
        passed, detail = SUITES[suite](index, seed)
    except Exception as e:
        passed, detail = False, f"{type(e).__name__}: {e}"
    return CaseResult(index=index, seed=seed, passed=passed, detail=detail)


class SuiteRunner:
    """Runs suites case by case; results never depend on the worker count."""

    def __init__(self, seed: Optional[int] = None, workers: Optional[int] = None):
        self.seed = Config.SEED if seed is None else seed
        self.workers = Config.WORKERS if workers is None else workers

    def run(self, suite: str, cases: Optional[int] = None) -> SuiteReport:
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}, expected one of {sorted(SUITES)}")
        count = Config.suite_cases(suite) if cases is None else cases
        report = SuiteReport(suite=suite, seed=self.seed, status=SuiteStatus.RUNNING)
        seeds = spawn_seeds(self.seed, count)
        logger.info("suite %s: %d cases on %d worker(s)", suite, count, self.workers)
        start = time.perf_counter()

        if self.workers > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(_run_case, repeat(suite), range(count), seeds))
        else:
            results = [_run_case(suite, index, seed) for index, seed in enumerate(seeds)]

        results.sort(key=lambda r: r.index)
        report.cases = count
        report.passed = sum(1 for r in results if r.passed)
        report.failures = [r for r in results if not r.passed]
        report.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
        report.status = SuiteStatus.PASSED if not report.failures else SuiteStatus.FAILED
        for failure in report.failures:
            logger.warning("suite %s case %d failed: %s", suite, failure.index, failure.detail)
        return report
