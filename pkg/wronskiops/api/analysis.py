"""
bound, roots and wronskian commands.
"""
import enum
import time
from pathlib import Path
from typing import Optional

import typer

from wronskiops.api.common import emit, handle_errors, load_instance, options
from wronskiops.errors import DependentPrefixError, ZeroPolynomialError
from wronskiops.logic.polycore import descartes_negative_bound, descartes_positive_bound
from wronskiops.logic.realroots import count_negative_roots, count_positive_roots, count_real_roots, isolate_roots
from wronskiops.logic.wronskian import (
    factored_wronskian,
    frobenius_check,
    wronskian_direct,
    wronskian_leading_coefficient,
)
from wronskiops.models.reports import Report
from wronskiops.models.sps import expand, serialize
from wronskiops.services.report_service import ReportService, check_soundness


class BoundMethod(str, enum.Enum):
    SPARSE = "sparse"
    DENSE = "dense"
    UPSILON = "upsilon"
    MAIN3 = "main3"
    ALL = "all"


SHOWN = {
    BoundMethod.SPARSE: {'a_priori_sparse'},
    BoundMethod.DENSE: {'a_priori_dense'},
    BoundMethod.UPSILON: {'certified_upsilon', 'upsilon_size', 'reduced_terms'},
    BoundMethod.MAIN3: {'certified_main3', 'reduced_terms'},
}


@handle_errors
def cmd_bound(
    ctx: typer.Context,
    file: Path = typer.Argument(..., help="Instance file"),
    method: BoundMethod = typer.Option(BoundMethod.ALL, "--method", help="Which bound to compute"),
    exact: bool = typer.Option(False, "--exact", help="Also count roots exactly and check every bound"),
):
    """Root-count bounds for an instance."""
    opts = options(ctx)
    inst = load_instance(file)
    if exact:
        # budget errors surface here with exit code 3
        expand(inst, opts.budget)
    stages = []
    if method in (BoundMethod.SPARSE, BoundMethod.DENSE, BoundMethod.ALL):
        stages.append('a_priori')
    if method in (BoundMethod.UPSILON, BoundMethod.MAIN3, BoundMethod.ALL):
        stages.append('certified')
    if exact:
        stages.append('exact')
    service = ReportService(budget=opts.budget, basis_cap=opts.basis_cap)
    root = service.build_root_report(inst, stages=stages)
    if method != BoundMethod.ALL:
        keep = SHOWN[method] | {'exact_count', 'expanded_zero'}
        for name in root.bounds():
            if name not in keep:
                setattr(root, name, None)
    if exact:
        check_soundness(root)
    emit(ctx, Report(command="bound", instance=serialize(inst), root=root, timings_ms=root.timings_ms))


@handle_errors
def cmd_roots(ctx: typer.Context, file: Path = typer.Argument(..., help="Instance file")):
    """Exact distinct real roots of the expanded instance."""
    opts = options(ctx)
    inst = load_instance(file)
    start = time.perf_counter()
    f = expand(inst, opts.budget)
    if f.is_zero:
        raise ZeroPolynomialError("infinitely many roots: the instance is identically zero")
    values = {
        'exact_count': str(count_real_roots(f)),
        'positive_roots': str(count_positive_roots(f)),
        'negative_roots': str(count_negative_roots(f)),
        'descartes_positive': str(descartes_positive_bound(f)),
        'descartes_negative': str(descartes_negative_bound(f)),
        'intervals': ", ".join(str(iv) for iv in isolate_roots(f)) or "none",
    }
    elapsed = (time.perf_counter() - start) * 1000
    emit(ctx, Report(command="roots", instance=serialize(inst), values=values, timings_ms={'roots': elapsed}))


@handle_errors
def cmd_wronskian(
    ctx: typer.Context,
    file: Path = typer.Argument(..., help="Instance file"),
    prefix: Optional[int] = typer.Option(None, "--prefix", help="Prefix length s (default: all terms)"),
):
    """Factored Wronskian of the first s power products."""
    opts = options(ctx)
    inst = load_instance(file)
    s = inst.k if prefix is None else prefix
    if not 1 <= s <= inst.k:
        raise typer.BadParameter(f"must lie in 1..{inst.k}", param_hint="--prefix")
    start = time.perf_counter()
    factored = factored_wronskian(inst.bases, inst.products, s)
    values = {
        'prefix': str(s),
        'shift': str(factored.shift),
        'power_exponents': " ".join(f"f{j}^{e}" for j, e in enumerate(factored.power_exponents, start=1) if e),
        'detT': str(factored.detT),
        'lc_wronskian': str(wronskian_leading_coefficient(inst.bases, inst.products[:s])),
    }
    if factored.expanded_degree(inst.bases) <= opts.budget.max_degree:
        gs = [p.shifted(factored.shift).expand(inst.bases) for p in inst.products[:s]]
        values['identity'] = "holds" if factored.expand(inst.bases) == wronskian_direct(gs) else "FAILS"
        hs = [p.expand(inst.bases) for p in inst.products[:s]]
        try:
            outcome = frobenius_check(hs)
            values['frobenius'] = "holds" if outcome.passed else outcome.detail
        except DependentPrefixError as e:
            values['frobenius'] = str(e)
    else:
        values['identity'] = "skipped: expansion too large"
    elapsed = (time.perf_counter() - start) * 1000
    emit(ctx, Report(command="wronskian", instance=serialize(inst), values=values, timings_ms={'wronskian': elapsed}))
