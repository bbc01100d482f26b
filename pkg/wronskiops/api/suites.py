"""
verify and gen commands.
"""
import enum
import logging
from pathlib import Path
from typing import List, Optional

import numpy as np
import typer
from pydantic import ValidationError

from wronskiops.api.common import emit, handle_errors, options
from wronskiops.background.suite_runner import SUITES, SuiteRunner
from wronskiops.errors import InstanceSyntaxError
from wronskiops.models.generators import InstanceParams, optimal_instance, random_descartes, random_instance
from wronskiops.models.reports import Report, SuiteStatus
from wronskiops.models.sps import serialize

logger = logging.getLogger(__name__)


class GenKind(str, enum.Enum):
    RANDOM = "random"
    ZERO = "zero"
    OPTIMAL = "optimal"
    DESCARTES = "descartes"


@handle_errors
def cmd_verify(
    ctx: typer.Context,
    suite: str = typer.Option(..., "--suite", help=f"One of: {', '.join(SUITES)}"),
    cases: Optional[int] = typer.Option(None, "--cases", min=1, help="Number of cases (default from config)"),
):
    """Run a randomized verification suite; exits 1 on any failure."""
    if suite not in SUITES:
        raise typer.BadParameter(f"unknown suite {suite!r}, expected one of {', '.join(SUITES)}",
                                 param_hint="--suite")
    opts = options(ctx)
    report = SuiteRunner(seed=opts.seed, workers=opts.workers).run(suite, cases)
    values = {
        'status': report.status.value,
        'passed': f"{report.passed}/{report.cases}",
        'seed': str(report.seed),
    }
    for failure in report.failures[:10]:
        values[f"case {failure.index}"] = failure.detail
    emit(ctx, Report(command="verify", values=values, suite=report, timings_ms={suite: report.elapsed_ms}))
    if report.status != SuiteStatus.PASSED:
        raise typer.Exit(code=1)


def _comment(lines: List[str]) -> str:
    return "".join(f"# {line}\n" for line in lines)


@handle_errors
def cmd_gen(
    ctx: typer.Context,
    kind: GenKind = typer.Option(GenKind.RANDOM, "--kind", help="Instance family"),
    k: int = typer.Option(3, "--k", min=1, help="Number of terms"),
    m: int = typer.Option(1, "--m", min=1, help="Number of bases"),
    t: int = typer.Option(2, "--t", min=1, help="Terms per base"),
    d: int = typer.Option(3, "--d", min=0, help="Base degree bound"),
    alpha_max: int = typer.Option(3, "--alpha-max", min=0, help="Largest exponent"),
    coeff_max: int = typer.Option(5, "--coeff-max", min=1, help="Largest coefficient magnitude"),
    p: int = typer.Option(1, "--p", min=1, help="Construction parameter for optimal instances"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write to a file instead of stdout"),
):
    """Generate an instance in the text format."""
    opts = options(ctx)
    header = [f"kind {kind.value}, seed {opts.seed}"]
    if kind in (GenKind.RANDOM, GenKind.ZERO):
        try:
            params = InstanceParams(k=k, m=m, t=t, d=d, alpha_max=alpha_max, coeff_max=coeff_max, seed=opts.seed)
        except ValidationError as e:
            raise InstanceSyntaxError(f"invalid generator parameters: {e.errors()[0]['msg']}")
        inst = random_instance(params, force_zero=kind == GenKind.ZERO)
    elif kind == GenKind.DESCARTES:
        if k > alpha_max + 1:
            raise typer.BadParameter("needs k <= alpha-max + 1 distinct exponents", param_hint="--k")
        inst = random_descartes(np.random.default_rng(opts.seed), k, max_exponent=alpha_max, coeff_max=coeff_max)
    else:
        if k < 2:
            raise typer.BadParameter("optimal instances need k >= 2", param_hint="--k")
        optimal = optimal_instance(k, p)
        inst = optimal.instance
        header += [
            f"g = h(f) with h = {optimal.h}",
            f"predicted real roots: {optimal.predicted_roots}",
            f"predicted |U| = Z(f f'): {optimal.predicted_upsilon}",
            f"predicted Z(f): {optimal.predicted_base_roots}",
        ]
    text = _comment(header) + serialize(inst)
    if out is None:
        if options(ctx).json:
            emit(ctx, Report(command="gen", instance=serialize(inst), values={'kind': kind.value}))
        else:
            typer.echo(text, nl=False)
        return
    out.write_text(text, encoding='utf-8')
    logger.info("wrote %s instance to %s", kind.value, out)
