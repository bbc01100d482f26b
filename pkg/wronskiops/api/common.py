"""
Shared plumbing for the command modules: global options, instance loading,
error-to-exit-code mapping and report rendering.
"""
import functools
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from wronskiops.config.config import Config
from wronskiops.errors import InstanceSyntaxError, WronskiOpsError
from wronskiops.models.reports import Report
from wronskiops.models.sps import ExpansionBudget, SpsInstance, parse

logger = logging.getLogger(__name__)

console = Console()
error_console = Console(stderr=True)


@dataclass
class CliOptions:
    json: bool = False
    seed: int = Config.SEED
    budget_degree: int = Config.BUDGET_DEGREE
    budget_sparsity: int = Config.BUDGET_SPARSITY
    basis_cap: int = Config.BASIS_CAP
    workers: int = Config.WORKERS
    verbose: bool = False

    @property
    def budget(self) -> ExpansionBudget:
        return ExpansionBudget(max_degree=self.budget_degree, max_sparsity=self.budget_sparsity)


def options(ctx: typer.Context) -> CliOptions:
    if not isinstance(ctx.obj, CliOptions):
        ctx.obj = CliOptions()
    return ctx.obj


def load_instance(path: Path) -> SpsInstance:
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise InstanceSyntaxError(f"cannot read {path}: {e.strerror}")
    return parse(text)


def handle_errors(command):
    """Report library errors on stderr and exit with their code."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except WronskiOpsError as e:
            logger.debug("command failed", exc_info=True)
            error_console.print(f"[bold red]error:[/bold red] {escape(str(e))}")
            raise typer.Exit(code=e.exit_code)
    return wrapper


def emit(ctx: typer.Context, report: Report) -> None:
    if options(ctx).json:
        typer.echo(report.model_dump_json(indent=2))
        return
    table = Table(title=report.command, show_header=False)
    table.add_column("field", style="cyan")
    table.add_column("value")
    for name, value in report.values.items():
        table.add_row(name, escape(value))
    if report.root is not None:
        for name, value in report.root.model_dump(exclude_none=True, exclude={'notes', 'timings_ms'}).items():
            table.add_row(name, escape(str(value)))
        for stage, note in report.root.notes.items():
            table.add_row(f"{stage} (n/a)", escape(note))
    for stage, elapsed in report.timings_ms.items():
        table.add_row(f"time {stage}", f"{elapsed:.1f} ms")
    console.print(table)


def format_optional(value: Optional[object], missing: str = "not applicable") -> str:
    return missing if value is None else str(value)
