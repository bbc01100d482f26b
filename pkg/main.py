import logging
from typing import Optional

import coloredlogs
import typer

from wronskiops.api.analysis import cmd_bound, cmd_roots, cmd_wronskian
from wronskiops.api.common import CliOptions
from wronskiops.api.pit import cmd_pit
from wronskiops.api.suites import cmd_gen, cmd_verify
from wronskiops.config.config import Config

app = typer.Typer(
    name="wronskiops",
    help="Real-root bounds and identity testing for sums of products of powers of sparse polynomials.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def main(
    ctx: typer.Context,
    json: bool = typer.Option(False, "--json", help="Emit the report as JSON"),
    seed: int = typer.Option(Config.SEED, "--seed", min=0, help="Root seed for generators and suites"),
    budget_degree: int = typer.Option(Config.BUDGET_DEGREE, "--budget-degree", min=0,
                                      help="Largest degree the expansion oracle may build"),
    budget_sparsity: int = typer.Option(Config.BUDGET_SPARSITY, "--budget-sparsity", min=1,
                                        help="Largest number of terms the expansion oracle may build"),
    basis_cap: int = typer.Option(Config.BASIS_CAP, "--basis-cap", min=1,
                                  help="Largest Wronskian basis for whitebox PIT and certified bounds"),
    workers: int = typer.Option(Config.WORKERS, "--workers", min=1, help="Worker processes for suites"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Overrides WRONSKIOPS_LOG_LEVEL"),
):
    level = "DEBUG" if verbose else (log_level or Config.LOG_LEVEL)
    coloredlogs.install(level=level.upper(), fmt="%(asctime)s %(name)s %(levelname)s %(message)s")
    logging.getLogger(__name__).debug("log level %s", level)
    ctx.obj = CliOptions(
        json=json,
        seed=seed,
        budget_degree=budget_degree,
        budget_sparsity=budget_sparsity,
        basis_cap=basis_cap,
        workers=workers,
        verbose=verbose,
    )


# Register the commands
app.command("bound")(cmd_bound)
app.command("roots")(cmd_roots)
app.command("wronskian")(cmd_wronskian)
app.command("pit")(cmd_pit)
app.command("verify")(cmd_verify)
app.command("gen")(cmd_gen)


if __name__ == "__main__":
    app()
