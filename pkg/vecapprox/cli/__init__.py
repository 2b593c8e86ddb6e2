import os
import typer
from typing import Optional
from typing_extensions import Annotated

from rich.console import Console

from vecapprox.cli_types import (
    ConfigArg,
    N1Arg,
    N2Arg,
    PArg,
    QArg,
    UArg,
    VArg,
    BudgetArg,
    BudgetsArg,
    MArg,
    MeasureArg,
    AlgorithmArg,
    TrialsArg,
    MomentArg,
    SeedArg,
    WorkersArg,
    OutArg,
    FormatArg,
    parse_budgets,
)
from .commands.norm import (
    norm as norm_norm,
    estimate as norm_estimate,
)
from .commands.approx import approx as approx_approx
from .commands.experiments import (
    rates as experiments_rates,
    gap as experiments_gap,
)
from .commands.lower_bound import lower_bound as lower_bound_cmd
from .commands.selftest import selftest as selftest_cmd
from .commands.utility import version as utility_version

_DEV_MODE = os.getenv("VECAPPROX_DEV", "").lower() == "true"


def version_callback(
    version: bool = typer.Option(None, "--version", "-V", help="Show version and exit"),
):
    """Handle --version."""
    if version:
        utility_version()
        raise typer.Exit()

app = typer.Typer(
    name="vecapprox",
    help="Randomized approximation of mixed-norm embeddings from point values: adaptive and non-adaptive algorithms, hard input families, exact lower bounds and Monte Carlo rate experiments.",
    add_completion=False,
    no_args_is_help=True,
    pretty_exceptions_enable=True,
    pretty_exceptions_show_locals=_DEV_MODE,
    context_settings={"help_option_names": ["-h", "--help"]},
)
app.callback(invoke_without_command=True)(version_callback)

console = Console()


@app.command()
def norm(
    matrix_file: Annotated[str, typer.Argument(help="Matrix file ('N1 N2' header, then rows)")],
    p: Annotated[str, typer.Option("--p", help="Outer exponent")] = "2",
    u: Annotated[str, typer.Option("--u", help="Inner exponent")] = "2",
    q: QArg = None,
    v: VArg = None,
    rows: Annotated[bool, typer.Option("--rows", help="Also print every row norm")] = False,
):
    """
    Evaluate mixed norms L_p(L_u) (and L_q(L_v)) of a matrix file.
    """
    norm_norm(matrix_file, p, u, q, v, rows)


@app.command()
def estimate(
    n2: N2Arg = 4096,
    u: UArg = "inf",
    v: VArg = "1",
    budgets: BudgetsArg = "16,32,64,128,256,512,1024",
    trials: TrialsArg = 2000,
    seed: SeedArg = 0,
    out: OutArg = None,
    format: FormatArg = "csv",
):
    """
    Error of the sampled L_v norm estimator against the sample count.

    --budgets lists the sample counts k; the input is the half-ones row.
    """
    norm_estimate(n2, u, v, parse_budgets(budgets), trials, seed, out, format)


@app.command()
def approx(
    matrix_file: Annotated[Optional[str], typer.Argument(help="Matrix file; omit to draw from --measure")] = None,
    n1: N1Arg = None,
    n2: N2Arg = None,
    p: PArg = None,
    q: QArg = None,
    u: UArg = None,
    v: VArg = None,
    budget: BudgetArg = None,
    m: MArg = None,
    measure: MeasureArg = 1,
    algorithm: AlgorithmArg = "dispatch",
    seed: SeedArg = 0,
    out: Annotated[Optional[str], typer.Option("--out", "-o", help="Write the approximation matrix here")] = None,
):
    """
    Run one algorithm once and print its error and query count.
    """
    approx_approx(matrix_file, n1, n2, p, q, u, v, budget, m, measure, algorithm, seed, out)


@app.command()
def rates(
    config_file: ConfigArg = None,
    n1: N1Arg = None,
    n2: N2Arg = None,
    p: PArg = None,
    q: QArg = None,
    u: UArg = None,
    v: VArg = None,
    budgets: BudgetsArg = None,
    m: MArg = None,
    measure: MeasureArg = None,
    algorithm: AlgorithmArg = None,
    trials: TrialsArg = None,
    w: MomentArg = None,
    seed: SeedArg = None,
    workers: WorkersArg = None,
    out: OutArg = None,
    format: FormatArg = None,
):
    """
    Monte Carlo error over a budget grid, with a log-log rate fit.
    """
    experiments_rates(
        config_file,
        n1=n1, n2=n2, p=p, q=q, u=u, v=v,
        budgets=parse_budgets(budgets), m=m, measure=measure, algorithm=algorithm,
        trials=trials, w=w, seed=seed, workers=workers, out=out, format=format,
    )


@app.command()
def gap(
    config_file: ConfigArg = None,
    budget: BudgetArg = None,
    budgets: BudgetsArg = None,
    trials: TrialsArg = None,
    m: Annotated[Optional[int], typer.Option("--m", help="Median repetitions of the adaptive arm (default 1)")] = None,
    seed: SeedArg = None,
    workers: WorkersArg = None,
    out: OutArg = None,
    format: FormatArg = None,
):
    """
    Adaptive against non-adaptive error on the hidden-row family.

    Uses N1 = N2 = floor(sqrt(21 n)) + 1, p = 1, u = inf, q = inf, v = 1.
    """
    grid = parse_budgets(budgets) or ([budget] if budget is not None else None)
    experiments_gap(config_file, grid, trials, seed, m, workers, out, format)


@app.command(name="lower-bound")
def lower_bound(
    which: Annotated[int, typer.Option("--measure", help="Input family 1-4")] = 2,
    n1: N1Arg = None,
    n2: N2Arg = None,
    p: PArg = None,
    q: QArg = None,
    u: UArg = None,
    v: VArg = None,
    budget: BudgetArg = None,
):
    """
    Exact average-case lower bound of an input family on a tiny instance.
    """
    if budget is None:
        console.print("[bold red]❌ Missing --budget[/bold red]")
        raise typer.Exit(1)
    lower_bound_cmd(which, n1, n2, p, q, u, v, budget)


@app.command()
def selftest(seed: SeedArg = 0):
    """
    Run the invariant suite. Exits with status 2 if any check fails.
    """
    if not selftest_cmd(seed):
        raise typer.Exit(2)


@app.command()
def version():
    """
    Print the current version of vecapprox.
    """
    utility_version()


def main() -> None:
    """Entry point."""
    app()


if __name__ == "__main__":
    main()
