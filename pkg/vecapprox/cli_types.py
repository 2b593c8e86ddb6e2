"""CLI type definitions and annotations for vecapprox commands.

Reusable Annotated typer options, so every command that takes a space pair,
a budget or an output path gets the same flag names and help text.

Example usage in a command:
    @app.command()
    def approx(
        n1: N1Arg = None,
        budget: BudgetArg = None,
        seed: SeedArg = 0,
    ):
        ...
"""
from typing import List, Optional
from typing_extensions import Annotated
import typer


def parse_budgets(value: Optional[str]) -> Optional[List[int]]:
    """Parse '128,256,512' into [128, 256, 512]."""
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"budgets must be comma separated integers, got '{value}'")


# Config file
ConfigArg = Annotated[
    Optional[str],
    typer.Option(
        "--config", "-c",
        help="Path to a YAML experiment file (root key 'experiment'); flags override it",
        show_default=False
    )
]

# Space pair
N1Arg = Annotated[Optional[int], typer.Option("--n1", help="Number of rows N1")]
N2Arg = Annotated[Optional[int], typer.Option("--n2", help="Row length N2")]
PArg = Annotated[Optional[str], typer.Option("--p", help="Outer source exponent (number >= 1 or 'inf')")]
QArg = Annotated[Optional[str], typer.Option("--q", help="Outer target exponent (number >= 1 or 'inf')")]
UArg = Annotated[Optional[str], typer.Option("--u", help="Inner source exponent (number >= 1 or 'inf')")]
VArg = Annotated[Optional[str], typer.Option("--v", help="Inner target exponent (number >= 1 or 'inf')")]

# Experiment
BudgetArg = Annotated[Optional[int], typer.Option("--budget", "-n", help="Information budget n")]
BudgetsArg = Annotated[Optional[str], typer.Option("--budgets", help="Comma separated, strictly increasing budgets")]
MArg = Annotated[Optional[int], typer.Option("--m", help="Median repetitions (default ceil(11.1 log2(N1+N2)))")]
MeasureArg = Annotated[Optional[int], typer.Option("--measure", help="Input family 1-6, or 0 for the sparse fixture")]
AlgorithmArg = Annotated[
    Optional[str],
    typer.Option("--algorithm", "-a", help="dispatch, a2, a3, zero, fixed_rows or random_cells")
]
TrialsArg = Annotated[Optional[int], typer.Option("--trials", "-t", help="Monte Carlo trials per budget")]
MomentArg = Annotated[Optional[float], typer.Option("--w", help="Error moment w >= 1")]
SeedArg = Annotated[Optional[int], typer.Option("--seed", "-s", help="Master seed (64-bit unsigned)")]
WorkersArg = Annotated[Optional[int], typer.Option("--workers", "-j", help="Trial thread pool size (1 = serial)")]

# Output
OutArg = Annotated[Optional[str], typer.Option("--out", "-o", help="Write the report here instead of printing a table")]
FormatArg = Annotated[Optional[str], typer.Option("--format", "-f", help="Report format: csv or json")]
