import yaml
import numpy as np
from pathlib import Path
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .config import RootConfig
from .mixed_norm import as_matrix

console = Console()


def load_config(config_path: str) -> RootConfig:
    """Load an experiment configuration from a YAML file."""
    with open(config_path, "r") as f:
        raw_config = yaml.safe_load(f)
    if not isinstance(raw_config, dict):
        raise ValueError(f"Configuration file '{config_path}' must contain a mapping")
    return RootConfig(**raw_config)


def load_matrix(path: str) -> np.ndarray:
    """Read a matrix file: a "N1 N2" header line, then N1 rows of N2 reals."""
    lines = [line.split() for line in Path(path).read_text().splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError(f"'{path}': first line must be 'N1 N2'")
    try:
        n1, n2 = int(lines[0][0]), int(lines[0][1])
        rows = [[float(x) for x in line] for line in lines[1:]]
    except ValueError as e:
        raise ValueError(f"'{path}': {e}") from e
    if len(rows) != n1 or any(len(r) != n2 for r in rows):
        raise ValueError(f"'{path}': expected {n1} rows of {n2} values")
    return as_matrix(rows)


def write_matrix(path: str, f: np.ndarray) -> None:
    f = as_matrix(f)
    body = "\n".join(" ".join(repr(float(x)) for x in row) for row in f)
    Path(path).write_text(f"{f.shape[0]} {f.shape[1]}\n{body}\n")


def print_report_table(report, title: str = "Results") -> None:
    """Render report records (and the rate fit, if any) as a rich table."""
    table = Table(title=title, show_header=True, header_style="bold magenta")
    for column in ("experiment", "n", "N1 x N2", "p,q,u,v", "m", "mean error", "std error",
                   "queries", "bound"):
        table.add_column(column, style="cyan" if column == "experiment" else None)

    for r in report.sorted_records():
        table.add_row(
            r.experiment,
            str(r.n),
            f"{r.n1} x {r.n2}",
            f"{r.p},{r.q},{r.u},{r.v}",
            "-" if r.m is None else str(r.m),
            f"{r.mean_error:.6g}",
            f"{r.std_error:.3g}",
            str(r.query_count),
            f"{r.bound_value:.6g}",
        )
    console.print(table)

    if report.fit is not None:
        fit = report.fit
        console.print(
            f"Fitted rate: slope [yellow]{fit.slope:.4f}[/yellow], "
            f"intercept [yellow]{fit.intercept:.4f}[/yellow], R² [yellow]{fit.r2:.4f}[/yellow]"
        )
    if report.note:
        console.print(f"[dim]{report.note}[/dim]")


def print_gap_summary(result) -> None:
    console.print(Panel.fit(
        f"[bold green]Gap ratio: {result.ratio:.4g}[/bold green]\n"
        f"adaptive parameter ñ = {result.adaptive_budget}",
        border_style="green",
    ))
