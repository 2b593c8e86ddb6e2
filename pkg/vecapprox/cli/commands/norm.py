"""Norm commands: norm, estimate."""
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from vecapprox.config import Exponent
from vecapprox.harness import run_estimator_study
from vecapprox.mixed_norm import inner_norm, mixed_norm
from vecapprox.utils import load_matrix
from vecapprox.validators import ensure_matrix_file
from .experiments import fail, write_or_print


console = Console()


def norm(matrix_file: str, p: str, u: str, q: Optional[str] = None, v: Optional[str] = None,
         rows: bool = False) -> None:
    """Print mixed norms of the matrix in `matrix_file`."""
    ensure_matrix_file(matrix_file)
    try:
        f = load_matrix(matrix_file)
        pairs = [(Exponent.parse(p), Exponent.parse(u))]
        if q is not None and v is not None:
            pairs.append((Exponent.parse(q), Exponent.parse(v)))
    except ValueError as e:
        fail(str(e))

    console.print(f"[bold cyan]{f.shape[0]} x {f.shape[1]} matrix from {matrix_file}[/bold cyan]")
    for outer, inner in pairs:
        console.print(f"  L_{outer}(L_{inner}) norm: [yellow]{mixed_norm(f, outer, inner)!r}[/yellow]")

    if rows:
        table = Table(show_header=True, header_style="bold magenta", box=None, padding=(0, 2))
        table.add_column("row", style="cyan")
        for _, inner in pairs:
            table.add_column(f"L_{inner}")
        per_row = [inner_norm(f, inner) for _, inner in pairs]
        for i in range(f.shape[0]):
            table.add_row(str(i), *(f"{norms[i]:.6g}" for norms in per_row))
        console.print(table)


def estimate(n2: int, u: str, v: str, ks: List[int], trials: int, seed: int,
             out: Optional[str] = None, format: str = "csv") -> None:
    """Sample-mean norm estimator study on the half-ones row."""
    try:
        report = run_estimator_study(n2, u, v, ks, trials, seed)
    except ValueError as e:
        fail(str(e))
    write_or_print(report, out, format, title=f"Norm estimation, N2={n2}, u={u}, v={v}")
