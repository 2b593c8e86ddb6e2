"""Self-test command: selftest."""
from rich.console import Console
from rich.table import Table

from vecapprox.harness import run_selftest


console = Console()


def selftest(seed: int = 0) -> bool:
    """Run the invariant suite; returns True when every check passed."""
    results = run_selftest(seed)
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("check", style="cyan")
    table.add_column("status")
    table.add_column("detail")
    for result in results:
        status = "[green]✅ pass[/green]" if result.passed else "[bold red]❌ fail[/bold red]"
        table.add_row(result.name, status, result.detail)
    console.print(table)
    return all(result.passed for result in results)
