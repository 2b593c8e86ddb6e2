"""Pre-flight validation checks for vecapprox commands.

Check functions return bool; ensure functions print a red message with
suggestions and exit with status 1.

Check functions:
- check_config_file(config_path) - config file exists and is a file
- check_matrix_file(path) - matrix file exists and is a file
- check_output_writable(path) - the parent directory of an output path is writable

Ensure functions:
- ensure_config_file(config_path)
- ensure_matrix_file(path)
- ensure_output_writable(path)
- ensure_subfull_budget(n, n1, n2) - the adaptive approximators need n < N1*N2
"""
import os
import sys
from rich.console import Console

console = Console()


def check_config_file(config_path: str) -> bool:
    """Check if config file exists and is readable."""
    return os.path.exists(config_path) and os.path.isfile(config_path)


def check_matrix_file(path: str) -> bool:
    return os.path.isfile(path) and os.access(path, os.R_OK)


def check_output_writable(path: str) -> bool:
    """Check if the directory that will hold `path` exists and is writable."""
    directory = os.path.dirname(os.path.abspath(path))
    return os.path.isdir(directory) and os.access(directory, os.W_OK)


def ensure_config_file(config_path: str):
    """Ensure config file exists, exit with error if not."""
    if not check_config_file(config_path):
        console.print(f"[bold red]❌ Configuration file '{config_path}' not found.[/bold red]")
        console.print(f"[yellow]You can:[/yellow]")
        console.print(f"[cyan]  1. Specify an existing config file:[/cyan]")
        console.print(f"[cyan]     vecapprox rates --config <path>[/cyan]")
        console.print(f"[cyan]  2. Pass the experiment on the command line:[/cyan]")
        console.print(f"[cyan]     vecapprox rates --n1 64 --n2 64 --p 1 --q 2 --u 2 --v 1 --budgets 128,256,512[/cyan]")
        sys.exit(1)


def ensure_matrix_file(path: str):
    if not check_matrix_file(path):
        console.print(f"[bold red]❌ Matrix file '{path}' not found or not readable.[/bold red]")
        console.print(f"[yellow]Expected format: first line 'N1 N2', then N1 rows of N2 numbers.[/yellow]")
        sys.exit(1)


def ensure_output_writable(path: str):
    """Ensure the report can be written, exit with error if not."""
    if not check_output_writable(path):
        directory = os.path.dirname(os.path.abspath(path))
        console.print(f"[bold red]❌ Cannot write report to '{path}'[/bold red]")
        console.print(f"[yellow]Please ensure:[/yellow]")
        console.print(f"[cyan]  • The directory {directory} exists[/cyan]")
        console.print(f"[cyan]  • You have write permissions[/cyan]")
        sys.exit(1)


def ensure_subfull_budget(n: int, n1: int, n2: int):
    if n >= n1 * n2:
        console.print(f"[bold red]❌ Budget n={n} reads the whole {n1}x{n2} grid.[/bold red]")
        console.print(f"[yellow]Use --algorithm dispatch (full read) or a budget below {n1 * n2}.[/yellow]")
        sys.exit(1)
