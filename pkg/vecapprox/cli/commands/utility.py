"""Utility commands: version."""
import sys
from importlib.metadata import PackageNotFoundError, version as package_version

from rich.console import Console


console = Console()


def version() -> None:
    """
    Print the current version of vecapprox.
    """
    try:
        console.print(package_version("vecapprox"))
    except PackageNotFoundError:
        console.print("version not found")
        sys.exit(1)
