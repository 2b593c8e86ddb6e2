"""Lower-bound command: lower-bound."""

from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel

from vecapprox.hard_instances import EnumerationTooLargeError, HardInstanceSpec, lower_bound_value
from .experiments import build_space, fail


console = Console()


def lower_bound(which: int, n1, n2, p, q, u, v, budget: int) -> None:
    """Print the exact average-case lower bound of family `which` at budget n."""
    sp = build_space(n1=n1, n2=n2, p=p, q=q, u=u, v=v)
    try:
        spec = HardInstanceSpec(which=which, sp=sp, n=budget)
        bound = lower_bound_value(spec, budget)
    except EnumerationTooLargeError as e:
        fail(str(e), "Exact values are limited to tiny instances; lower n or N2.")
    except (ValidationError, ValueError) as e:
        fail(str(e))

    if not bound.applicable:
        console.print(f"[yellow]Warning: not applicable, 4n={4 * budget} >= n̄={bound.n_bar}[/yellow]")
        return
    body = (
        f"value:       [yellow]{bound.value!r}[/yellow]\n"
        f"case:        {bound.case}\n"
        f"n̄:           {bound.n_bar}\n"
        f"subset size: {bound.subset_size}\n"
        f"exhaustive:  {'yes' if bound.exhaustive else 'no (one representative subset)'}"
    )
    console.print(Panel.fit(body, title=f"family {which}, n={budget}", border_style="green"))
