"""Single-run command: approx."""
from typing import Optional

import numpy as np
from rich.console import Console

from vecapprox.algorithms import default_repetitions, expected_count, run_algorithm, uses_iteration
from vecapprox.config import ApproxParams
from vecapprox.hard_instances import sample_measure
from vecapprox.information import BudgetExceededError, InfoOracle, substream
from vecapprox.mixed_norm import source_norm, target_norm
from vecapprox.utils import load_matrix, write_matrix
from vecapprox.validators import ensure_matrix_file, ensure_output_writable, ensure_subfull_budget
from .experiments import build_space, fail


console = Console()


def _branch(params: ApproxParams, algorithm: str) -> str:
    if algorithm != "dispatch":
        return algorithm
    sp = params.sp
    if not sp.is_admissible:
        return "dispatch -> zero"
    if params.n >= sp.cells:
        return "dispatch -> full read"
    return "dispatch -> a3" if uses_iteration(sp) else "dispatch -> a2"


def approx(
    matrix_file: Optional[str],
    n1: Optional[int], n2: Optional[int],
    p: Optional[str], q: Optional[str], u: Optional[str], v: Optional[str],
    budget: Optional[int],
    m: Optional[int] = None,
    measure: int = 1,
    algorithm: str = "dispatch",
    seed: int = 0,
    out: Optional[str] = None,
) -> None:
    """Run one algorithm once, on a matrix file or on a draw from an input family."""
    if budget is None:
        fail("Missing --budget")
    f: Optional[np.ndarray] = None
    if matrix_file:
        ensure_matrix_file(matrix_file)
        try:
            f = load_matrix(matrix_file)
        except ValueError as e:
            fail(str(e))
        n1, n2 = f.shape
    sp = build_space(n1=n1, n2=n2, p=p, q=q, u=u, v=v)
    if algorithm in ("a2", "a3"):
        ensure_subfull_budget(budget, sp.n1, sp.n2)

    stream = substream(seed, "approx", 0)
    try:
        params = ApproxParams(sp=sp, n=budget, m=m or default_repetitions(sp.n1, sp.n2))
        if f is None:
            f = sample_measure(measure, sp, budget, stream.child("instance"))
        oracle = InfoOracle(f, budget=expected_count(algorithm, params))
        output = run_algorithm(algorithm, oracle, params, stream.child("algorithm"))
    except BudgetExceededError as e:
        fail(f"Budget violated: {e}")
    except ValueError as e:
        fail(str(e))

    console.print(f"[bold cyan]{_branch(params, algorithm)}[/bold cyan] on {sp.n1} x {sp.n2}, n={budget}, m={params.m}")
    console.print(f"  Input norm L_{sp.p}(L_{sp.u}):  [yellow]{source_norm(f, sp):.6g}[/yellow]")
    console.print(f"  Error norm L_{sp.q}(L_{sp.v}):  [yellow]{target_norm(f - output, sp):.6g}[/yellow]")
    console.print(f"  Queries:                 [yellow]{oracle.count}[/yellow]")

    if out:
        ensure_output_writable(out)
        write_matrix(out, output)
        console.print(f"[green]✅ Approximation written to {out}[/green]")
