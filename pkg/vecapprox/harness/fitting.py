"""Log-log rate fits and the closed-form error rates they are compared with."""
import math
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from rich.console import Console

from ..config import SpacePair
from ..mixed_norm import embedding_norm

console = Console()


class RateFit(BaseModel):
    slope: float
    intercept: float
    r2: float
    points: int
    excluded: int = 0


class RateShape(NamedTuple):
    lower: float
    upper: float
    nonadaptive: float


class BoundConstant(NamedTuple):
    constant: float
    spread: float


def fit_rate(points: Sequence[Tuple[float, float]]) -> RateFit:
    """Least squares line through (log2 n, log2 error).

    Raises ValueError for fewer than three points or a nonpositive coordinate.
    """
    if len(points) < 3:
        raise ValueError(f"a rate fit needs at least 3 points, got {len(points)}")
    budgets = np.array([n for n, _ in points], dtype=np.float64)
    errors = np.array([e for _, e in points], dtype=np.float64)
    if np.any(budgets <= 0):
        raise ValueError("budgets in a rate fit must be positive")
    if np.any(errors <= 0) or not np.all(np.isfinite(errors)):
        raise ValueError("errors in a rate fit must be positive and finite; filter exact zeros first")

    x = np.log2(budgets)
    y = np.log2(errors)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    ss_res = float(np.sum(residual ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if np.all(y == y[0]) or ss_res == 0.0 else 1.0 - ss_res / ss_tot
    return RateFit(slope=float(slope), intercept=float(intercept), r2=r2, points=len(points))


def fit_positive(points: Iterable[Tuple[float, float]]) -> Optional[RateFit]:
    """fit_rate over the points with positive error; exact zeros are dropped with a warning.

    Returns None when fewer than three points remain.
    """
    points = list(points)
    kept = [(n, e) for n, e in points if e > 0]
    excluded = len(points) - len(kept)
    if excluded:
        console.print(f"[yellow]Warning: {excluded} exact-zero error(s) excluded from the rate fit[/yellow]")
    if len(kept) < 3:
        console.print("[yellow]Warning: fewer than 3 positive errors, no rate fit[/yellow]")
        return None
    return fit_rate(kept).model_copy(update={"excluded": excluded})


def proposition_bound(sp: SpacePair, n: int) -> float:
    """N1^{1/p-1/q} (ceil(n/N1)^{1/u-1/v} + ceil(n/N2)^{1/q-1/p}) for admissible pairs, ||J|| otherwise."""
    if not sp.is_admissible:
        return embedding_norm(sp)
    outer = sp.p.reciprocal - sp.q.reciprocal
    per_row = math.ceil(n / sp.n1) ** (sp.u.reciprocal - sp.v.reciprocal)
    rows = math.ceil(n / sp.n2) ** (sp.q.reciprocal - sp.p.reciprocal)
    return float(sp.n1 ** outer * (per_row + rows))


def theorem_rates(sp: SpacePair, n: int) -> RateShape:
    """Order of the adaptive minimal error (lower and upper form) and of the
    non-adaptive one, without constants.
    """
    if not sp.is_admissible:
        norm = embedding_norm(sp)
        return RateShape(lower=norm, upper=norm, nonadaptive=norm)
    lower = proposition_bound(sp, n)
    logarithm = math.log2(sp.n1 + sp.n2)
    outer = sp.p.reciprocal - sp.q.reciprocal
    per_row = math.ceil(n / (sp.n1 * logarithm)) ** (sp.u.reciprocal - sp.v.reciprocal)
    rows = math.ceil(n / (sp.n2 * logarithm)) ** (sp.q.reciprocal - sp.p.reciprocal)
    upper = float(sp.n1 ** outer * (per_row + rows))
    return RateShape(lower=lower, upper=upper, nonadaptive=float(sp.n1 ** outer))


def fit_bound_constant(records) -> BoundConstant:
    """Smallest C with mean_error <= C * bound_value on every record, and the
    max/min spread of mean_error/bound_value over records with positive error.
    """
    ratios: List[float] = [r.mean_error / r.bound_value for r in records if r.bound_value > 0]
    if not ratios:
        raise ValueError("no record with a positive bound value")
    positive = [ratio for ratio in ratios if ratio > 0]
    spread = max(positive) / min(positive) if positive else 1.0
    return BoundConstant(constant=max(ratios), spread=spread)
