"""Randomized approximation of the identity L_p(L_u) -> L_q(L_v) from point values.

The adaptive scheme works in two phases:

1. Row ranking. For every row i the L_v norm is estimated m times from
   ceil(n/N1) uniformly sampled columns (the sample-mean estimator of
   `norm_estimate_a1`), and the m estimates are reduced by their median.
   The column sample table is drawn once per run and shared by all rows.
2. Row reading. The ceil(n/N2) rows with the largest median estimates are
   read in full and copied into the output; every other output row is zero.

`approx_a3` applies the scheme twice, the second time to the residual of the
first, and `approx_dispatch` picks between the zero algorithm, a full read,
and the one- or two-stage variant depending on the exponents.

Non-adaptive competitors (`nonadaptive_fixed_rows`, `nonadaptive_random_cells`)
fix their sample pattern before any value is seen.
"""
import math
from typing import Callable, Dict, NamedTuple, Optional, Union

import numpy as np

from .config import ApproxParams, Exponent, ExponentLike, SpacePair
from .information import InfoOracle, RandomStream, ResidualOracle
from .mixed_norm import average_norm

Oracle = Union[InfoOracle, ResidualOracle]

# ceil(c * log2(N1 + N2)) repetitions, c = 8(w + 1)/log2(e) at w = 1.
DEFAULT_REPETITION_FACTOR = 11.1


class RowEstimates(NamedTuple):
    a: np.ndarray        # (N1, m) single estimates a_ik
    a_tilde: np.ndarray  # (N1,) medians
    pi: np.ndarray       # row order, largest median first


class CardinalityCount(NamedTuple):
    exact: int
    bound: int


def median(values, axis: Optional[int] = None):
    """Middle order statistic; mean of the two middle ones for even length.

    With `axis`, the medians along that axis are returned as an array.
    """
    array = np.asarray(values, dtype=np.float64)
    if array.size == 0:
        raise ValueError("median of an empty sequence is undefined")
    if axis is None:
        return float(np.median(array))
    return np.median(array, axis=axis)


def default_repetitions(n1: int, n2: int) -> int:
    return max(1, math.ceil(DEFAULT_REPETITION_FACTOR * math.log2(n1 + n2)))


def sample_norm(values: np.ndarray, v: Exponent, axis: int = -1) -> np.ndarray:
    """((1/k) * sum |x|^v)^(1/v) along axis, for finite v."""
    if v.is_infinite:
        raise ValueError("the sampling norm estimator needs a finite exponent v")
    return average_norm(values, v, axis=axis)


def norm_estimate_a1(oracle: Oracle, row: int, v: ExponentLike, indices) -> float:
    """Estimate ||f_row||_{L_v} from the sampled columns in `indices`.

    Consumes exactly len(indices) queries.
    """
    indices = np.asarray(indices, dtype=np.intp)
    if indices.ndim != 1 or indices.size == 0:
        raise ValueError("norm estimation needs at least one sample index")
    values = oracle.query_batch(row, indices)
    return float(sample_norm(values, Exponent.parse(v)))


def boosted_row_estimates(oracle: Oracle, params: ApproxParams, stream: RandomStream) -> RowEstimates:
    sp = params.sp
    k = params.samples_per_row
    xi = stream.uniform_index(sp.n2, size=(k, params.m))
    rows = np.arange(sp.n1)[:, None, None]
    values = oracle.query_batch(rows, xi[None, :, :])  # (N1, k, m)
    a = sample_norm(values, sp.v, axis=1)
    a_tilde = median(a, axis=1)
    # stable sort of the negated medians: ties keep ascending row order
    pi = np.argsort(-a_tilde, kind="stable")
    return RowEstimates(a=a, a_tilde=a_tilde, pi=pi)


def _read_rows(oracle: Oracle, sp: SpacePair, rows: np.ndarray) -> np.ndarray:
    output = np.zeros((sp.n1, sp.n2))
    if rows.size:
        output[rows] = oracle.query_batch(rows[:, None], np.arange(sp.n2)[None, :])
    return output


def approx_a2(oracle: Oracle, params: ApproxParams, stream: RandomStream) -> np.ndarray:
    params.require_subfull_budget()
    estimates = boosted_row_estimates(oracle, params, stream)
    selected = estimates.pi[:params.rows_read]
    return _read_rows(oracle, params.sp, selected)


def approx_a3(oracle: InfoOracle, params: ApproxParams, stream: RandomStream) -> np.ndarray:
    params.require_subfull_budget()
    first = approx_a2(oracle, params, stream.child("stage", 1))
    second = approx_a2(ResidualOracle(oracle, first), params, stream.child("stage", 2))
    return first + second


def zero_algorithm(sp: SpacePair) -> np.ndarray:
    return np.zeros((sp.n1, sp.n2))


def full_read(oracle: Oracle, sp: SpacePair) -> np.ndarray:
    return _read_rows(oracle, sp, np.arange(sp.n1))


def approx_dispatch(oracle: InfoOracle, params: ApproxParams, stream: RandomStream) -> np.ndarray:
    sp = params.sp
    if not sp.is_admissible:
        return zero_algorithm(sp)
    if params.n >= sp.cells:
        return full_read(oracle, sp)
    if sp.inner_gap <= 0.5:
        return approx_a2(oracle, params, stream)
    return approx_a3(oracle, params, stream)


def uses_iteration(sp: SpacePair) -> bool:
    """Whether dispatch runs the two-stage variant for this space pair."""
    return sp.is_admissible and sp.inner_gap > 0.5


def nonadaptive_fixed_rows(oracle: Oracle, sp: SpacePair, n: int) -> np.ndarray:
    if n < 0:
        raise ValueError(f"budget must be nonnegative, got {n}")
    return _read_rows(oracle, sp, np.arange(min(n // sp.n2, sp.n1)))


def nonadaptive_random_cells(oracle: Oracle, sp: SpacePair, n: int, stream: RandomStream) -> np.ndarray:
    if n < 0:
        raise ValueError(f"budget must be nonnegative, got {n}")
    # the whole pattern is fixed before the first query
    cells = stream.sample_without_replacement(sp.cells, min(n, sp.cells))
    rows, cols = np.divmod(cells, sp.n2)
    output = np.zeros((sp.n1, sp.n2))
    if cells.size:
        output[rows, cols] = oracle.query_batch(rows, cols)
    return output


# =============================================================================
# Cardinality accounting
# =============================================================================

def cardinality_count(params: ApproxParams, iterated: bool = False) -> CardinalityCount:
    """Exact query count of the one-stage approximator and the closed-form bound
    (m+1)n + m*N1 + N2; both doubled for the two-stage variant.
    """
    sp = params.sp
    exact = params.m * sp.n1 * params.samples_per_row + params.rows_read * sp.n2
    bound = (params.m + 1) * params.n + params.m * sp.n1 + sp.n2
    factor = 2 if iterated else 1
    return CardinalityCount(exact=factor * exact, bound=factor * bound)


def dispatch_count(params: ApproxParams) -> int:
    """Exact number of queries approx_dispatch spends on any input."""
    sp = params.sp
    if not sp.is_admissible:
        return 0
    if params.n >= sp.cells:
        return sp.cells
    return cardinality_count(params, iterated=uses_iteration(sp)).exact


def effective_budget(sp: SpacePair, n: int, m: int, iterated: bool) -> int:
    """Largest parameter n' < N1*N2 whose exact cardinality fits in n queries (0 if none)."""
    def cost(candidate: int) -> int:
        return cardinality_count(ApproxParams(sp=sp, n=candidate, m=m), iterated).exact

    if n < 1 or sp.cells < 2 or cost(1) > n:
        return 0
    low, high = 1, sp.cells - 1
    while low < high:
        middle = (low + high + 1) // 2
        if cost(middle) <= n:
            low = middle
        else:
            high = middle - 1
    return low


# =============================================================================
# Name-based dispatch
# =============================================================================

Runner = Callable[[InfoOracle, ApproxParams, RandomStream], np.ndarray]

ALGORITHMS: Dict[str, Runner] = {
    "dispatch": approx_dispatch,
    "a2": approx_a2,
    "a3": approx_a3,
    "zero": lambda oracle, params, stream: zero_algorithm(params.sp),
    "fixed_rows": lambda oracle, params, stream: nonadaptive_fixed_rows(oracle, params.sp, params.n),
    "random_cells": lambda oracle, params, stream: nonadaptive_random_cells(oracle, params.sp, params.n, stream),
}


def run_algorithm(name: str, oracle: InfoOracle, params: ApproxParams, stream: RandomStream) -> np.ndarray:
    try:
        runner = ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm '{name}' (choose from {', '.join(ALGORITHMS)})") from None
    return runner(oracle, params, stream)


def expected_count(name: str, params: ApproxParams) -> int:
    """Exact query count of algorithm `name` at params, independent of input and seed."""
    sp = params.sp
    if name == "dispatch":
        return dispatch_count(params)
    if name == "a2":
        return cardinality_count(params).exact
    if name == "a3":
        return cardinality_count(params, iterated=True).exact
    if name == "zero":
        return 0
    if name == "fixed_rows":
        return min(params.n // sp.n2, sp.n1) * sp.n2
    if name == "random_cells":
        return min(params.n, sp.cells)
    raise ValueError(f"unknown algorithm '{name}'")
