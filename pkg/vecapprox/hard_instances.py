"""Hard input distributions for the approximation problem and exact lower-bound values.

Six finitely supported families live in the unit ball of L_p^{N1}(L_u^{N2}),
each tuned to an information budget n with n < N1*N2/21:

    1  uniform over +-psi_ij, one peak per (row i, column block D_j),
       L = floor(4n/N1) + 1 blocks
    2  independent random signs on every cell of the first M rows,
       M = floor(4n/N2) + 1
    3  family 1 re-tuned at n1 = ceil(N1*N2/21) - 1
    4  family 2 re-tuned at n1
    5  every row independently carries +-psi_j on one uniformly chosen block,
       L = min(4*ceil(4n/N1) + 1, N2)
    6  one uniformly chosen row carries sum_j eps_j * N1^{1/p} * chi_{D_j},
       blocks as in family 5

Family 0 is the sparse exact-recovery fixture used by the checks: ceil(n/N2)
fully supported constant rows.

`lower_bound_value` evaluates the two classical average-case lower bounds for
disjointly supported families exactly, by enumeration on tiny instances.
"""
import itertools
import math
from fractions import Fraction
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import ExponentLike, SpacePair
from .information import RandomStream
from .mixed_norm import mixed_norm, source_norm, target_norm

C0 = Fraction(1, 21)

# Exact enumeration handles at most 2^20 sign patterns.
MAX_ENUMERATION_TERMS = 20
MAX_ENUMERATION_PATTERNS = 2 ** MAX_ENUMERATION_TERMS


class EnumerationTooLargeError(ValueError):
    """The exact Rademacher average would need more than 2^20 sign patterns."""


def max_tuned_budget(sp: SpacePair) -> int:
    """n1 = ceil(c0 * N1 * N2) - 1, the largest admissible budget."""
    return math.ceil(C0 * sp.cells) - 1


# =============================================================================
# Block partition
# =============================================================================

class BlockPartition(NamedTuple):
    n2: int
    count: int
    size: int

    def block(self, j: int) -> np.ndarray:
        """Columns of D_j (0-based): j*size, ..., (j+1)*size - 1."""
        if not 0 <= j < self.count:
            raise IndexError(f"block index {j} outside [0, {self.count})")
        return np.arange(j * self.size, (j + 1) * self.size)

    @property
    def blocks(self) -> List[np.ndarray]:
        return [self.block(j) for j in range(self.count)]

    @property
    def covered(self) -> int:
        return self.count * self.size


def make_blocks(n2: int, count: int) -> BlockPartition:
    if not 1 <= count <= n2:
        raise ValueError(f"need 1 <= L <= N2 for a block partition, got L={count}, N2={n2}")
    return BlockPartition(n2=n2, count=count, size=n2 // count)


# =============================================================================
# Instance families
# =============================================================================

class HardInstanceSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    which: int = Field(ge=1, le=6)
    sp: SpacePair
    n: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_budget(self) -> "HardInstanceSpec":
        if self.n >= C0 * self.sp.cells:
            raise ValueError(
                f"budget n={self.n} violates n < N1*N2/21 = {float(C0 * self.sp.cells):.3f}"
            )
        if self.which in (1, 3, 5, 6) and self.block_count > self.sp.n2:
            raise ValueError(f"family {self.which} needs L={self.block_count} blocks but N2={self.sp.n2}")
        if self.which in (2, 4) and self.row_count > self.sp.n1:
            raise ValueError(f"family {self.which} needs M={self.row_count} rows but N1={self.sp.n1}")
        return self

    @property
    def c0(self) -> Fraction:
        return C0

    @property
    def base_family(self) -> int:
        return {3: 1, 4: 2}.get(self.which, self.which)

    @property
    def tuned_n(self) -> int:
        return max_tuned_budget(self.sp) if self.which in (3, 4) else self.n

    @property
    def block_count(self) -> int:
        """L for the block based families (1, 3, 5, 6)."""
        if self.base_family == 1:
            return 4 * self.tuned_n // self.sp.n1 + 1
        # n >= N1 always leaves room for all blocks; below that L is capped at N2
        return min(4 * -(-4 * self.n // self.sp.n1) + 1, self.sp.n2)

    @property
    def row_count(self) -> int:
        """M for the sign families (2, 4)."""
        return 4 * self.tuned_n // self.sp.n2 + 1

    @property
    def partition(self) -> BlockPartition:
        return make_blocks(self.sp.n2, self.block_count)


def block_amplitude(sp: SpacePair, block_size: int) -> float:
    """Peak height N1^{1/p} N2^{1/u} |D|^{-1/u} of a single-block spike."""
    return sp.n1 ** sp.p.reciprocal * (sp.n2 / block_size) ** sp.u.reciprocal


def sign_amplitude(sp: SpacePair, rows: int) -> float:
    """Cell height N1^{1/p} M^{-1/p} of the random-sign families."""
    return (sp.n1 / rows) ** sp.p.reciprocal


def psi(spec: HardInstanceSpec, i: int, j: int) -> np.ndarray:
    """The support function psi_ij of family 1/3 (row i, block j) or 2/4 (cell (i, j))."""
    sp = spec.sp
    f = np.zeros((sp.n1, sp.n2))
    if spec.base_family == 1:
        partition = spec.partition
        f[i, partition.block(j)] = block_amplitude(sp, partition.size)
    elif spec.base_family == 2:
        if not (0 <= i < spec.row_count and 0 <= j < sp.n2):
            raise IndexError(f"cell ({i}, {j}) outside the first {spec.row_count} rows")
        f[i, j] = sign_amplitude(sp, spec.row_count)
    else:
        raise ValueError(f"family {spec.which} is not a disjoint-spike family")
    return f


def _sample_spikes(spec: HardInstanceSpec, stream: RandomStream) -> np.ndarray:
    i = int(stream.uniform_index(spec.sp.n1))
    j = int(stream.uniform_index(spec.block_count))
    return float(stream.signs()) * psi(spec, i, j)


def _sample_signs(spec: HardInstanceSpec, stream: RandomStream) -> np.ndarray:
    sp = spec.sp
    rows = spec.row_count
    f = np.zeros((sp.n1, sp.n2))
    f[:rows] = stream.signs((rows, sp.n2)) * sign_amplitude(sp, rows)
    return f


def _sample_row_blocks(spec: HardInstanceSpec, stream: RandomStream) -> np.ndarray:
    sp = spec.sp
    partition = spec.partition
    chosen = stream.uniform_index(partition.count, size=sp.n1)
    heights = stream.signs(sp.n1) * sp.n2 ** sp.u.reciprocal * partition.size ** -sp.u.reciprocal
    columns = chosen[:, None] * partition.size + np.arange(partition.size)[None, :]
    f = np.zeros((sp.n1, sp.n2))
    f[np.arange(sp.n1)[:, None], columns] = heights[:, None]
    return f


def _sample_hidden_row(spec: HardInstanceSpec, stream: RandomStream) -> np.ndarray:
    sp = spec.sp
    partition = spec.partition
    k = int(stream.uniform_index(sp.n1))
    eps = stream.signs(partition.count)
    f = np.zeros((sp.n1, sp.n2))
    f[k, :partition.covered] = np.repeat(eps, partition.size) * sp.n1 ** sp.p.reciprocal
    return f


_SAMPLERS = {
    1: _sample_spikes,
    2: _sample_signs,
    5: _sample_row_blocks,
    6: _sample_hidden_row,
}


def sample_hard(spec: HardInstanceSpec, stream: RandomStream) -> np.ndarray:
    """One draw of the family; always inside the unit ball of L_p(L_u)."""
    return _SAMPLERS[spec.base_family](spec, stream)


def sparse_fixture(sp: SpacePair, n: int, stream: RandomStream) -> np.ndarray:
    """ceil(n/N2) constant rows without zero entries, normalized to source norm 1."""
    rows = min(-(-n // sp.n2), sp.n1)
    chosen = stream.sample_without_replacement(sp.n1, rows)
    heights = stream.signs(rows) * (0.5 + stream.uniform(rows))
    f = np.zeros((sp.n1, sp.n2))
    f[chosen] = heights[:, None]
    return f / source_norm(f, sp)


def tuned_budget(sp: SpacePair, n: int) -> int:
    """Budget a family is tuned at when the requested n is too large for it."""
    return min(n, max_tuned_budget(sp))


def sample_measure(measure: int, sp: SpacePair, n: int, stream: RandomStream) -> np.ndarray:
    """Draw from family `measure` (0 = sparse fixture), clamping n to the admissible range."""
    if measure == 0:
        return sparse_fixture(sp, n, stream)
    return sample_hard(HardInstanceSpec(which=measure, sp=sp, n=tuned_budget(sp, n)), stream)


def support_rows(f: np.ndarray) -> np.ndarray:
    return np.flatnonzero(np.any(f != 0.0, axis=1))


# =============================================================================
# Rademacher averages
# =============================================================================

def _stack(vectors, subset: Sequence[int]) -> np.ndarray:
    stacked = np.asarray([np.asarray(vectors[i], dtype=np.float64) for i in subset])
    if stacked.ndim != 3:
        raise ValueError("vectors must be matrices of a common shape")
    return stacked


def rademacher_expect_exact(vectors, subset: Sequence[int], q: ExponentLike, v: ExponentLike) -> float:
    """E || sum_{i in I} eps_i f_i ||_{L_q(L_v)}, averaged over all 2^|I| sign patterns."""
    subset = list(subset)
    size = len(subset)
    if size > MAX_ENUMERATION_TERMS:
        raise EnumerationTooLargeError(
            f"|I|={size} needs 2^{size} sign patterns; the exact oracle stops at 2^{MAX_ENUMERATION_TERMS}"
        )
    if size == 0:
        return 0.0
    stacked = _stack(vectors, subset)
    cells = stacked.shape[1] * stacked.shape[2]
    patterns = 2 ** size
    chunk = max(1, min(patterns, 2 ** 22 // cells))
    bits = np.arange(size)
    total = 0.0
    for start in range(0, patterns, chunk):
        codes = np.arange(start, min(start + chunk, patterns))
        signs = 2.0 * ((codes[:, None] >> bits[None, :]) & 1) - 1.0
        sums = np.tensordot(signs, stacked, axes=(1, 0))
        total += float(np.sum(mixed_norm(sums, q, v)))
    return total / patterns


def rademacher_expect_mc(vectors, subset: Sequence[int], q: ExponentLike, v: ExponentLike,
                         stream: RandomStream, draws: int = 100_000) -> Tuple[float, float]:
    """Monte Carlo estimate of the Rademacher average; returns (mean, standard error)."""
    subset = list(subset)
    if not subset:
        return 0.0, 0.0
    stacked = _stack(vectors, subset)
    cells = stacked.shape[1] * stacked.shape[2]
    chunk = max(1, min(draws, 2 ** 22 // cells))
    norms = []
    for start in range(0, draws, chunk):
        signs = stream.signs((min(chunk, draws - start), len(subset)))
        norms.append(np.atleast_1d(mixed_norm(np.tensordot(signs, stacked, axes=(1, 0)), q, v)))
    values = np.concatenate(norms)
    stderr = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
    return float(values.mean()), stderr


# =============================================================================
# Average-case lower bounds
# =============================================================================

class LowerBound(NamedTuple):
    value: float
    applicable: bool
    case: str
    n_bar: int
    subset_size: int
    exhaustive: bool


def _inapplicable(case: str, n_bar: int) -> LowerBound:
    return LowerBound(value=math.nan, applicable=False, case=case, n_bar=n_bar, subset_size=0, exhaustive=False)


def lower_bound_value(spec: HardInstanceSpec, n: int) -> LowerBound:
    """Average-case lower bound for algorithms with n queries on family `spec`.

    Family 1/3 (uniform over +-f_i): 1/2 * min_i ||f_i||.
    Family 2/4 (random signs): 1/2 * min over |I| >= n_bar - 2n of
    E||sum_{i in I} eps_i f_i||. The average grows under inclusion, so only
    subsets of the smallest admissible size are evaluated.
    Both need 4n < n_bar.
    """
    sp = spec.sp
    if spec.base_family == 1:
        n_bar = sp.n1 * spec.block_count
        if 4 * n >= n_bar:
            return _inapplicable("uniform", n_bar)
        # every psi_ij has the same norm
        value = 0.5 * target_norm(psi(spec, 0, 0), sp)
        return LowerBound(value=value, applicable=True, case="uniform", n_bar=n_bar, subset_size=1, exhaustive=True)

    if spec.base_family == 2:
        rows = spec.row_count
        n_bar = rows * sp.n2
        if 4 * n >= n_bar:
            return _inapplicable("rademacher", n_bar)
        size = n_bar - 2 * n
        if size > MAX_ENUMERATION_TERMS:
            raise EnumerationTooLargeError(
                f"smallest admissible subset has {size} terms; the exact oracle stops at {MAX_ENUMERATION_TERMS}"
            )
        cells = [psi(spec, i, j) for i in range(rows) for j in range(sp.n2)]
        exhaustive = math.comb(n_bar, size) * 2 ** size <= MAX_ENUMERATION_PATTERNS
        candidates = itertools.combinations(range(n_bar), size) if exhaustive else [range(size)]
        value = min(rademacher_expect_exact(cells, subset, sp.q, sp.v) for subset in candidates)
        return LowerBound(value=0.5 * value, applicable=True, case="rademacher", n_bar=n_bar,
                          subset_size=size, exhaustive=exhaustive)

    raise ValueError(f"family {spec.which} has no closed-form lower-bound oracle")
