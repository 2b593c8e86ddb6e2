"""Standard information access with exact query counting.

Algorithms never see the input matrix directly. They read it through an
InfoOracle, one point evaluation f(i, j) per counted query, so after a run
`oracle.count` is the cardinality of the algorithm on that input. Batch reads
(`query_batch`) count one query per broadcast cell, which keeps the
accounting exact while letting numpy do the work.

Randomness comes from RandomStream objects derived from
(master_seed, label, index). Derivation is counter based, so the stream a
trial receives does not depend on which thread runs it or in which order.
"""
import hashlib
from typing import Optional, Tuple

import numpy as np

from .mixed_norm import as_matrix


class BudgetExceededError(RuntimeError):
    """Raised when a query would push an oracle past its budget."""

    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(f"query number {count} exceeds the information budget of {budget}")


class InfoOracle:
    def __init__(self, target, budget: Optional[int] = None):
        if budget is not None and budget < 0:
            raise ValueError(f"budget must be nonnegative, got {budget}")
        self._target = as_matrix(target)
        self.budget = budget
        self.count = 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self._target.shape

    def _charge(self, queries: int) -> None:
        if self.budget is not None and self.count + queries > self.budget:
            raise BudgetExceededError(self.count + queries, self.budget)
        self.count += queries

    def _check_range(self, rows: np.ndarray, cols: np.ndarray) -> None:
        n1, n2 = self._target.shape
        if rows.size and (rows.min() < 0 or rows.max() >= n1):
            raise IndexError(f"row index out of range [0, {n1})")
        if cols.size and (cols.min() < 0 or cols.max() >= n2):
            raise IndexError(f"column index out of range [0, {n2})")

    def query(self, i: int, j: int) -> float:
        """delta_ij(f) = f(i, j); costs exactly one query."""
        n1, n2 = self._target.shape
        if not (0 <= i < n1 and 0 <= j < n2):
            raise IndexError(f"cell ({i}, {j}) outside the {n1}x{n2} grid")
        self._charge(1)
        return float(self._target[i, j])

    def query_batch(self, rows, cols) -> np.ndarray:
        """Read f at the broadcast of rows and cols; costs one query per cell.

        The budget is checked before anything is read, so a rejected batch
        leaves the count untouched.
        """
        rows, cols = np.broadcast_arrays(np.asarray(rows, dtype=np.intp), np.asarray(cols, dtype=np.intp))
        self._check_range(rows, cols)
        self._charge(int(rows.size))
        return self._target[rows, cols]


class ResidualOracle:
    """Answers queries for g = f - known, spending one query on f per read."""

    def __init__(self, oracle: InfoOracle, known: np.ndarray):
        if known.shape != oracle.shape:
            raise ValueError(f"known matrix shape {known.shape} does not match oracle shape {oracle.shape}")
        self._oracle = oracle
        self._known = known

    @property
    def shape(self) -> Tuple[int, int]:
        return self._oracle.shape

    @property
    def count(self) -> int:
        return self._oracle.count

    def query(self, i: int, j: int) -> float:
        return self._oracle.query(i, j) - float(self._known[i, j])

    def query_batch(self, rows, cols) -> np.ndarray:
        rows, cols = np.broadcast_arrays(np.asarray(rows, dtype=np.intp), np.asarray(cols, dtype=np.intp))
        return self._oracle.query_batch(rows, cols) - self._known[rows, cols]


# =============================================================================
# Random streams
# =============================================================================

def _label_key(label: str) -> int:
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class RandomStream:
    """Reproducible source of uniform draws tied to (master_seed, label, index)."""

    def __init__(self, master_seed: int, label: str, index: int):
        if not 0 <= master_seed < 2**64:
            raise ValueError(f"master seed must be a 64-bit unsigned integer, got {master_seed}")
        if index < 0:
            raise ValueError(f"stream index must be nonnegative, got {index}")
        self.master_seed = master_seed
        self.label = label
        self.index = index
        seed_sequence = np.random.SeedSequence(entropy=[master_seed, _label_key(label), index])
        self.rng = np.random.default_rng(seed_sequence)

    def __repr__(self) -> str:
        return f"RandomStream(master_seed={self.master_seed}, label={self.label!r}, index={self.index})"

    def child(self, label: str, index: int = 0) -> "RandomStream":
        """Independent stream derived from this stream's identity, not its state."""
        return RandomStream(self.master_seed, f"{self.label}[{self.index}]/{label}", index)

    def uniform_index(self, n: int, size=None):
        """Uniform draws from {0, ..., n - 1}."""
        if n < 1:
            raise ValueError(f"cannot draw from an empty range (n={n})")
        return self.rng.integers(0, n, size=size)

    def uniform(self, size=None):
        """Uniform reals in [0, 1)."""
        return self.rng.random(size)

    def signs(self, size=None):
        """Independent symmetric +-1 values as floats."""
        return 2.0 * self.rng.integers(0, 2, size=size) - 1.0

    def sample_without_replacement(self, population: int, k: int) -> np.ndarray:
        return self.rng.choice(population, size=k, replace=False)


def substream(master_seed: int, label: str, index: int) -> RandomStream:
    return RandomStream(master_seed, label, index)
