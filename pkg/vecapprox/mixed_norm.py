"""Normalized finite sequence spaces L_p^N and mixed spaces L_p^{N1}(L_u^{N2}).

All norms use the normalized counting measure, so the constant-one vector has
norm 1 for every exponent:

    ||x||_{L_u^N} = ((1/N) * sum_j |x_j|^u)^(1/u)      (u < inf)
    ||x||_{L_inf^N} = max_j |x_j|

The mixed norm of an N1 x N2 matrix is the outer L_p^{N1} norm of its row
norms in L_u^{N2}. Functions reduce over the trailing axes, so a stack of
matrices of shape (..., N1, N2) is evaluated in one call.

Exponents are handled through their reciprocals (see config.Exponent), which
keeps p = inf free of sentinel arithmetic.
"""
from typing import Union

import numpy as np

from .config import Exponent, ExponentLike, SpacePair

# Above this exponent, |x|^u is evaluated on max-rescaled values.
RESCALE_EXPONENT = 8.0

Norm = Union[float, np.ndarray]


def as_matrix(values) -> np.ndarray:
    """Return values as a finite float64 matrix, raising ValueError otherwise."""
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix entries must be finite")
    return matrix


def average_norm(values: np.ndarray, exponent: Exponent, axis: int = -1) -> np.ndarray:
    """Normalized L_exponent norm along `axis`, max-rescaled for large exponents."""
    magnitudes = np.abs(values)
    if exponent.is_infinite:
        return magnitudes.max(axis=axis)
    power = exponent.value()
    if power == 1.0:
        return magnitudes.mean(axis=axis)
    if power < RESCALE_EXPONENT:
        return np.mean(magnitudes ** power, axis=axis) ** exponent.reciprocal

    scale = magnitudes.max(axis=axis, keepdims=True)
    safe = np.where(scale > 0.0, scale, 1.0)
    ratio = np.mean((magnitudes / safe) ** power, axis=axis) ** exponent.reciprocal
    return ratio * np.squeeze(scale, axis=axis)


def _scalar(result: np.ndarray) -> Norm:
    return float(result) if np.ndim(result) == 0 else result


def inner_norm(values, u: ExponentLike) -> Norm:
    """Normalized L_u norm over the last axis."""
    array = np.asarray(values, dtype=np.float64)
    if array.shape[-1] == 0:
        raise ValueError("cannot take the norm of an empty row")
    return _scalar(average_norm(array, Exponent.parse(u), axis=-1))


def mixed_norm(f, p: ExponentLike, u: ExponentLike) -> Norm:
    """||f||_{L_p^{N1}(L_u^{N2})} over the last two axes."""
    array = np.asarray(f, dtype=np.float64)
    if array.ndim < 2:
        raise ValueError(f"expected at least a 2-D array, got shape {array.shape}")
    row_norms = average_norm(array, Exponent.parse(u), axis=-1)
    return _scalar(average_norm(row_norms, Exponent.parse(p), axis=-1))


def source_norm(f, sp: SpacePair) -> Norm:
    return mixed_norm(f, sp.p, sp.u)


def target_norm(f, sp: SpacePair) -> Norm:
    return mixed_norm(f, sp.q, sp.v)


def embedding_norm(sp: SpacePair) -> float:
    """Operator norm of the identity L_p(L_u) -> L_q(L_v):
    N1^{(1/p - 1/q)_+} * N2^{(1/u - 1/v)_+}.
    """
    outer = max(sp.p.reciprocal - sp.q.reciprocal, 0.0)
    inner = max(sp.u.reciprocal - sp.v.reciprocal, 0.0)
    return float(sp.n1 ** outer * sp.n2 ** inner)
