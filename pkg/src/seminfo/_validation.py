"""Input validation helpers used across the package."""

import math

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import DomainError, StructuralError

PROB_ATOL = 1e-9


def xlog2x(p):
    """Elementwise ``p * log2(p)`` with the convention ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=np.float64)
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def entropy_bits(p, axis=None):
    """Shannon entropy in bits of a (possibly batched) probability array."""
    return -np.sum(xlog2x(p), axis=axis)


def check_probability_vector(p, name="probs", atol=PROB_ATOL):
    """Validate a 1-d probability vector and return it as float64."""
    try:
        p = check_array(p, ensure_2d=False, dtype=np.float64, ensure_min_samples=1)
    except ValueError as exc:
        raise StructuralError(f"{name}: {exc}") from exc
    if p.ndim != 1:
        raise StructuralError(f"{name} must be 1-dimensional, got shape {p.shape}")
    if np.any(p < 0) or np.any(p > 1):
        raise DomainError(f"{name} entries must lie in [0, 1]")
    if abs(p.sum() - 1.0) > atol:
        raise DomainError(f"{name} must sum to 1 (got {p.sum():.12g})")
    return p


def check_row_stochastic(table, name="table", atol=PROB_ATOL):
    """Validate a 2-d row-stochastic matrix and return it as float64."""
    try:
        table = check_array(table, dtype=np.float64)
    except ValueError as exc:
        raise StructuralError(f"{name}: {exc}") from exc
    if np.any(table < 0) or np.any(table > 1):
        raise DomainError(f"{name} entries must lie in [0, 1]")
    bad = np.flatnonzero(np.abs(table.sum(axis=1) - 1.0) > atol)
    if bad.size:
        raise DomainError(f"{name} row {int(bad[0])} does not sum to 1")
    return table


def check_unit_interval(value, name):
    value = float(value)
    if not (0.0 <= value <= 1.0) or math.isnan(value):
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def check_nonnegative(value, name):
    value = float(value)
    if not value >= 0.0:
        raise DomainError(f"{name} must be >= 0, got {value!r}")
    return value


def check_positive(value, name):
    value = float(value)
    if not value > 0.0:
        raise DomainError(f"{name} must be > 0, got {value!r}")
    return value


def check_count(value, name, minimum=0):
    if isinstance(value, bool) or int(value) != value:
        raise StructuralError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value
