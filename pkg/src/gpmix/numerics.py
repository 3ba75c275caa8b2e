"""Log-space numeric helpers shared by the samplers."""

from __future__ import annotations

import operator

import numpy as np
from numba import njit
from scipy.special import gammaln


def log_gamma_ratio(x: float, m: int) -> float:
    """log of Gamma(x + m) / Gamma(x) for x > 0 and integer m >= 0.

    Evaluated as the sum of log(x + j) for j = 0 .. m - 1, which stays
    exact for the tiny shape parameters where lgamma differences lose
    precision to cancellation.
    """
    m = operator.index(m)
    if x <= 0:
        raise ValueError("x must be positive")
    if m < 0:
        raise ValueError("m must be a nonnegative integer")
    if m == 0:
        return 0.0
    return float(np.log(x + np.arange(m, dtype=np.float64)).sum())


def gammaln_table(size: int, offset: float) -> np.ndarray:
    """Table ``t[i] = lgamma(i + offset)`` for i = 0 .. size - 1."""
    return gammaln(np.arange(size, dtype=np.float64) + offset)


@njit(cache=True)
def categorical_from_logs(log_weights: np.ndarray, u: float) -> int:
    """Draw an index from unnormalized log weights using one uniform draw.

    Subtracts the max, exponentiates, and walks the cumulative sum until
    it passes ``u`` times the total (inverse CDF).
    """
    n = log_weights.shape[0]
    top = -np.inf
    for k in range(n):
        if log_weights[k] > top:
            top = log_weights[k]
    if top == -np.inf or np.isnan(top):
        raise ValueError("no finite weight to sample from")
    total = 0.0
    probs = np.empty(n, dtype=np.float64)
    for k in range(n):
        p = np.exp(log_weights[k] - top)
        probs[k] = p
        total += p
    target = u * total
    acc = 0.0
    for k in range(n):
        acc += probs[k]
        if acc > target:
            return k
    return n - 1


def sample_topic(log_weights, rng: np.random.Generator) -> int:
    """Sample a topic index from unnormalized log weights.

    Consumes exactly one uniform draw from ``rng``.
    """
    weights = np.ascontiguousarray(log_weights, dtype=np.float64)
    return int(categorical_from_logs(weights, rng.random()))
