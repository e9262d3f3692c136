"""Exact Gaussian process regression arithmetic.

Posterior mean/variance and log marginal likelihood are all computed through
a single jitter-guarded Cholesky factorization of K + lambda*I, which is
cached and reused across the three quantities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .exceptions import NumericalError

# Geometric jitter escalation relative to the mean diagonal, tried in order
# after the unjittered attempt.
_JITTER_LEVELS = tuple(1e-10 * 10.0 ** k for k in range(7))  # 1e-10 .. 1e-4


@dataclass(frozen=True)
class TimeSeries:
    """Sample times (seconds, strictly increasing) and measured values."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.ndim != 1 or values.ndim != 1 or times.size != values.size:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if times.size < 1:
            raise ValueError("series must contain at least one sample")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
            raise ValueError("times and values must be finite")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.times.size


@dataclass(frozen=True)
class NoiseModel:
    """White observation noise with variance `lam`."""

    lam: float

    def __post_init__(self):
        if not (self.lam > 0):
            raise ValueError(f"noise variance must be > 0, got {self.lam}")


@dataclass(frozen=True)
class RegressionResult:
    posterior_mean: np.ndarray
    posterior_variance: np.ndarray


def robust_factorize(matrix):
    """Lower Cholesky factor of `matrix` (+ jitter*I if needed).

    Returns (L, jitter) where jitter is the diagonal inflation actually
    applied (0.0 when the plain factorization succeeds). Jitter escalates
    geometrically from 1e-10 to 1e-4 times the mean diagonal before failing.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    scale = np.trace(a) / a.shape[0]
    if not scale > 0:
        scale = 1.0
    attempted = []
    for level in (0.0,) + _JITTER_LEVELS:
        jitter = level * scale if level else 0.0
        attempted.append(jitter)
        try:
            shifted = a if jitter == 0.0 else a + jitter * np.eye(a.shape[0])
            return la.cholesky(shifted, lower=True), jitter
        except la.LinAlgError:
            continue
    raise NumericalError(
        f"Cholesky factorization failed after jitter escalation up to {attempted[-1]:g}",
        attempted_jitters=attempted,
    )


class GaussianSolve:
    """Factorized solve for one (gram, noise) pair, reused across queries."""

    def __init__(self, gram, noise: NoiseModel):
        gram = np.asarray(gram, dtype=float)
        self.gram = gram
        self.noise = noise
        self.chol, self.jitter = robust_factorize(
            gram + noise.lam * np.eye(gram.shape[0])
        )

    def _solve(self, rhs):
        return la.cho_solve((self.chol, True), rhs)

    def log_marginal_likelihood(self, values) -> float:
        values = np.asarray(values, dtype=float)
        n = values.size
        log_det = 2.0 * np.sum(np.log(np.diag(self.chol)))
        quad = float(values @ self._solve(values))
        return -0.5 * n * np.log(2.0 * np.pi) - 0.5 * log_det - 0.5 * quad

    def posterior_mean(self, values) -> np.ndarray:
        return self.gram @ self._solve(np.asarray(values, dtype=float))

    def posterior_variance(self) -> np.ndarray:
        half = la.solve_triangular(self.chol, self.gram, lower=True)
        var = np.diag(self.gram) - np.sum(half * half, axis=0)
        return np.maximum(var, 0.0)


def log_marginal_likelihood(gram, noise: NoiseModel, values) -> float:
    """Log evidence of `values` under N(0, gram + lam*I)."""
    return GaussianSolve(gram, noise).log_marginal_likelihood(values)


def posterior_mean(gram, noise: NoiseModel, values) -> np.ndarray:
    """Posterior mean K (K + lam*I)^-1 s at the sample points."""
    return GaussianSolve(gram, noise).posterior_mean(values)


def posterior_variance(gram, noise: NoiseModel) -> np.ndarray:
    """Pointwise posterior variance diag(K - K (K + lam*I)^-1 K)."""
    return GaussianSolve(gram, noise).posterior_variance()
