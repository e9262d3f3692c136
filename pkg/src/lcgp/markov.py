"""Finite-state hidden Markov machinery.

Transition-model construction, exact forward-backward smoothing with
per-step normalization, and point-estimate extraction from the smoothed
marginals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError


@dataclass(frozen=True)
class StateGrid:
    """Ordered values of the discretized hidden state."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ConfigurationError("state grid must be a non-empty 1-d array")
        if np.any(np.diff(values) <= 0):
            raise ConfigurationError("state grid must be strictly increasing")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class TransitionModel:
    grid: StateGrid
    initial: np.ndarray
    transitions: np.ndarray

    def __post_init__(self):
        m = len(self.grid)
        initial = np.asarray(self.initial, dtype=float)
        transitions = np.asarray(self.transitions, dtype=float)
        if initial.shape != (m,) or transitions.shape != (m, m):
            raise ConfigurationError("transition model dimensions do not match grid")
        if np.any(initial < 0) or np.any(transitions < 0):
            raise ConfigurationError("probabilities must be non-negative")
        if abs(initial.sum() - 1.0) > 1e-12:
            raise ConfigurationError("initial distribution must sum to 1")
        if np.max(np.abs(transitions.sum(axis=1) - 1.0)) > 1e-12:
            raise ConfigurationError("transition rows must sum to 1")
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "transitions", transitions)


@dataclass(frozen=True)
class EmissionMatrix:
    """Per-segment log marginal likelihoods, shape (num_segments, num_states)."""

    log_lik: np.ndarray

    def __post_init__(self):
        log_lik = np.asarray(self.log_lik, dtype=float)
        if log_lik.ndim != 2 or log_lik.shape[0] < 1:
            raise ValueError("log_lik must be a (segments x states) matrix")
        if not np.all(np.isfinite(log_lik)):
            raise ValueError("emission log-likelihoods must be finite")
        object.__setattr__(self, "log_lik", log_lik)


@dataclass(frozen=True)
class PosteriorMarginals:
    """Smoothed state posteriors per segment plus total chain log evidence."""

    gamma: np.ndarray
    log_evidence: float


def build_random_walk_transitions(
    grid: StateGrid, step_std: float, autoregressive_coeff: float = 1.0
) -> TransitionModel:
    """Discretized Gaussian autoregressive chain on the state grid.

    Row a is proportional to exp(-(grid[b] - coeff*grid[a])^2 / (2*step_std^2)),
    renormalized to account for the discretization and the finite range.
    Initial distribution is uniform.
    """
    if not (step_std > 0):
        raise ConfigurationError(f"step_std must be > 0, got {step_std}")
    values = grid.values
    diff = values[None, :] - autoregressive_coeff * values[:, None]
    logits = -(diff ** 2) / (2.0 * step_std ** 2)
    logits -= logits.max(axis=1, keepdims=True)
    rows = np.exp(logits)
    transitions = rows / rows.sum(axis=1, keepdims=True)
    initial = np.full(len(grid), 1.0 / len(grid))
    return TransitionModel(grid=grid, initial=initial, transitions=transitions)


def build_two_state_transitions(stay_probability: float = 0.98) -> TransitionModel:
    """Symmetric 2x2 switch on the binary grid {0, 1}."""
    if not (0.0 < stay_probability < 1.0):
        raise ConfigurationError(
            f"stay_probability must be in (0, 1), got {stay_probability}"
        )
    p = stay_probability
    return TransitionModel(
        grid=StateGrid(np.array([0.0, 1.0])),
        initial=np.array([0.5, 0.5]),
        transitions=np.array([[p, 1.0 - p], [1.0 - p, p]]),
    )


def forward_backward(model: TransitionModel, emissions: EmissionMatrix) -> PosteriorMarginals:
    """Exact smoothed marginals of the hidden chain.

    Emission rows are shifted by their maximum before exponentiation and the
    recursions are normalized at every step, so chains whose log-likelihoods
    differ by hundreds of nats do not under- or overflow.
    """
    log_lik = emissions.log_lik
    num_segments, num_states = log_lik.shape
    if num_states != len(model.grid):
        raise ValueError(
            f"emission matrix has {num_states} states, transition model has {len(model.grid)}"
        )

    row_max = log_lik.max(axis=1)
    b = np.exp(log_lik - row_max[:, None])
    trans = model.transitions

    alpha = np.empty_like(b)
    scale = np.empty(num_segments)
    a = model.initial * b[0]
    scale[0] = a.sum()
    alpha[0] = a / scale[0]
    for t in range(1, num_segments):
        a = (alpha[t - 1] @ trans) * b[t]
        scale[t] = a.sum()
        alpha[t] = a / scale[t]

    beta = np.empty_like(b)
    beta[-1] = 1.0
    for t in range(num_segments - 2, -1, -1):
        beta[t] = (trans @ (beta[t + 1] * b[t + 1])) / scale[t + 1]

    gamma = alpha * beta
    gamma /= gamma.sum(axis=1, keepdims=True)
    log_evidence = float(np.log(scale).sum() + row_max.sum())
    return PosteriorMarginals(gamma=gamma, log_evidence=log_evidence)


def point_estimate_mean(marginals: PosteriorMarginals, grid: StateGrid) -> np.ndarray:
    """Posterior-mean state value per segment."""
    return marginals.gamma @ grid.values


def point_estimate_mode(marginals: PosteriorMarginals, grid: StateGrid) -> np.ndarray:
    """Posterior-mode state value per segment; ties break to the lower index."""
    return grid.values[np.argmax(marginals.gamma, axis=1)]
