"""Stationary covariance functions and normalized Gaussian window bases.

All kernels are normalized to unit variance at zero lag; overall signal
amplitude is carried by the noise-to-signal configuration instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import ConfigurationError


@dataclass(frozen=True)
class SquaredExponential:
    """Smooth broadband kernel exp(-(t-t')^2 / (2*delta^2))."""

    delta: float

    def __post_init__(self):
        if not (self.delta > 0):
            raise ConfigurationError(f"delta must be > 0, got {self.delta}")


@dataclass(frozen=True)
class Oscillatory:
    """Damped cosine kernel exp(-(t-t')^2 / (2*d^2)) * cos(2*pi*f*(t-t')).

    `d` controls how tightly the spectrum concentrates around the peak
    frequency `freq_hz`.
    """

    d: float
    freq_hz: float

    def __post_init__(self):
        if not (self.d > 0):
            raise ConfigurationError(f"d must be > 0, got {self.d}")
        if not (self.freq_hz >= 0):
            raise ConfigurationError(f"freq_hz must be >= 0, got {self.freq_hz}")


@dataclass(frozen=True)
class Exponential:
    """Rough (continuous, non-differentiable) kernel exp(-|t-t'| / ell)."""

    ell: float

    def __post_init__(self):
        if not (self.ell > 0):
            raise ConfigurationError(f"ell must be > 0, got {self.ell}")


@dataclass(frozen=True)
class TwoStateMix:
    """Binary switch between a broadband and an oscillatory kernel.

    alpha = 1 selects the broadband component, alpha = 0 the oscillatory one.
    """

    alpha: int
    broadband: "KernelSpec"
    oscillatory: "KernelSpec"

    def __post_init__(self):
        if self.alpha not in (0, 1):
            raise ConfigurationError(f"alpha must be 0 or 1, got {self.alpha}")


KernelSpec = Union[SquaredExponential, Oscillatory, Exponential, TwoStateMix]


def kernel_of_lag(spec: KernelSpec, lag):
    """Evaluate a stationary kernel at lag t' - t (scalar or array)."""
    lag = np.asarray(lag, dtype=float)
    if isinstance(spec, SquaredExponential):
        return np.exp(-(lag ** 2) / (2.0 * spec.delta ** 2))
    if isinstance(spec, Oscillatory):
        return np.exp(-(lag ** 2) / (2.0 * spec.d ** 2)) * np.cos(
            2.0 * np.pi * spec.freq_hz * lag
        )
    if isinstance(spec, Exponential):
        return np.exp(-np.abs(lag) / spec.ell)
    if isinstance(spec, TwoStateMix):
        if spec.alpha == 1:
            return kernel_of_lag(spec.broadband, lag)
        return kernel_of_lag(spec.oscillatory, lag)
    raise ConfigurationError(f"unknown kernel spec {spec!r}")


def eval_kernel(spec: KernelSpec, t, t_prime):
    """Covariance between process values at times t and t' (seconds)."""
    return kernel_of_lag(spec, np.asarray(t_prime, dtype=float) - np.asarray(t, dtype=float))


def build_gram(spec: KernelSpec, times) -> np.ndarray:
    """Symmetric covariance matrix of a kernel at the given sample times."""
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        raise ConfigurationError("times must be non-empty")
    if not np.all(np.isfinite(times)):
        raise ConfigurationError("times must be finite")
    lag = times[None, :] - times[:, None]
    return kernel_of_lag(spec, lag)


@dataclass(frozen=True)
class WindowSet:
    """Normalized Gaussian windows on a regular grid of support points.

    `weights` has shape (num_support, num_samples); weights beyond
    `truncation_radius * width` of a support point are exactly zero, and each
    column of squared weights sums to one so the windows do not modulate the
    prior variance.
    """

    support_points: np.ndarray
    width: float
    truncation_radius: float
    weights: np.ndarray

    def __post_init__(self):
        sq = np.sum(self.weights ** 2, axis=0)
        if not np.allclose(sq, 1.0, rtol=0.0, atol=1e-12):
            raise ConfigurationError("window weights are not column-normalized")
        if np.any(self.weights < 0):
            raise ConfigurationError("window weights must be non-negative")
        spacings = np.diff(self.support_points)
        if self.support_points.size > 1 and (
            np.any(spacings <= 0)
            or not np.allclose(spacings, spacings[0], rtol=1e-9, atol=1e-12)
        ):
            raise ConfigurationError("support points must form a regular increasing grid")


def build_windows(times, spacing: float, width: float, truncation_radius: float = 3.0) -> WindowSet:
    """Construct the normalized window basis over `times`.

    The support grid starts at min(times) with the given spacing and extends
    until the last point is within one spacing of max(times). Unnormalized
    weights are Gaussians of the given width (standard deviation), truncated
    to exactly zero beyond `truncation_radius * width`, then each sample
    point's weight column is rescaled to unit sum of squares.
    """
    times = np.asarray(times, dtype=float)
    if not (spacing > 0 and width > 0 and truncation_radius > 0):
        raise ConfigurationError("spacing, width and truncation_radius must be > 0")
    t_min, t_max = float(times.min()), float(times.max())
    num_support = int(np.floor((t_max - t_min) / spacing + 1e-9)) + 1
    support = t_min + spacing * np.arange(num_support)

    dist = times[None, :] - support[:, None]
    raw = np.exp(-(dist ** 2) / (2.0 * width ** 2))
    # tiny slack keeps samples sitting exactly on the truncation boundary
    raw[np.abs(dist) > truncation_radius * width * (1.0 + 1e-9)] = 0.0

    norms = np.sqrt(np.sum(raw ** 2, axis=0))
    if np.any(norms == 0.0):
        uncovered = times[norms == 0.0][0]
        raise ConfigurationError(
            f"sample point t={uncovered} is not covered by any window; "
            "widen the windows or reduce the spacing"
        )
    return WindowSet(
        support_points=support,
        width=float(width),
        truncation_radius=float(truncation_radius),
        weights=raw / norms[None, :],
    )
