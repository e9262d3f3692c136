"""The locally coupled GP pipeline.

Segmentation from truncated windows, per-segment emission likelihoods from
windowed Gram matrices, global nonstationary covariance assembly from the
smoothed point estimates, and the end-to-end fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .exceptions import ConfigurationError
from .gp import GaussianSolve, NoiseModel, RegressionResult, TimeSeries
from .kernels import (
    KernelSpec,
    Oscillatory,
    TwoStateMix,
    WindowSet,
    build_gram,
    build_windows,
)
from .markov import (
    EmissionMatrix,
    PosteriorMarginals,
    StateGrid,
    TransitionModel,
    forward_backward,
    point_estimate_mean,
    point_estimate_mode,
)


@dataclass(frozen=True)
class FrequencyFamily:
    """Maps a hidden frequency (Hz) to an oscillatory kernel of width d."""

    d: float

    def kernel_for(self, state: float) -> KernelSpec:
        return Oscillatory(d=self.d, freq_hz=float(state))


@dataclass(frozen=True)
class SwitchFamily:
    """Maps the binary state alpha to a broadband/oscillatory switch kernel."""

    broadband: KernelSpec
    oscillatory: KernelSpec

    def kernel_for(self, state: float) -> KernelSpec:
        return TwoStateMix(
            alpha=int(round(state)), broadband=self.broadband, oscillatory=self.oscillatory
        )


LocalModelFamily = Union[FrequencyFamily, SwitchFamily]


@dataclass(frozen=True)
class SegmentationPlan:
    """Per support point, the sample indices with nonzero truncated weight."""

    segments: List[np.ndarray]


@dataclass(frozen=True)
class GlobalCovariance:
    matrix: np.ndarray
    point_estimates: np.ndarray


@dataclass(frozen=True)
class CoupledModelConfig:
    family: LocalModelFamily
    transition: TransitionModel
    window_spacing: float
    window_width: float
    noise: NoiseModel
    estimator: str = "mean"
    truncation_radius: float = 3.0

    def __post_init__(self):
        if self.estimator not in ("mean", "mode"):
            raise ConfigurationError(
                f"estimator must be 'mean' or 'mode', got {self.estimator!r}"
            )


@dataclass(frozen=True)
class FitResult:
    windows: WindowSet
    marginals: PosteriorMarginals
    point_estimates: np.ndarray
    global_cov: GlobalCovariance
    regression: RegressionResult


def plan_segments(windows: WindowSet) -> SegmentationPlan:
    """Segment i holds the indices with truncated weight > 0 for support i."""
    segments = [np.flatnonzero(row > 0.0) for row in windows.weights]
    for i, idx in enumerate(segments):
        if idx.size == 0:
            raise ConfigurationError(
                f"segment {i} (support point {windows.support_points[i]}) is empty; "
                "window too narrow for the sample spacing"
            )
    return SegmentationPlan(segments=segments)


def segment_emissions(
    series: TimeSeries,
    windows: WindowSet,
    plan: SegmentationPlan,
    family: LocalModelFamily,
    grid: StateGrid,
    noise: NoiseModel,
) -> EmissionMatrix:
    """Per-segment log marginal likelihood under each grid state.

    The segment covariance is the entrywise product of the window's outer
    product with the state's stationary Gram matrix, restricted to the
    segment's indices, plus the noise diagonal.
    """
    num_segments = len(plan.segments)
    log_lik = np.empty((num_segments, len(grid)))
    gram_cache = {}
    for a, state in enumerate(grid.values):
        spec = family.kernel_for(state)
        full_gram = gram_cache.get(spec)
        if full_gram is None:
            full_gram = build_gram(spec, series.times)
            gram_cache[spec] = full_gram
        for i, idx in enumerate(plan.segments):
            w = windows.weights[i, idx]
            local = np.outer(w, w) * full_gram[np.ix_(idx, idx)]
            try:
                log_lik[i, a] = GaussianSolve(local, noise).log_marginal_likelihood(
                    series.values[idx]
                )
            except Exception as exc:
                exc.args = (f"segment {i}, state index {a}: {exc}",)
                raise
    return EmissionMatrix(log_lik=log_lik)


def assemble_global_covariance(
    windows: WindowSet,
    family: LocalModelFamily,
    point_estimates,
    times,
) -> GlobalCovariance:
    """Assemble the nonstationary Gram matrix from per-segment estimates.

    matrix[j][k] = sum_i w(t_j;t_i) w(t_k;t_i) k_i(t_j, t_k) with k_i drawn
    from the family at segment i's point estimate.
    """
    point_estimates = np.asarray(point_estimates, dtype=float)
    if point_estimates.size != windows.support_points.size:
        raise ConfigurationError("need exactly one point estimate per support point")
    times = np.asarray(times, dtype=float)

    groups = {}
    for i, state in enumerate(point_estimates):
        groups.setdefault(family.kernel_for(state), []).append(i)

    matrix = np.zeros((times.size, times.size))
    for spec, rows in groups.items():
        w = windows.weights[rows]
        matrix += (w.T @ w) * build_gram(spec, times)
    return GlobalCovariance(matrix=matrix, point_estimates=point_estimates)


def fit(series: TimeSeries, config: CoupledModelConfig) -> FitResult:
    """Run the full pipeline and return all intermediate products."""

    def stage(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Exception as exc:
            exc.args = (f"stage '{name}': {exc}",)
            raise

    windows = stage(
        "windows",
        build_windows,
        series.times,
        config.window_spacing,
        config.window_width,
        config.truncation_radius,
    )
    plan = stage("plan", plan_segments, windows)
    emissions = stage(
        "emissions",
        segment_emissions,
        series,
        windows,
        plan,
        config.family,
        config.transition.grid,
        config.noise,
    )
    marginals = stage("smoothing", forward_backward, config.transition, emissions)
    if config.estimator == "mean":
        estimates = point_estimate_mean(marginals, config.transition.grid)
    else:
        estimates = point_estimate_mode(marginals, config.transition.grid)
    global_cov = stage(
        "assembly",
        assemble_global_covariance,
        windows,
        config.family,
        estimates,
        series.times,
    )
    solver = stage("regression", GaussianSolve, global_cov.matrix, config.noise)
    regression = RegressionResult(
        posterior_mean=solver.posterior_mean(series.values),
        posterior_variance=solver.posterior_variance(),
    )
    return FitResult(
        windows=windows,
        marginals=marginals,
        point_estimates=np.asarray(estimates, dtype=float),
        global_cov=global_cov,
        regression=regression,
    )
