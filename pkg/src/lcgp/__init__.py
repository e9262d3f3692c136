"""Locally coupled Gaussian process regression for nonstationary time series.

Per-segment stationary GP marginal likelihoods feed a finite-state hidden
Markov chain over kernel hyper-parameters; the smoothed point estimates
assemble a global nonstationary covariance used for whole-series denoising
and state identification.
"""

from .coupled import (
    CoupledModelConfig,
    FitResult,
    FrequencyFamily,
    GlobalCovariance,
    SegmentationPlan,
    SwitchFamily,
    assemble_global_covariance,
    fit,
    plan_segments,
    segment_emissions,
)
from .exceptions import ConfigurationError, MetricError, NumericalError
from .gp import (
    GaussianSolve,
    NoiseModel,
    RegressionResult,
    TimeSeries,
    log_marginal_likelihood,
    posterior_mean,
    posterior_variance,
    robust_factorize,
)
from .kernels import (
    Exponential,
    Oscillatory,
    SquaredExponential,
    TwoStateMix,
    WindowSet,
    build_gram,
    build_windows,
    eval_kernel,
)
from .markov import (
    EmissionMatrix,
    PosteriorMarginals,
    StateGrid,
    TransitionModel,
    build_random_walk_transitions,
    build_two_state_transitions,
    forward_backward,
    point_estimate_mean,
    point_estimate_mode,
)
from .signals import (
    ChirpSpec,
    TwoStateSpec,
    gen_chirp,
    gen_two_state,
    pearson_correlation,
    stationary_baseline_fit,
    stationary_fit,
)

__version__ = "0.1.0"
