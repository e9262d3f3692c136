import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcgp import (
    ConfigurationError,
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


def enumerate_paths(model, log_lik):
    """Brute-force oracle: sum the joint over every state path."""
    num_segments, num_states = log_lik.shape
    log_init = np.log(model.initial)
    log_trans = np.log(model.transitions)
    joint = {}
    for path in itertools.product(range(num_states), repeat=num_segments):
        lp = log_init[path[0]] + log_lik[0, path[0]]
        for t in range(1, num_segments):
            lp += log_trans[path[t - 1], path[t]] + log_lik[t, path[t]]
        joint[path] = lp
    all_lp = np.array(list(joint.values()))
    shift = all_lp.max()
    log_evidence = shift + np.log(np.exp(all_lp - shift).sum())
    gamma = np.zeros((num_segments, num_states))
    for path, lp in joint.items():
        p = np.exp(lp - log_evidence)
        for t, state in enumerate(path):
            gamma[t, state] += p
    return gamma, log_evidence


def random_model(rng, num_states):
    init = rng.uniform(0.1, 1.0, num_states)
    init /= init.sum()
    trans = rng.uniform(0.1, 1.0, (num_states, num_states))
    trans /= trans.sum(axis=1, keepdims=True)
    grid = StateGrid(np.arange(num_states, dtype=float))
    return TransitionModel(grid=grid, initial=init, transitions=trans)


def test_random_walk_rows_sum_to_one_paper_grid():
    grid = StateGrid(0.1 + 0.4 * np.arange(30))
    model = build_random_walk_transitions(grid, step_std=0.2, autoregressive_coeff=1.0)
    assert np.max(np.abs(model.transitions.sum(axis=1) - 1.0)) <= 1e-12
    assert model.initial == pytest.approx(np.full(30, 1 / 30))


def test_random_walk_tiny_step_freezes_chain():
    grid = StateGrid(np.array([0.0, 1.0, 2.0]))
    model = build_random_walk_transitions(grid, step_std=1e-8)
    assert model.transitions == pytest.approx(np.eye(3), abs=1e-12)


def test_random_walk_matches_gaussian_density():
    grid = StateGrid(np.array([0.0, 1.0, 2.0]))
    model = build_random_walk_transitions(grid, step_std=1.0, autoregressive_coeff=1.0)
    # oracle: scalar normal density at each destination, renormalized
    raw = np.exp(-np.array([0.0, 1.0, 4.0]) / 2.0)
    assert model.transitions[0] == pytest.approx(raw / raw.sum(), abs=1e-12)


def test_two_state_transitions():
    model = build_two_state_transitions(0.98)
    assert model.transitions == pytest.approx(np.array([[0.98, 0.02], [0.02, 0.98]]))
    assert model.grid.values == pytest.approx([0.0, 1.0])
    with pytest.raises(ConfigurationError):
        build_two_state_transitions(1.0)
    with pytest.raises(ConfigurationError):
        build_two_state_transitions(0.0)


def test_memoryless_chain_reduces_to_normalized_emissions():
    model = build_two_state_transitions(0.5)
    log_lik = np.array([[0.0, -1.0], [-3.0, 0.0], [2.0, 2.0]])
    marginals = forward_backward(model, EmissionMatrix(log_lik))
    per_row = np.exp(log_lik)
    per_row /= per_row.sum(axis=1, keepdims=True)
    assert marginals.gamma == pytest.approx(per_row, abs=1e-12)


def test_two_state_contradictory_emissions_vs_enumeration():
    model = build_two_state_transitions(0.98)
    log_lik = np.array([[0.0, -50.0], [-50.0, 0.0]])
    marginals = forward_backward(model, EmissionMatrix(log_lik))
    gamma, log_ev = enumerate_paths(model, log_lik)
    assert marginals.gamma == pytest.approx(gamma, abs=1e-12)
    assert marginals.log_evidence == pytest.approx(log_ev, abs=1e-12)


def test_uniform_emissions_give_uniform_posterior():
    model = build_two_state_transitions(0.7)  # symmetric, doubly stochastic
    log_lik = np.full((6, 2), -3.25)
    marginals = forward_backward(model, EmissionMatrix(log_lik))
    assert marginals.gamma == pytest.approx(np.full((6, 2), 0.5), abs=1e-12)


def test_single_segment_is_softmax():
    rng = np.random.default_rng(5)
    model = random_model(rng, 4)
    log_lik = rng.standard_normal((1, 4)) * 100.0
    marginals = forward_backward(model, EmissionMatrix(log_lik))
    logits = np.log(model.initial) + log_lik[0]
    want = np.exp(logits - logits.max())
    want /= want.sum()
    assert marginals.gamma[0] == pytest.approx(want, abs=1e-10)


def test_forward_backward_vs_enumeration_random():
    rng = np.random.default_rng(11)
    for _ in range(25):
        m = int(rng.integers(2, 4))
        model = random_model(rng, m)
        log_lik = rng.standard_normal((5, m)) * 50.0
        marginals = forward_backward(model, EmissionMatrix(log_lik))
        gamma, log_ev = enumerate_paths(model, log_lik)
        assert marginals.gamma == pytest.approx(gamma, rel=1e-10, abs=1e-12)
        assert marginals.log_evidence == pytest.approx(log_ev, rel=1e-10)


@given(seed=st.integers(0, 10_000), shift=st.floats(-500, 500))
@settings(max_examples=40, deadline=None)
def test_emission_row_shift_invariance(seed, shift):
    rng = np.random.default_rng(seed)
    model = random_model(rng, 3)
    log_lik = rng.standard_normal((4, 3))
    base = forward_backward(model, EmissionMatrix(log_lik))
    shifted = log_lik.copy()
    shifted[2] += shift
    moved = forward_backward(model, EmissionMatrix(shifted))
    assert moved.gamma == pytest.approx(base.gamma, abs=1e-10)
    assert np.max(np.abs(moved.gamma.sum(axis=1) - 1.0)) <= 1e-10


def test_identity_transitions_constant_gamma():
    grid = StateGrid(np.array([0.0, 1.0, 2.0]))
    model = TransitionModel(grid=grid, initial=np.full(3, 1 / 3), transitions=np.eye(3))
    rng = np.random.default_rng(9)
    log_lik = rng.standard_normal((5, 3)) * 10.0
    marginals = forward_backward(model, EmissionMatrix(log_lik))
    summed = log_lik.sum(axis=0)
    want = np.exp(summed - summed.max())
    want /= want.sum()
    for row in marginals.gamma:
        assert row == pytest.approx(want, abs=1e-10)


def test_log_evidence_reversal_invariance():
    model = build_two_state_transitions(0.9)  # symmetric + uniform initial
    rng = np.random.default_rng(13)
    log_lik = rng.standard_normal((6, 2)) * 20.0
    fwd = forward_backward(model, EmissionMatrix(log_lik))
    rev = forward_backward(model, EmissionMatrix(log_lik[::-1]))
    assert fwd.log_evidence == pytest.approx(rev.log_evidence, rel=1e-12)


def test_dimension_mismatch_rejected():
    model = build_two_state_transitions(0.9)
    with pytest.raises(ValueError):
        forward_backward(model, EmissionMatrix(np.zeros((3, 5))))


def test_point_estimates():
    grid = StateGrid(np.array([1.0, 2.0, 3.0]))
    marginals = PosteriorMarginals(
        gamma=np.array([[0.25, 0.25, 0.5], [1.0, 0.0, 0.0]]), log_evidence=0.0
    )
    assert point_estimate_mean(marginals, grid) == pytest.approx([2.25, 1.0])
    assert point_estimate_mode(marginals, grid) == pytest.approx([3.0, 1.0])

    binary = StateGrid(np.array([0.0, 1.0]))
    uniform = PosteriorMarginals(gamma=np.array([[0.5, 0.5]]), log_evidence=0.0)
    assert point_estimate_mean(uniform, binary) == pytest.approx([0.5])
    # exact tie breaks to the lower grid index
    assert point_estimate_mode(uniform, binary) == pytest.approx([0.0])
    skew = PosteriorMarginals(gamma=np.array([[0.3, 0.7]]), log_evidence=0.0)
    assert point_estimate_mode(skew, binary) == pytest.approx([1.0])
