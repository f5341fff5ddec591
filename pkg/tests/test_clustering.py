"""Fuzzy C-Means tests: hand oracles for each update rule, then full fits."""

import numpy as np
import pytest

from skinmap import (
    FcmConfig,
    fcm_fit,
    fcm_fit_from_centers,
    fcm_objective,
    fcm_to_gmm,
    harden,
    update_centers,
    update_memberships,
)
from skinmap.errors import (
    ContractViolationError,
    DegenerateClusterError,
    InsufficientSamplesError,
)


def membership_oracle(samples, centers, m):
    # direct triple loop over the ratio formula, exponent 2/(m-1)
    x = np.asarray(samples, dtype=np.float64)
    mu = np.asarray(centers, dtype=np.float64)
    n, c = x.shape[0], mu.shape[0]
    d = np.zeros((n, c))
    for j in range(n):
        for i in range(c):
            d[j, i] = np.linalg.norm(x[j] - mu[i])
    delta = np.zeros((n, c))
    for j in range(n):
        for i in range(c):
            acc = 0.0
            for k in range(c):
                acc += (d[j, i] / d[j, k]) ** (2.0 / (m - 1.0))
            delta[j, i] = 1.0 / acc
    return delta


def blobs(rng, centers, per=500, sigma=0.1):
    parts = [c + sigma * rng.standard_normal((per, len(c))) for c in centers]
    return np.concatenate(parts)


def match_rows(found, truth):
    # greedy nearest matching is fine for well separated truths
    order = [int(np.argmin(np.linalg.norm(truth - f, axis=1))) for f in found]
    assert sorted(order) == list(range(len(truth)))
    return truth[order]


def test_membership_ratio_example():
    # sample 1 away from one center and 2 from the other splits 0.8 / 0.2
    delta = update_memberships(np.array([[1.0]]), np.array([[0.0], [3.0]]), m=2.0)
    np.testing.assert_allclose(delta, [[0.8, 0.2]], atol=1e-12)


def test_membership_matches_loop_oracle():
    rng = np.random.default_rng(21)
    for m in (1.5, 2.0, 3.0):
        x = rng.normal(size=(40, 3))
        mu = rng.normal(size=(4, 3))
        got = update_memberships(x, mu, m)
        np.testing.assert_allclose(got, membership_oracle(x, mu, m), atol=1e-12)


def test_membership_rows_sum_to_one():
    rng = np.random.default_rng(22)
    for _ in range(20):
        x = rng.normal(size=(30, 2)) * 10
        mu = rng.normal(size=(5, 2)) * 10
        delta = update_memberships(x, mu, 2.0)
        np.testing.assert_allclose(delta.sum(axis=1), 1.0, atol=1e-9)
        assert np.all(delta >= 0)


def test_membership_at_center_is_crisp():
    mu = np.array([[0.0, 0.0], [4.0, 4.0]])
    delta = update_memberships(np.array([[0.0, 0.0]]), mu, 2.0)
    np.testing.assert_array_equal(delta, [[1.0, 0.0]])


def test_membership_splits_between_coinciding_centers():
    mu = np.array([[1.0], [1.0], [5.0]])
    delta = update_memberships(np.array([[1.0]]), mu, 2.0)
    np.testing.assert_array_equal(delta, [[0.5, 0.5, 0.0]])


def test_objective_hand_values():
    x = np.array([[0.0], [2.0]])
    mu = np.array([[0.0], [2.0]])
    crisp = np.eye(2)
    assert fcm_objective(x, mu, crisp, 2.0) == 0.0
    # one sample midway, even split: 2 * 0.25 * 1.0
    val = fcm_objective(np.array([[1.0]]), mu, np.array([[0.5, 0.5]]), 2.0)
    np.testing.assert_allclose(val, 0.5, atol=1e-12)


def test_center_update_hand_value():
    x = np.array([[0.0], [1.0]])
    delta = np.array([[0.8, 0.2], [0.2, 0.8]])
    mu = update_centers(x, delta, 2.0)
    # weights are memberships squared: (0.64*0 + 0.04*1) / 0.68
    np.testing.assert_allclose(mu, [[0.04 / 0.68], [0.64 / 0.68]], atol=1e-12)


def test_center_update_is_weighted_mean_oracle():
    rng = np.random.default_rng(23)
    x = rng.normal(size=(50, 2))
    delta = rng.random((50, 3))
    delta /= delta.sum(axis=1, keepdims=True)
    for m in (1.5, 2.0, 4.0):
        got = update_centers(x, delta, m)
        w = delta**m
        want = np.stack([(w[:, i : i + 1] * x).sum(axis=0) / w[:, i].sum() for i in range(3)])
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_center_update_rejects_dead_cluster():
    x = np.array([[0.0], [1.0]])
    delta = np.array([[1.0, 0.0], [1.0, 0.0]])
    with pytest.raises(DegenerateClusterError):
        update_centers(x, delta, 2.0)


def test_fit_recovers_separated_blobs():
    rng = np.random.default_rng(24)
    truth = np.array([[0.0, 0.0], [5.0, 0.0], [0.0, 5.0]])
    x = blobs(rng, truth)
    result = fcm_fit(x, FcmConfig(c=3, m=2.0, seed=7))
    assert result.converged
    matched = match_rows(result.centers, truth)
    assert np.linalg.norm(result.centers - matched, axis=1).max() < 0.05


def test_fit_objective_trace_never_increases():
    rng = np.random.default_rng(25)
    x = blobs(rng, np.array([[0.0, 0.0], [3.0, 3.0]]), per=200, sigma=0.5)
    result = fcm_fit(x, FcmConfig(c=2, m=2.0, seed=3))
    trace = np.asarray(result.objective_trace)
    assert trace.size == result.iterations_run + 1
    assert np.all(np.diff(trace) <= 1e-9)


def test_fit_is_deterministic():
    rng = np.random.default_rng(26)
    x = blobs(rng, np.array([[0.0], [4.0]]), per=100)
    a = fcm_fit(x, FcmConfig(c=2, seed=9))
    b = fcm_fit(x, FcmConfig(c=2, seed=9))
    np.testing.assert_array_equal(a.centers, b.centers)
    np.testing.assert_array_equal(a.memberships, b.memberships)
    assert a.objective_trace == b.objective_trace


def test_fit_from_permuted_centers_permutes_result():
    rng = np.random.default_rng(27)
    x = blobs(rng, np.array([[0.0, 0.0], [6.0, 0.0], [0.0, 6.0]]), per=150)
    init = np.array([[0.5, 0.5], [5.5, 0.1], [0.1, 5.5]])
    perm = [2, 0, 1]
    config = FcmConfig(c=3, m=2.0)
    a = fcm_fit_from_centers(x, init, config)
    b = fcm_fit_from_centers(x, init[perm], config)
    np.testing.assert_allclose(b.centers, a.centers[perm], atol=1e-9)
    np.testing.assert_allclose(b.memberships, a.memberships[:, perm], atol=1e-9)


def test_harden_breaks_ties_low():
    labels = harden(np.array([[0.5, 0.5], [0.2, 0.8], [1 / 3, 1 / 3]]))
    np.testing.assert_array_equal(labels, [0, 1, 0])


def test_gmm_conversion_from_crisp_clusters():
    rng = np.random.default_rng(28)
    lo = rng.normal(0.0, 0.2, size=(60, 2))
    hi = rng.normal(8.0, 0.3, size=(40, 2))
    x = np.concatenate([lo, hi])
    result = fcm_fit(x, FcmConfig(c=2, seed=1))
    gmm = fcm_to_gmm(x, result, ridge=1e-6)

    np.testing.assert_array_equal(
        np.sort(gmm.means, axis=0), np.sort(result.centers, axis=0)
    )
    labels = harden(result.memberships)
    counts = np.bincount(labels, minlength=2)
    np.testing.assert_allclose(np.sort(gmm.weights), np.sort(counts / 100), atol=1e-12)
    for i in range(2):
        members = x[labels == i]
        centered = members - members.mean(axis=0)
        want = centered.T @ centered / members.shape[0] + 1e-6 * np.eye(2)
        np.testing.assert_allclose(gmm.covariances[i], want, atol=1e-12)


def test_gmm_conversion_needs_enough_members():
    # second cluster hardens to a single point
    x = np.array([[0.0, 0.0], [0.1, 0.0], [0.0, 0.1], [0.1, 0.1], [9.0, 9.0]])
    result = fcm_fit_from_centers(
        x, np.array([[0.05, 0.05], [9.0, 9.0]]), FcmConfig(c=2, max_iteration=1)
    )
    with pytest.raises(DegenerateClusterError):
        fcm_to_gmm(x, result)


def test_config_validation():
    with pytest.raises(ValueError):
        FcmConfig(c=0)
    with pytest.raises(ValueError):
        FcmConfig(m=1.0)
    with pytest.raises(ValueError):
        FcmConfig(epsilon=0.0)


def test_fit_needs_distinct_samples():
    same = np.zeros((10, 2))
    with pytest.raises(InsufficientSamplesError):
        fcm_fit(same, FcmConfig(c=2))
    with pytest.raises(InsufficientSamplesError):
        fcm_fit(np.array([[1.0], [2.0]]), FcmConfig(c=3))


def test_fit_from_centers_shape_check():
    x = np.zeros((5, 2))
    with pytest.raises(ContractViolationError):
        fcm_fit_from_centers(x, np.zeros((3, 3)), FcmConfig(c=3))
