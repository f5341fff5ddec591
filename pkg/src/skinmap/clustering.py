"""Fuzzy C-Means clustering and conversion of its result into a Gaussian mixture.

The membership update uses the exponent 2/(m-1) on the distance ratio,
the form that actually minimizes the weighted squared-distance objective
for the normalized membership constraint.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ContractViolationError,
    DegenerateClusterError,
    InsufficientSamplesError,
)
from .mixture import GaussianMixture


@dataclass
class FcmConfig:
    """Knobs for fcm_fit.

    c: number of clusters.
    m: fuzzifier, > 1 (2.0 is the conventional default used throughout).
    epsilon: stop once the largest membership change falls to this value.
    max_iteration: hard cap on update sweeps.
    seed: 64-bit seed for the center initialization.
    """

    c: int = 3
    m: float = 2.0
    epsilon: float = 1e-5
    max_iteration: int = 300
    seed: int = 0

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("c must be >= 1")
        if not self.m > 1:
            raise ValueError("fuzzifier m must be > 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if self.max_iteration < 1:
            raise ValueError("max_iteration must be >= 1")


@dataclass
class FcmResult:
    centers: np.ndarray              # (c, d)
    memberships: np.ndarray          # (n, c), rows sum to 1
    objective_trace: list[float] = field(default_factory=list)
    iterations_run: int = 0
    converged: bool = False


def _check_samples(samples) -> np.ndarray:
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 2:
        raise ContractViolationError(f"samples must be a 2-D array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ContractViolationError("samples contain non-finite values")
    return x


def _squared_distances(x, centers) -> np.ndarray:
    # (n, c) matrix of squared Euclidean distances
    diff = x[:, None, :] - centers[None, :, :]
    return np.einsum("ncd,ncd->nc", diff, diff)


def fcm_objective(samples, centers, memberships, m: float) -> float:
    """Weighted within-cluster scatter: sum_ij delta_ij^m ||x_j - mu_i||^2."""
    x = _check_samples(samples)
    mu = np.asarray(centers, dtype=np.float64)
    delta = np.asarray(memberships, dtype=np.float64)
    if mu.ndim != 2 or mu.shape[1] != x.shape[1]:
        raise ContractViolationError(
            f"centers shape {mu.shape} incompatible with samples of dim {x.shape[1]}"
        )
    if delta.shape != (x.shape[0], mu.shape[0]):
        raise ContractViolationError(
            f"memberships shape {delta.shape} != (n, c) = {(x.shape[0], mu.shape[0])}"
        )
    return float(np.sum(delta**m * _squared_distances(x, mu)))


def update_memberships(samples, centers, m: float) -> np.ndarray:
    """Optimal memberships for fixed centers.

    delta_ij = 1 / sum_k (||x_j - mu_i|| / ||x_j - mu_k||)^(2/(m-1)).

    Samples that coincide with one or more centers get their membership
    split equally among the coinciding centers (the continuous limit of
    the update, which is singular there).
    """
    x = _check_samples(samples)
    mu = np.asarray(centers, dtype=np.float64)
    if mu.size == 0:
        raise ContractViolationError("centers must be non-empty")
    d2 = _squared_distances(x, mu)

    at_center = d2 == 0.0
    hit = at_center.any(axis=1)

    # Scale each row by its minimum so the negative power cannot overflow.
    safe = np.where(hit[:, None], 1.0, d2)
    safe_min = safe.min(axis=1, keepdims=True)
    u = (safe / safe_min) ** (-1.0 / (m - 1.0))
    delta = u / u.sum(axis=1, keepdims=True)

    if hit.any():
        hits = at_center[hit]
        delta[hit] = hits / hits.sum(axis=1, keepdims=True)
    return delta


def update_centers(samples, memberships, m: float) -> np.ndarray:
    """Optimal centers for fixed memberships: mu_i = sum_j delta_ij^m x_j / sum_j delta_ij^m."""
    x = _check_samples(samples)
    delta = np.asarray(memberships, dtype=np.float64)
    if delta.ndim != 2 or delta.shape[0] != x.shape[0]:
        raise ContractViolationError(
            f"memberships shape {delta.shape} incompatible with {x.shape[0]} samples"
        )
    w = delta**m
    mass = w.sum(axis=0)
    dead = np.flatnonzero(mass == 0.0)
    if dead.size:
        raise DegenerateClusterError(
            f"cluster {dead[0]} has zero membership mass"
        )
    return (w.T @ x) / mass[:, None]


def _initial_centers(x, c, seed) -> np.ndarray:
    # Sample c distinct feature vectors. Index sampling alone can seed
    # duplicate centers on quantized data, and duplicates never separate.
    unique = np.unique(x, axis=0)
    if unique.shape[0] < c:
        raise InsufficientSamplesError(
            f"need at least {c} distinct samples, have {unique.shape[0]}"
        )
    rng = np.random.default_rng(seed)
    idx = rng.choice(unique.shape[0], size=c, replace=False)
    return unique[idx]


def _iterate(x, centers, config: FcmConfig) -> FcmResult:
    delta = update_memberships(x, centers, config.m)
    trace = [fcm_objective(x, centers, delta, config.m)]

    iterations = 0
    converged = False
    for _ in range(config.max_iteration):
        centers = update_centers(x, delta, config.m)
        new_delta = update_memberships(x, centers, config.m)
        iterations += 1
        change = float(np.max(np.abs(new_delta - delta)))
        delta = new_delta
        trace.append(fcm_objective(x, centers, delta, config.m))
        if change <= config.epsilon:
            converged = True
            break

    return FcmResult(
        centers=centers,
        memberships=delta,
        objective_trace=trace,
        iterations_run=iterations,
        converged=converged,
    )


def fcm_fit(samples, config: FcmConfig) -> FcmResult:
    """Run FCM to convergence.

    Alternates the center and membership updates from c distinct seeded
    samples until the largest membership change is <= config.epsilon or
    max_iteration sweeps have run. Deterministic for fixed inputs.
    """
    x = _check_samples(samples)
    if x.shape[0] < config.c:
        raise InsufficientSamplesError(
            f"{x.shape[0]} samples < {config.c} clusters"
        )
    return _iterate(x, _initial_centers(x, config.c, config.seed), config)


def fcm_fit_from_centers(samples, initial_centers, config: FcmConfig) -> FcmResult:
    """fcm_fit with explicitly supplied initial centers (bypasses the seeded draw)."""
    x = _check_samples(samples)
    centers = np.asarray(initial_centers, dtype=np.float64)
    if centers.shape != (config.c, x.shape[1]):
        raise ContractViolationError(
            f"initial centers shape {centers.shape} != {(config.c, x.shape[1])}"
        )
    return _iterate(x, centers, config)


def harden(memberships) -> np.ndarray:
    """Argmax cluster label per sample; ties go to the lowest cluster index."""
    delta = np.asarray(memberships, dtype=np.float64)
    return np.argmax(delta, axis=1)


def fcm_to_gmm(samples, result: FcmResult, ridge: float = 1e-6) -> GaussianMixture:
    """Turn an FCM result into Gaussian mixture parameters.

    Means are the FCM centers. Each covariance is the sample covariance
    (denominator n_i) of the cluster's hardened members plus ridge * I.
    Priors are hardened counts over the total count.

    Raises DegenerateClusterError if any cluster receives fewer than
    d + 1 hardened members.
    """
    x = _check_samples(samples)
    n, d = x.shape
    labels = harden(result.memberships)
    c = result.centers.shape[0]

    counts = np.bincount(labels, minlength=c)
    small = np.flatnonzero(counts < d + 1)
    if small.size:
        raise DegenerateClusterError(
            f"cluster {small[0]} has {counts[small[0]]} hardened members, needs >= {d + 1}"
        )

    covariances = np.empty((c, d, d))
    for i in range(c):
        members = x[labels == i]
        diff = members - members.mean(axis=0)
        cov = (diff.T @ diff) / members.shape[0]
        covariances[i] = cov + ridge * np.eye(d)

    weights = counts / n
    return GaussianMixture(
        weights=weights,
        means=result.centers.copy(),
        covariances=covariances,
    )
