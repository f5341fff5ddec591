"""Gaussian mixture models: density evaluation and EM fitting.

All densities are computed in log space (log-pdf plus log-sum-exp);
3-D covariances over [0, 1] features under- and overflow in linear space.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .errors import (
    ContractViolationError,
    DegenerateComponentError,
    InsufficientSamplesError,
    NumericDomainError,
)

_LOG_2PI = np.log(2.0 * np.pi)


@dataclass
class GaussianComponent:
    weight: float
    mean: np.ndarray        # (d,)
    covariance: np.ndarray  # (d, d), symmetric positive-definite


@dataclass
class GaussianMixture:
    """An ordered set of weighted Gaussian components sharing one dimension."""

    weights: np.ndarray      # (p,), sums to 1
    means: np.ndarray        # (p, d)
    covariances: np.ndarray  # (p, d, d)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.means = np.asarray(self.means, dtype=np.float64)
        self.covariances = np.asarray(self.covariances, dtype=np.float64)
        p = self.weights.shape[0]
        if p < 1 or self.weights.ndim != 1:
            raise ContractViolationError("need at least one component weight")
        d = self.means.shape[-1] if self.means.ndim == 2 else -1
        if self.means.shape != (p, d) or self.covariances.shape != (p, d, d):
            raise ContractViolationError(
                f"inconsistent mixture shapes: weights {self.weights.shape}, "
                f"means {self.means.shape}, covariances {self.covariances.shape}"
            )
        if abs(float(self.weights.sum()) - 1.0) > 1e-9:
            raise ContractViolationError(
                f"weights sum to {float(self.weights.sum())!r}, expected 1"
            )
        if np.max(np.abs(self.covariances - self.covariances.transpose(0, 2, 1))) > 1e-9:
            raise ContractViolationError("covariance matrices are not symmetric")

    @property
    def n_components(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.means.shape[1]

    @property
    def components(self) -> list[GaussianComponent]:
        return [
            GaussianComponent(float(w), m, c)
            for w, m, c in zip(self.weights, self.means, self.covariances)
        ]


@dataclass
class EmConfig:
    """Knobs for em_fit.

    p: component count.
    tol: stop when the relative log-likelihood improvement falls below this.
    max_iteration: hard cap on EM sweeps.
    seed: 64-bit seed for the initial assignment.
    ridge: added to every covariance diagonal to keep it positive-definite.
    """

    p: int = 3
    tol: float = 1e-6
    max_iteration: int = 500
    seed: int = 0
    ridge: float = 1e-6

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_iteration < 1:
            raise ValueError("max_iteration must be >= 1")
        if self.ridge < 0:
            raise ValueError("ridge must be >= 0")


@dataclass
class EmResult:
    mixture: GaussianMixture
    log_likelihood_trace: list[float] = field(default_factory=list)
    iterations_run: int = 0
    converged: bool = False


def _cholesky(covariance) -> np.ndarray:
    cov = np.asarray(covariance, dtype=np.float64)
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise NumericDomainError("covariance is not positive-definite") from exc


def gaussian_log_pdf(x, mean, covariance) -> np.ndarray:
    """Log multivariate normal density, vectorized over rows of x.

    x may be a single vector (d,) or an array (n, d); returns a scalar
    array or an (n,) array accordingly.
    """
    x = np.asarray(x, dtype=np.float64)
    mean = np.asarray(mean, dtype=np.float64)
    d = mean.shape[0]
    if x.shape[-1] != d:
        raise ContractViolationError(f"x dim {x.shape[-1]} != mean dim {d}")
    chol = _cholesky(covariance)
    diff = np.atleast_2d(x) - mean
    # solve L z = diff^T, then |z|^2 is the Mahalanobis distance
    z = np.linalg.solve(chol, diff.T)
    maha = np.einsum("dn,dn->n", z, z)
    log_det = 2.0 * np.sum(np.log(np.diag(chol)))
    out = -0.5 * (d * _LOG_2PI + log_det + maha)
    return out.reshape(x.shape[:-1])


def gaussian_pdf(x, mean, covariance) -> np.ndarray:
    """Multivariate normal density (2 pi)^(-d/2) |S|^(-1/2) exp(-(x-mu)' S^-1 (x-mu) / 2)."""
    return np.exp(gaussian_log_pdf(x, mean, covariance))


def _component_log_pdfs(x, gmm: GaussianMixture) -> np.ndarray:
    # (n, p) matrix of log(pi_p) + log N(x | mu_p, Sigma_p)
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[1] != gmm.dim:
        raise ContractViolationError(f"x dim {x.shape[1]} != mixture dim {gmm.dim}")
    out = np.empty((x.shape[0], gmm.n_components))
    for i in range(gmm.n_components):
        out[:, i] = np.log(gmm.weights[i]) + gaussian_log_pdf(
            x, gmm.means[i], gmm.covariances[i]
        )
    return out


def mixture_log_pdf(x, gmm: GaussianMixture) -> np.ndarray:
    """Log of the mixture density, stabilized with log-sum-exp over components."""
    x = np.asarray(x, dtype=np.float64)
    out = logsumexp(_component_log_pdfs(x, gmm), axis=1)
    return out.reshape(x.shape[:-1])


def mixture_pdf(x, gmm: GaussianMixture) -> np.ndarray:
    """Mixture density sum_p pi_p N(x | mu_p, Sigma_p)."""
    return np.exp(mixture_log_pdf(x, gmm))


def log_likelihood(samples, gmm: GaussianMixture) -> float:
    """Total log-likelihood sum_t ln f(y_t) of a sample set under the mixture."""
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ContractViolationError("samples must be a non-empty (n, d) array")
    return float(np.sum(mixture_log_pdf(x, gmm)))


def _initial_responsibilities(x, p, seed) -> np.ndarray:
    # One pass of seeded nearest-point assignment: draw p distinct sample
    # vectors, assign every sample to the closest, one-hot the labels.
    unique = np.unique(x, axis=0)
    if unique.shape[0] < p:
        raise InsufficientSamplesError(
            f"need at least {p} distinct samples, have {unique.shape[0]}"
        )
    rng = np.random.default_rng(seed)
    centroids = unique[rng.choice(unique.shape[0], size=p, replace=False)]
    diff = x[:, None, :] - centroids[None, :, :]
    d2 = np.einsum("npd,npd->np", diff, diff)
    labels = np.argmin(d2, axis=1)
    resp = np.zeros((x.shape[0], p))
    resp[np.arange(x.shape[0]), labels] = 1.0
    return resp


def _m_step(x, resp, ridge) -> GaussianMixture:
    n, d = x.shape
    p = resp.shape[1]
    mass = resp.sum(axis=0)
    if np.any(mass < 1e-12 * n):
        i = int(np.argmin(mass))
        raise DegenerateComponentError(f"component {i} collapsed (weight {mass[i] / n:.3e})")
    weights = mass / n
    means = (resp.T @ x) / mass[:, None]
    covariances = np.empty((p, d, d))
    eye = np.eye(d)
    for i in range(p):
        diff = x - means[i]
        cov = (diff.T @ (diff * resp[:, i, None])) / mass[i]
        covariances[i] = 0.5 * (cov + cov.T) + ridge * eye
    return GaussianMixture(weights=weights, means=means, covariances=covariances)


def em_fit(samples, config: EmConfig) -> EmResult:
    """Fit a Gaussian mixture by expectation-maximization.

    E-step: responsibilities r_tp proportional to pi_p N(y_t | theta_p),
    normalized per sample. M-step: weights, means and ridged covariances
    from the responsibility-weighted moments. Stops when the relative
    log-likelihood improvement drops below config.tol or after
    max_iteration sweeps. Deterministic for fixed (samples, config).
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 2:
        raise ContractViolationError(f"samples must be 2-D, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ContractViolationError("samples contain non-finite values")
    n, d = x.shape
    if n < config.p * (d + 1):
        raise InsufficientSamplesError(
            f"{n} samples < p * (d + 1) = {config.p * (d + 1)}"
        )

    resp = _initial_responsibilities(x, config.p, config.seed)
    gmm = _m_step(x, resp, config.ridge)

    trace = []
    iterations = 0
    converged = False
    prev_ll = None
    for _ in range(config.max_iteration):
        weighted = _component_log_pdfs(x, gmm)
        per_sample = logsumexp(weighted, axis=1)
        ll = float(np.sum(per_sample))
        trace.append(ll)
        iterations += 1
        if prev_ll is not None and ll - prev_ll < config.tol * abs(prev_ll):
            converged = True
            break
        prev_ll = ll

        resp = np.exp(weighted - per_sample[:, None])
        gmm = _m_step(x, resp, config.ridge)

    return EmResult(
        mixture=gmm,
        log_likelihood_trace=trace,
        iterations_run=iterations,
        converged=converged,
    )
