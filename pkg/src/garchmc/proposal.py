"""Multivariate Student-t proposal: fitting, sampling, density evaluation.

The proposal covariance is nu*Sigma/(nu-2); fitting from accumulated draws
sets Sigma = ((nu-2)/nu) * V with V the empirical (population-normalized)
covariance of the draws.
"""
import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import gammaln

from .exceptions import DegenerateSampleError


def _cholesky_with_jitter(sigma):
    """Cholesky factor of sigma, retrying with escalating diagonal jitter."""
    p = sigma.shape[0]
    try:
        return np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        pass
    delta = 1e-10 * np.trace(sigma) / p
    for _ in range(3):
        try:
            return np.linalg.cholesky(sigma + delta * np.eye(p))
        except np.linalg.LinAlgError:
            delta *= 100.0
    raise DegenerateSampleError("scale matrix is not positive definite even after jitter")


class SampleAccumulator:
    """Running mean / second-moment sums over accumulated parameter draws."""

    def __init__(self, dim=3):
        self.dim = dim
        self.count = 0
        self._sum = np.zeros(dim)
        self._sumsq = np.zeros((dim, dim))

    def add(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        self.count += 1
        self._sum += theta
        self._sumsq += np.outer(theta, theta)

    def add_batch(self, draws):
        draws = np.asarray(draws, dtype=np.float64)
        self.count += draws.shape[0]
        self._sum += draws.sum(axis=0)
        self._sumsq += draws.T @ draws

    def mean(self):
        if self.count == 0:
            raise DegenerateSampleError("no accumulated samples")
        return self._sum / self.count

    def covariance(self):
        """Population-normalized empirical covariance (divide by count)."""
        m = self.mean()
        cov = self._sumsq / self.count - np.outer(m, m)
        return 0.5 * (cov + cov.T)  # enforce exact symmetry


class StudentTProposal:
    """Immutable fitted proposal state: mean M, scale Sigma, shape nu."""

    def __init__(self, mean, sigma, nu, n_samples=0):
        mean = np.asarray(mean, dtype=np.float64)
        sigma = np.asarray(sigma, dtype=np.float64)
        if not nu > 2.0:
            raise ValueError(f"nu must exceed 2 so the covariance exists, got {nu}")
        if sigma.shape != (mean.size, mean.size):
            raise ValueError("sigma shape does not match mean length")
        self.mean = mean
        self.sigma = sigma
        self.nu = float(nu)
        self.n_samples = int(n_samples)
        self.dim = mean.size
        self.chol = _cholesky_with_jitter(sigma)
        p = self.dim
        self._log_norm = (
            gammaln((self.nu + p) / 2.0)
            - gammaln(self.nu / 2.0)
            - np.sum(np.log(np.diag(self.chol)))
            - (p / 2.0) * np.log(self.nu * np.pi)
        )

    def covariance(self):
        """Covariance of the proposal, nu*Sigma/(nu-2)."""
        return self.nu / (self.nu - 2.0) * self.sigma

    def sample(self, rng, size=None):
        """Draw candidates: theta = L @ (Y*sqrt(nu/w)) + M, w ~ chi2_nu."""
        k = 1 if size is None else int(size)
        y = rng.standard_normal((k, self.dim))
        w = rng.chisquare(self.nu, k)
        x = y * np.sqrt(self.nu / w)[:, None]
        draws = x @ self.chol.T + self.mean
        return draws[0] if size is None else draws

    def log_density(self, theta):
        """Log of the multivariate Student-t density at theta (or batch)."""
        theta = np.asarray(theta, dtype=np.float64)
        single = theta.ndim == 1
        dev = np.atleast_2d(theta) - self.mean
        z = solve_triangular(self.chol, dev.T, lower=True)
        q = np.sum(z * z, axis=0)
        out = self._log_norm - ((self.nu + self.dim) / 2.0) * np.log1p(q / self.nu)
        return float(out[0]) if single else out

    def to_dict(self):
        return {
            "mean": self.mean.tolist(),
            "sigma": self.sigma.tolist(),
            "nu": self.nu,
            "n_samples": self.n_samples,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["mean"], d["sigma"], d["nu"], d.get("n_samples", 0))


def fit(acc, nu):
    """Fit a StudentTProposal from accumulated draws (Sigma = (nu-2)/nu * V)."""
    if acc.count < acc.dim + 1:
        raise DegenerateSampleError(
            f"need at least {acc.dim + 1} samples to fit, got {acc.count}"
        )
    v = acc.covariance()
    sigma = (nu - 2.0) / nu * v
    return StudentTProposal(acc.mean(), sigma, nu, n_samples=acc.count)
