"""Pure-Python (numpy/scipy) fallback for the compiled recursion kernels.

The volatility recursion is a first-order linear filter, so it is delegated
to ``scipy.signal.lfilter`` instead of a Python-level loop.
"""
import numpy as np
from scipy.signal import lfilter


def volatility(y, alpha, beta, omega, sigma1_sq):
    """Run the squared-volatility recursion forward from sigma1_sq."""
    y = np.asarray(y, dtype=np.float64)
    drive = np.empty(y.shape[0], dtype=np.float64)
    drive[0] = sigma1_sq
    drive[1:] = omega + alpha * y[:-1] ** 2
    return lfilter([1.0], [1.0, -beta], drive)


def log_likelihood(y, alpha, beta, omega, sigma1_sq):
    """Sum of Gaussian log-densities along the volatility recursion."""
    y = np.asarray(y, dtype=np.float64)
    sig = volatility(y, alpha, beta, omega, sigma1_sq)
    total = -0.5 * np.sum(np.log(2.0 * np.pi * sig) + y * y / sig)
    if not np.isfinite(total):
        raise FloatingPointError("non-finite GARCH log-likelihood")
    return float(total)
