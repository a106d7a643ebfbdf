# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recursion kernels: GARCH(1,1) volatility and Gaussian log-likelihood.

A pure-Python/numpy twin lives in ``_kernels_py``; ``garchmc.backend``
picks whichever is available at import time.
"""
import numpy as np

from libc.math cimport isfinite, log


cdef double LOG_2PI = 1.8378770664093453


def volatility(double[::1] y, double alpha, double beta, double omega,
               double sigma1_sq):
    """Run the squared-volatility recursion forward from sigma1_sq."""
    cdef Py_ssize_t n = y.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] s = out
    cdef Py_ssize_t t
    s[0] = sigma1_sq
    for t in range(1, n):
        s[t] = omega + alpha * y[t - 1] * y[t - 1] + beta * s[t - 1]
    return out


def log_likelihood(double[::1] y, double alpha, double beta, double omega,
                   double sigma1_sq):
    """Sum of Gaussian log-densities along the volatility recursion."""
    cdef Py_ssize_t n = y.shape[0]
    cdef double s = sigma1_sq
    cdef double total = 0.0
    cdef Py_ssize_t t
    for t in range(n):
        if t > 0:
            s = omega + alpha * y[t - 1] * y[t - 1] + beta * s
        total += -0.5 * (LOG_2PI + log(s)) - y[t] * y[t] / (2.0 * s)
    if not isfinite(total):
        raise FloatingPointError("non-finite GARCH log-likelihood")
    return total
